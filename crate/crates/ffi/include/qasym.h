#ifndef QASYM_H
#define QASYM_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum QasymStatus {
  QASYM_STATUS_OK = 0,
  QASYM_STATUS_NULL_POINTER = 1,
  QASYM_STATUS_INVALID_UTF8 = 2,
  QASYM_STATUS_PARSE = 3,
  QASYM_STATUS_SERIES = 4,
  QASYM_STATUS_FORM = 5,
  QASYM_STATUS_CATALOG = 6,
  QASYM_STATUS_SIGN_MISMATCH = 7,
  QASYM_STATUS_VERIFY = 8,
  QASYM_STATUS_JSON = 9,
  QASYM_STATUS_OUT_OF_RANGE = 10,
  QASYM_STATUS_PANIC = 11,
} QasymStatus;

/*
 Asymptotic form.
 */
typedef struct QasymForm QasymForm;

/*
 Expanded coefficients a_0..a_N.
 */
typedef struct QasymSeries QasymSeries;

/*
 Parsed product.
 */
typedef struct QasymSpec QasymSpec;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message of the last failed call on this thread, or NULL. Valid until the
 next call into the library on this thread.
 */
const char *qasym_last_error(void);

/*
 # Safety
 `s` must come from this library or be NULL.
 */
void qasym_string_free(char *s);

/*
 # Safety
 `text` is a NUL-terminated string; `out` is writable.
 */
enum QasymStatus qasym_spec_parse(const char *text, struct QasymSpec **out);

/*
 Canonical DSL text of a spec.

 # Safety
 `spec` is a live handle; `out` is writable.
 */
enum QasymStatus qasym_spec_render(const struct QasymSpec *spec, char **out);

/*
 # Safety
 `spec` comes from `qasym_spec_parse` or is NULL.
 */
void qasym_spec_free(struct QasymSpec *spec);

/*
 # Safety
 `spec` is a live handle; `out` is writable.
 */
enum QasymStatus qasym_expand(const struct QasymSpec *spec,
                              uintptr_t order,
                              struct QasymSeries **out);

/*
 Number of coefficients (order + 1), 0 for NULL.

 # Safety
 `series` is a live handle or NULL.
 */
uintptr_t qasym_series_len(const struct QasymSeries *series);

/*
 Decimal text of a_n.

 # Safety
 `series` is a live handle; `out` is writable.
 */
enum QasymStatus qasym_series_coeff(const struct QasymSeries *series, uintptr_t n, char **out);

/*
 ln|a_n|.

 # Safety
 `series` is a live handle; `out` is writable.
 */
enum QasymStatus qasym_series_log_abs(const struct QasymSeries *series, uintptr_t n, double *out);

/*
 # Safety
 `series` comes from `qasym_expand` or is NULL.
 */
void qasym_series_free(struct QasymSeries *series);

/*
 # Safety
 `json` is a NUL-terminated string; `out` is writable.
 */
enum QasymStatus qasym_form_from_json(const char *json, struct QasymForm **out);

/*
 # Safety
 `form` is a live handle; `out` is writable.
 */
enum QasymStatus qasym_form_to_json(const struct QasymForm *form, char **out);

/*
 Closed form of a catalog family. `params` may be NULL when `n_params` is 0.

 # Safety
 `id` is a NUL-terminated string; `params` points to `n_params` values.
 */
enum QasymStatus qasym_catalog_form(const char *id,
                                    const int64_t *params,
                                    uintptr_t n_params,
                                    struct QasymForm **out);

/*
 ln|f(n)| and the predicted sign (+1 or −1).

 # Safety
 `form` is a live handle; `ln_abs` and `sign` are writable.
 */
enum QasymStatus qasym_form_evaluate_log(const struct QasymForm *form,
                                         uint64_t n,
                                         double *ln_abs,
                                         int8_t *sign);

/*
 # Safety
 `a`, `b` are live handles; `out` is writable.
 */
enum QasymStatus qasym_convolve(const struct QasymForm *a,
                                const struct QasymForm *b,
                                struct QasymForm **out);

/*
 Solves `known` ⊛ x = `target`.

 # Safety
 `target`, `known` are live handles; `out` is writable.
 */
enum QasymStatus qasym_deconvolve(const struct QasymForm *target,
                                  const struct QasymForm *known,
                                  struct QasymForm **out);

/*
 # Safety
 `a`, `b` are live handles; `out` is writable.
 */
enum QasymStatus qasym_convolve_mixed(const struct QasymForm *a,
                                      const struct QasymForm *b,
                                      struct QasymForm **out);

/*
 h-th power for h = num/den.

 # Safety
 `a` is a live handle; `out` is writable.
 */
enum QasymStatus qasym_power(const struct QasymForm *a,
                             int64_t num,
                             int64_t den,
                             struct QasymForm **out);

/*
 # Safety
 `form` comes from this library or is NULL.
 */
void qasym_form_free(struct QasymForm *form);

/*
 Verification report as JSON. Sign disagreement returns `SignMismatch`.

 # Safety
 Handles are live; `checkpoints` points to `n_checkpoints` values; `out` is writable.
 */
enum QasymStatus qasym_verify(const struct QasymSpec *spec,
                              const struct QasymForm *form,
                              const uint64_t *checkpoints,
                              uintptr_t n_checkpoints,
                              char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QASYM_H */
