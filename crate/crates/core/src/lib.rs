//! Asymptotics of q-series products: exact expansion, a calculus of
//! subexponential growth forms, Meinardus-type derivations and a catalog of
//! named product families with their closed forms.

// `!(x > 0.0)` is used on purpose: it also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod asymptotic;
pub mod bfile;
pub mod catalog;
pub mod meinardus;
pub mod parser;
pub mod scalar;
pub mod series;
pub mod special;
pub mod verify;

use thiserror::Error;

pub use asymptotic::{AsymError, AsymptoticForm, SignMode, Term};
pub use parser::{parse, ProductSpec};
pub use scalar::Scalar;
pub use series::{expand, SeriesPoly};

/// Any error the library can produce.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] parser::ParseError),
    #[error(transparent)]
    Series(#[from] series::SeriesError),
    #[error(transparent)]
    Asym(#[from] asymptotic::AsymError),
    #[error(transparent)]
    Special(#[from] special::SpecialError),
    #[error(transparent)]
    Meinardus(#[from] meinardus::MeinardusError),
    #[error(transparent)]
    Catalog(#[from] catalog::CatalogError),
    #[error(transparent)]
    Verify(#[from] verify::VerifyError),
    #[error(transparent)]
    Bfile(#[from] bfile::BfileError),
}
