use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use qasym::asymptotic::{convolve, convolve_mixed, deconvolve, power, AsymptoticForm};
use qasym::bfile::{bfile_read, cross_check_oeis};
use qasym::catalog::{catalog_json, family, list_families};
use qasym::parser::{parse, render, ProductSpec};
use qasym::scalar::Scalar;
use qasym::series::expand;
use qasym::verify::{run_suite, verify, Verdict, VerificationReport, VerifyError, DEFAULT_CHECKPOINTS};

#[derive(Parser)]
#[command(name = "qasym", version, about = "Asymptotics of q-series products")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand)]
enum Cmd {
    /// Expand a product to order N.
    Expand {
        /// DSL text or @file
        #[arg(long)]
        spec: String,
        #[arg(long)]
        order: usize,
        /// output path; .json writes decimal strings, anything else a b-file
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print a catalog family's asymptotic form as JSON.
    Form {
        #[arg(long)]
        family: String,
        #[arg(long, default_value = "")]
        params: String,
        /// build the form through the composition path instead
        #[arg(long)]
        derive: bool,
    },
    /// Convolution of two forms (JSON text or @file).
    Conv { a: String, b: String },
    /// h-th power of a form.
    Power {
        a: String,
        /// integer or num/den
        #[arg(long)]
        h: String,
    },
    /// Solve known ⊛ x = target for x.
    Solve {
        #[arg(long)]
        target: String,
        #[arg(long)]
        known: String,
    },
    /// Convolution of two {1/3, 2/3} forms.
    Convmixed { a: String, b: String },
    /// Compare exact coefficients with a form.
    Verify {
        /// DSL text or @file; defaults to the family's product
        #[arg(long)]
        spec: Option<String>,
        /// form JSON or @file; defaults to the family's closed form
        #[arg(long)]
        form: Option<String>,
        #[arg(long)]
        family: Option<String>,
        #[arg(long, default_value = "")]
        params: String,
        #[arg(long, value_delimiter = ',')]
        checkpoints: Option<Vec<u64>>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Verify every matching family at its smallest parameters.
    Suite {
        #[arg(long, default_value = "*")]
        filter: String,
        /// drop default checkpoints above N
        #[arg(long)]
        max_n: Option<u64>,
        #[arg(long, value_delimiter = ',')]
        checkpoints: Option<Vec<u64>>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// OEIS b-file operations.
    Bfile {
        #[command(subcommand)]
        cmd: BfileCmd,
    },
    /// List the catalog.
    Catalog {
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

#[derive(Subcommand)]
enum BfileCmd {
    /// Compare a family's expansion with a local b-file.
    Check {
        #[arg(long)]
        family: Option<String>,
        #[arg(long, default_value = "")]
        params: String,
        #[arg(long)]
        spec: Option<String>,
        #[arg(long)]
        file: PathBuf,
    },
}

enum Fail {
    /// exit 2
    Usage(String),
    /// exit 1
    Check(String),
}

impl<E: std::fmt::Display> From<E> for Fail {
    fn from(e: E) -> Self {
        Fail::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Fail::Check(m)) => {
            eprintln!("verification failed: {m}");
            ExitCode::from(1)
        }
        Err(Fail::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}

/// Literal text, or the contents of a file when prefixed with @.
fn arg_text(s: &str) -> Result<String, Fail> {
    match s.strip_prefix('@') {
        Some(path) => fs::read_to_string(path).map_err(|e| Fail::Usage(format!("{path}: {e}"))),
        None => Ok(s.to_string()),
    }
}

fn read_spec(s: &str) -> Result<ProductSpec, Fail> {
    Ok(parse(arg_text(s)?.trim())?)
}

fn read_form(s: &str) -> Result<AsymptoticForm, Fail> {
    Ok(serde_json::from_str(&arg_text(s)?)?)
}

fn print_form(f: &AsymptoticForm) -> Result<(), Fail> {
    println!("{}", serde_json::to_string_pretty(f)?);
    Ok(())
}

fn run(cmd: Cmd) -> Result<(), Fail> {
    match cmd {
        Cmd::Expand { spec, order, out } => {
            let spec = read_spec(&spec)?;
            let poly = expand(&spec, order)?;
            match out {
                Some(path) if path.extension().is_some_and(|e| e == "json") => {
                    fs::write(&path, poly.to_json())?;
                }
                Some(path) => poly.write_bfile(&path, Some(&render(&spec)))?,
                None => print!("{}", poly.to_bfile(Some(&render(&spec)))),
            }
            Ok(())
        }
        Cmd::Form { family: id, params, derive } => {
            let fam = family(&id)?;
            let p = fam.parse_params(&params)?;
            let f = if derive { fam.derive(&p)? } else { fam.closed_form(&p)? };
            print_form(&f)
        }
        Cmd::Conv { a, b } => print_form(&convolve(&read_form(&a)?, &read_form(&b)?)?),
        Cmd::Power { a, h } => {
            let h: Scalar = h.parse().map_err(|_| Fail::Usage(format!("bad exponent {h}")))?;
            print_form(&power(&read_form(&a)?, h)?)
        }
        Cmd::Solve { target, known } => print_form(&deconvolve(&read_form(&target)?, &read_form(&known)?)?),
        Cmd::Convmixed { a, b } => print_form(&convolve_mixed(&read_form(&a)?, &read_form(&b)?)?),
        Cmd::Verify { spec, form, family: id, params, checkpoints, format } => {
            let fam = id.as_deref().map(family).transpose()?;
            let p = match fam {
                Some(f) => f.parse_params(&params)?,
                None => Vec::new(),
            };
            let spec = match (&spec, fam) {
                (Some(s), _) => read_spec(s)?,
                (None, Some(f)) => f.product(&p)?,
                (None, None) => return Err(Fail::Usage("need --spec or --family".into())),
            };
            let form = match (&form, fam) {
                (Some(s), _) => read_form(s)?,
                (None, Some(f)) => f.closed_form(&p)?,
                (None, None) => return Err(Fail::Usage("need --form or --family".into())),
            };
            let points = checkpoints.unwrap_or_else(|| DEFAULT_CHECKPOINTS.to_vec());
            let label = id.unwrap_or_else(|| render(&spec));
            let report = match verify(&label, &spec, &form, &points) {
                Ok(r) => r,
                Err(e @ VerifyError::SignMismatch { .. }) => return Err(Fail::Check(e.to_string())),
                Err(e) => return Err(e.into()),
            };
            print_reports(std::slice::from_ref(&report), format)?;
            if report.verdict == Verdict::Diverging {
                return Err(Fail::Check(format!("{label}: delta grows")));
            }
            Ok(())
        }
        Cmd::Suite { filter, max_n, checkpoints, format } => {
            let mut points = checkpoints.unwrap_or_else(|| DEFAULT_CHECKPOINTS.to_vec());
            if let Some(m) = max_n {
                points.retain(|&n| n <= m);
            }
            let entries = run_suite(&filter, &points)?;
            if entries.is_empty() {
                return Err(Fail::Usage(format!("no family matches {filter}")));
            }
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&entries)?),
                _ => {
                    let reports: Vec<VerificationReport> = entries.iter().filter_map(|e| e.report.clone()).collect();
                    print_reports(&reports, format)?;
                    for e in entries.iter().filter(|e| e.error.is_some()) {
                        println!("{} {:?}: error: {}", e.id, e.params, e.error.as_deref().unwrap_or(""));
                    }
                }
            }
            let failed: Vec<&str> = entries.iter().filter(|e| e.failed()).map(|e| e.id.as_str()).collect();
            if !failed.is_empty() {
                return Err(Fail::Check(failed.join(", ")));
            }
            Ok(())
        }
        Cmd::Bfile { cmd: BfileCmd::Check { family: id, params, spec, file } } => {
            let spec = match (spec, id) {
                (Some(s), _) => read_spec(&s)?,
                (None, Some(id)) => {
                    let fam = family(&id)?;
                    fam.product(&fam.parse_params(&params)?)?
                }
                (None, None) => return Err(Fail::Usage("need --spec or --family".into())),
            };
            let b = bfile_read(&file)?;
            match cross_check_oeis(&spec, &b) {
                Ok(c) => {
                    println!("ok: {} terms match (n = {}..={})", c.compared, c.first, c.last);
                    Ok(())
                }
                Err(e @ qasym::bfile::BfileError::Mismatch { .. }) => Err(Fail::Check(e.to_string())),
                Err(e) => Err(e.into()),
            }
        }
        Cmd::Catalog { format } => {
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&catalog_json())?),
                Format::Csv => {
                    println!("id,params,alternating,composable,oeis");
                    for f in list_families() {
                        let ps: Vec<&str> = f.params.iter().map(|p| p.name).collect();
                        println!("{},{},{},{},{}", f.id, ps.join(" "), f.alternating, f.composable(), f.oeis.join(" "));
                    }
                }
                Format::Text => {
                    for f in list_families() {
                        let ps: Vec<String> =
                            f.params.iter().map(|p| format!("{} ({})", p.name, p.constraint)).collect();
                        println!("{:<22} {}", f.id, f.description);
                        if !ps.is_empty() {
                            println!("{:<22} params: {}", "", ps.join("; "));
                        }
                        println!("{:<22} {}", "", f.formula);
                    }
                }
            }
            Ok(())
        }
    }
}

fn print_reports(reports: &[VerificationReport], format: Format) -> Result<(), Fail> {
    match format {
        Format::Json => {
            if let [r] = reports {
                println!("{}", serde_json::to_string_pretty(r)?);
            } else {
                println!("{}", serde_json::to_string_pretty(reports)?);
            }
        }
        Format::Csv => {
            println!("id,n,exact,predicted,delta,ratio,verdict");
            for r in reports {
                for c in &r.checkpoints {
                    let ratio = c.ratio.map(|x| x.to_string()).unwrap_or_default();
                    println!("{},{},{},{},{},{},{:?}", r.id, c.n, c.exact, c.predicted, c.delta, ratio, r.verdict);
                }
            }
        }
        Format::Text => {
            for r in reports {
                let slope = r.trend.map_or("-".to_string(), |t| format!("{t:.3}"));
                println!("{}: {:?}, slope {}", r.id, r.verdict, slope);
                for c in &r.checkpoints {
                    println!(
                        "  n = {:>7}  ln a_n = {:>14.6}  ln f(n) = {:>14.6}  delta = {:+.3e}",
                        c.n, c.exact, c.predicted, c.delta
                    );
                }
            }
        }
    }
    Ok(())
}
