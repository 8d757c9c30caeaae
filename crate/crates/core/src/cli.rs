//! The `effhull` command line.
//!
//! Exit codes: 0 success, 2 usage error, 3 inefficient / not contained,
//! 4 runtime error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::efficiency::{is_efficient, is_efficient_recursive, EfficiencyCertificate, Method, Verdict};
use crate::error::{Error, Result};
use crate::experiments::{compare_run, inefficiency_count};
use crate::generators::{
    convex_combination, mean_columns, perron_vector, singular_vector, weighted_geometric_mean,
    MeanKind, WeightVector,
};
use crate::io::{format_number, format_vector, read_matrix, read_values, read_vector, to_json_string};
use crate::matrix::{ReciprocalMatrix, ToleranceConfig};
use crate::perturbed::{
    detect_block_structure, hull_subset_efficient, three_block_matrix, triangular_matrix,
    witness_3block, witness_triangular, Containment, HullWitness,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NO: i32 = 3;
pub const EXIT_RUNTIME: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "effhull", version, about = "Efficiency analysis for reciprocal matrices")]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalOpts {
    /// Relative tolerance for equality of ratios
    #[arg(long, global = true)]
    rtol: Option<f64>,
    /// Relative slack for digraph edges and strict inequalities
    #[arg(long, global = true)]
    edge_rtol: Option<f64>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true)]
    trials: Option<usize>,
    /// Write the result here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Test a vector for efficiency
    Check {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        vector: PathBuf,
        #[arg(long, value_enum, default_value_t = CheckMethod::Digraph)]
        method: CheckMethod,
    },
    /// Produce a weight vector from a matrix
    Generate {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long, value_enum)]
        kind: Kind,
        /// Coefficients for `convex` and `wgm`
        #[arg(long)]
        alpha: Option<PathBuf>,
    },
    /// Detect perturbed block structure
    Classify {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Decide whether the column cone lies in the efficient set
    HullTest {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Build an inefficient vector of the column cone for canonical parameters
    Witness {
        #[arg(long, value_enum)]
        family: Family,
        /// Three comma-separated parameters: a12,a13,a23 or a13,a14,a24
        #[arg(long, value_delimiter = ',', required = true)]
        params: Vec<f64>,
    },
    /// Monte Carlo experiments
    #[command(subcommand)]
    Experiment(Experiment),
}

#[derive(Subcommand, Debug)]
enum Experiment {
    /// Inefficiency counts of random convex combinations for the three-block family
    Table2 {
        #[arg(long, value_delimiter = ',', default_values_t = vec![4, 8, 20, 100])]
        n: Vec<usize>,
        #[arg(long, default_value_t = 4.0)]
        a12: f64,
        #[arg(long, default_value_t = 2.0)]
        a23: f64,
        #[arg(long, value_delimiter = ',', default_values_t = vec![8.2, 9.0, 12.0, 20.0, 50.0, 100.0, 1000.0, 10000.0])]
        a13: Vec<f64>,
    },
    /// Divergence of convex combinations against weighted geometric means
    Compare {
        #[arg(long)]
        matrix: PathBuf,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum CheckMethod {
    Digraph,
    Recursive,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Kind {
    Perron,
    Singular,
    Geomean,
    Arith,
    Convex,
    Wgm,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Family {
    #[value(name = "3block")]
    ThreeBlock,
    Triangular,
}

enum Failure {
    Usage(String),
    Runtime(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Runtime(e)
    }
}

type Outcome = std::result::Result<i32, Failure>;

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

/// Secondary JSON output: next to `--out` with a `.json` extension, else stderr.
fn emit_side(out: Option<&Path>, json: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path.with_extension("json"), json.to_string() + "\n")?,
        None => eprintln!("{json}"),
    }
    Ok(())
}

fn tolerances(g: &GlobalOpts) -> std::result::Result<ToleranceConfig, Failure> {
    let mut cfg = ToleranceConfig::default();
    if let Some(r) = g.rtol {
        cfg.rtol = r;
    }
    if let Some(r) = g.edge_rtol {
        cfg.edge_rtol = r;
    }
    cfg.validate().map_err(|e| Failure::Usage(e.to_string()))?;
    Ok(cfg)
}

#[derive(Serialize)]
struct WitnessReport<'a> {
    family: &'a str,
    params: [f64; 3],
    matrix: ReciprocalMatrix,
    #[serde(flatten)]
    witness: &'a HullWitness,
    certificate: EfficiencyCertificate,
}

fn run_cli(cli: Cli) -> Outcome {
    let cfg = tolerances(&cli.global)?;
    let out = cli.global.out.as_deref();
    match cli.command {
        Command::Check { matrix, vector, method } => {
            let a = read_matrix(&matrix, &cfg)?;
            let w = read_vector(&vector)?;
            let cert = match method {
                CheckMethod::Digraph => is_efficient(&a, &w, &cfg)?,
                CheckMethod::Recursive => {
                    let ok = is_efficient_recursive(&a, &w, &cfg)?;
                    // the recursive test yields no cut; take it from the digraph
                    let digraph = is_efficient(&a, &w, &cfg)?;
                    if digraph.is_efficient() != ok {
                        return Err(Error::InvariantViolated(
                            "recursive and digraph tests disagree".into(),
                        )
                        .into());
                    }
                    EfficiencyCertificate {
                        method: Method::Recursive,
                        ..digraph
                    }
                }
            };
            emit(out, &(to_json_string(&cert)? + "\n"))?;
            Ok(if cert.verdict == Verdict::Efficient { EXIT_OK } else { EXIT_NO })
        }
        Command::Generate { matrix, kind, alpha } => {
            let a = read_matrix(&matrix, &cfg)?;
            let coefficients = || -> std::result::Result<WeightVector, Failure> {
                let path = alpha
                    .as_ref()
                    .ok_or_else(|| Failure::Usage("--alpha is required for --kind convex and wgm".into()))?;
                Ok(WeightVector::new(read_values(path)?)?)
            };
            let w = match kind {
                Kind::Perron => perron_vector(&a, &cfg)?.vector,
                Kind::Singular => singular_vector(&a, &cfg)?,
                Kind::Geomean => mean_columns(&a, MeanKind::Geometric),
                Kind::Arith => mean_columns(&a, MeanKind::Arithmetic),
                Kind::Convex => convex_combination(&a, &coefficients()?)?,
                Kind::Wgm => weighted_geometric_mean(&a, &coefficients()?)?,
            };
            emit(out, &format_vector(w.as_slice()))?;
            Ok(EXIT_OK)
        }
        Command::Classify { matrix } => {
            let a = read_matrix(&matrix, &cfg)?;
            emit(out, &(to_json_string(&detect_block_structure(&a, &cfg)?)? + "\n"))?;
            Ok(EXIT_OK)
        }
        Command::HullTest { matrix } => {
            let a = read_matrix(&matrix, &cfg)?;
            let v = hull_subset_efficient(&a, &cfg)?;
            emit(out, &(to_json_string(&v)? + "\n"))?;
            Ok(if v.contained == Containment::No { EXIT_NO } else { EXIT_OK })
        }
        Command::Witness { family, params } => {
            let [p, q, r] = <[f64; 3]>::try_from(params.as_slice()).map_err(|_| {
                Failure::Usage(format!("--params takes exactly 3 values, got {}", params.len()))
            })?;
            let (name, a, found) = match family {
                Family::ThreeBlock => ("3block", three_block_matrix(4, p, q, r)?, witness_3block(p, q, r, &cfg)),
                Family::Triangular => ("triangular", triangular_matrix(5, p, q, r)?, witness_triangular(p, q, r, &cfg)),
            };
            let witness = match found {
                Ok(h) => h,
                Err(Error::HullContained) => {
                    eprintln!("error: {}", Error::HullContained);
                    return Ok(EXIT_NO);
                }
                Err(e) => return Err(e.into()),
            };
            let certificate = is_efficient(&a, &witness.vector, &cfg)?;
            emit(out, &format_vector(witness.vector.as_slice()))?;
            let report = WitnessReport {
                family: name,
                params: [p, q, r],
                matrix: a,
                witness: &witness,
                certificate,
            };
            emit_side(out, &to_json_string(&report)?)?;
            Ok(EXIT_OK)
        }
        Command::Experiment(Experiment::Table2 { n, a12, a23, a13 }) => {
            let trials = cli.global.trials.unwrap_or(10_000);
            let reports = n
                .iter()
                .map(|&n| inefficiency_count(n, a12, a23, &a13, trials, cli.global.seed, &cfg))
                .collect::<Result<Vec<_>>>()?;
            emit(out, &(to_json_string(&reports)? + "\n"))?;
            Ok(EXIT_OK)
        }
        Command::Experiment(Experiment::Compare { matrix }) => {
            let a = read_matrix(&matrix, &cfg)?;
            let trials = cli.global.trials.unwrap_or(100);
            let report = compare_run(&a, trials, cli.global.seed, &cfg)?;
            let mut csv = String::from("trial,norm_convex,norm_geometric\n");
            for t in &report.trials {
                csv += &format!(
                    "{},{},{}\n",
                    t.trial,
                    format_number(t.norm_convex),
                    format_number(t.norm_geometric)
                );
            }
            emit(out, &csv)?;
            #[derive(Serialize)]
            struct Side<'a> {
                seed: u64,
                trials: usize,
                reference: &'a crate::experiments::ReferenceNorms,
            }
            let side = Side {
                seed: report.seed,
                trials,
                reference: &report.reference,
            };
            emit_side(out, &to_json_string(&side)?)?;
            Ok(EXIT_OK)
        }
    }
}

/// Parse `args` (including the program name), run, and return the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match run_cli(cli) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Runtime(e)) => {
            eprintln!("error: {e}");
            EXIT_RUNTIME
        }
    }
}
