//! Command-line front end.
//!
//! Exit codes: 0 success (a valuation, certificate or model exists), 1 a
//! negative verdict (`NO VALUATION`, `NO PARITY CERTIFICATE`, `INFEASIBLE`),
//! 2 bad input or usage.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use crate::exactlin::RVector;
use crate::ksengine::{
    count_valuations, find_valuation, noncontextual_model, orthogonality_graph, parity_certificate,
    KSScenario, ModelOutcome,
};
use crate::probability::{context_distribution, DensityOperator};
use crate::symmetry::{exchange_parity, symmetrize, Exchange};

pub mod dsl;
pub mod state;

pub use dsl::{parse_scenario, serialize_scenario, ParseError, ScenarioDocument};
pub use state::parse_state;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "kstoolkit", version, about = "Exact Kochen-Specker contextuality checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Validate every context of a scenario file.
    Check { file: PathBuf },
    /// Find (or count) {0,1} valuations.
    Color {
        file: PathBuf,
        #[arg(long)]
        count: bool,
        /// Treat every occurrence of a ray as a distinct ray.
        #[arg(long)]
        no_merge: bool,
    },
    /// Look for an even-multiplicity / odd-context parity certificate.
    Parity { file: PathBuf },
    /// Write the orthogonality graph in DOT format (`-` for stdout).
    Graph {
        file: PathBuf,
        #[arg(long, value_name = "OUT")]
        dot: PathBuf,
    },
    /// Decide whether a noncontextual model reproduces a state's Born probabilities.
    Model {
        file: PathBuf,
        #[arg(long, value_name = "STATEFILE")]
        state: PathBuf,
    },
    /// Print Born distributions over contexts.
    Prob {
        file: PathBuf,
        #[arg(long, value_name = "STATEFILE")]
        state: PathBuf,
        /// 1-based context number.
        #[arg(long, value_name = "K")]
        context: Option<usize>,
    },
    /// Symmetrize two single-particle vectors.
    Symm {
        #[arg(long, allow_hyphen_values = true, value_name = "COORDS")]
        a: String,
        #[arg(long, allow_hyphen_values = true, value_name = "COORDS")]
        b: String,
        #[arg(long, allow_hyphen_values = true, value_name = "+|-")]
        sign: String,
    },
}

struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn load_scenario(path: &Path, merge: bool) -> Result<KSScenario, Failure> {
    let text = read(path)?;
    parse_scenario(&text, merge).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn load_state(path: &Path) -> Result<DensityOperator, Failure> {
    let text = read(path)?;
    parse_state(&text).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

/// Comma- or whitespace-separated rationals.
fn parse_vector(text: &str) -> Result<RVector, Failure> {
    let entries = text
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(crate::exactlin::parse_rational)
        .collect::<Result<Vec<_>, _>>()?;
    Ok(RVector::new(entries)?)
}

/// Runs one command line (including the program name) and returns the
/// exit code. Reports go to `out`, diagnostics to `err`.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_INPUT
                }
            };
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(Failure(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INPUT
        }
    }
}

fn plural(n: usize, noun: &str) -> String {
    if n == 1 {
        format!("1 {noun}")
    } else {
        format!("{n} {noun}s")
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Check { file } => {
            let s = load_scenario(&file, true)?;
            writeln!(
                out,
                "OK {}, {}, dimension {}",
                plural(s.rays().len(), "ray"),
                plural(s.contexts().len(), "context"),
                s.dim()
            )?;
            Ok(EXIT_OK)
        }
        Command::Color {
            file,
            count,
            no_merge,
        } => {
            let s = load_scenario(&file, !no_merge)?;
            if count {
                let n = count_valuations(&s)?;
                writeln!(out, "COUNT {n}")?;
                return Ok(if n == 0u32.into() { EXIT_NEGATIVE } else { EXIT_OK });
            }
            match find_valuation(&s) {
                None => {
                    writeln!(out, "NO VALUATION")?;
                    Ok(EXIT_NEGATIVE)
                }
                Some(v) => {
                    writeln!(out, "VALUATION")?;
                    for (ray, value) in s.rays().iter().zip(v.values()) {
                        writeln!(out, "{} {value}", ray.id())?;
                    }
                    Ok(EXIT_OK)
                }
            }
        }
        Command::Parity { file } => {
            let s = load_scenario(&file, true)?;
            match parity_certificate(&s) {
                None => {
                    writeln!(out, "NO PARITY CERTIFICATE")?;
                    Ok(EXIT_NEGATIVE)
                }
                Some(cert) => {
                    writeln!(out, "PARITY CERTIFICATE")?;
                    writeln!(out, "contexts {}", cert.context_count)?;
                    for (id, m) in &cert.ray_multiplicities {
                        writeln!(out, "{id} {m}")?;
                    }
                    Ok(EXIT_OK)
                }
            }
        }
        Command::Graph { file, dot } => {
            let s = load_scenario(&file, true)?;
            let graph = orthogonality_graph(&s);
            let text = graph.to_dot();
            if dot.as_os_str() == "-" {
                write!(out, "{text}")?;
            } else {
                fs::write(&dot, text).map_err(|e| Failure(format!("{}: {e}", dot.display())))?;
                writeln!(
                    out,
                    "{} vertices, {} edges",
                    graph.vertices.len(),
                    graph.edges.len()
                )?;
            }
            Ok(EXIT_OK)
        }
        Command::Model { file, state } => {
            let s = load_scenario(&file, true)?;
            let rho = load_state(&state)?;
            match noncontextual_model(&s, &rho)? {
                ModelOutcome::Infeasible => {
                    writeln!(out, "INFEASIBLE")?;
                    Ok(EXIT_NEGATIVE)
                }
                ModelOutcome::Feasible(model) => {
                    writeln!(out, "MODEL")?;
                    for (v, w) in &model.weights {
                        let ones: Vec<&str> = v.true_rays(&s).collect();
                        writeln!(out, "{w} {}", ones.join(" "))?;
                    }
                    Ok(EXIT_OK)
                }
            }
        }
        Command::Prob {
            file,
            state,
            context,
        } => {
            let s = load_scenario(&file, true)?;
            let rho = load_state(&state)?;
            let selected: Vec<usize> = match context {
                Some(k) if k >= 1 && k <= s.contexts().len() => vec![k - 1],
                Some(k) => {
                    return Err(Failure(format!(
                        "context {k} out of range 1..={}",
                        s.contexts().len()
                    )))
                }
                None => (0..s.contexts().len()).collect(),
            };
            for k in selected {
                let dist = context_distribution(&rho, &s.contexts()[k])?;
                if context.is_none() {
                    writeln!(out, "context {}", k + 1)?;
                }
                for (id, p) in dist.iter() {
                    writeln!(out, "{id} {p}")?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Symm { a, b, sign } => {
            let a = parse_vector(&a)?;
            let b = parse_vector(&b)?;
            let sign = Exchange::parse(&sign)
                .ok_or_else(|| Failure(format!("sign must be + or -, got `{sign}`")))?;
            let state = symmetrize(&a, &b, sign)?;
            for ((i, j), amp) in state.nonzero_amplitudes() {
                writeln!(out, "amplitude {i} {j} {amp}")?;
            }
            writeln!(out, "norm_squared {}", state.norm_squared())?;
            let parity = match exchange_parity(&state) {
                Some(1) => "+1",
                Some(_) => "-1",
                None => "none",
            };
            writeln!(out, "parity {parity}")?;
            Ok(EXIT_OK)
        }
    }
}
