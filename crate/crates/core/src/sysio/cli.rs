//! Command-line front end. Exit codes: 0 success, 2 inconclusive verdict,
//! 1 input or internal error.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use super::parse::{parse_assignment, parse_system};
use super::report::{emit_report, Format, Report, SpectrumReport};
use crate::analysis::{cross_check, Analyzer};
use crate::arith::rat::{parse_rat, Rat};
use crate::cone::{PolarSign, Subspace};
use crate::decomp::decompose;
use crate::error::{Error, Result};
use crate::process::{Process, Strategy};
use crate::reach::{default_budget, feasible_set, null_controllable_set, reachable_set};
use crate::spectral::{SpectrumInterval, SpectrumOracle};

#[derive(Parser, Debug)]
#[command(name = "polyproc", version, about = "Controllability analysis of conically constrained linear systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// System description (JSON).
    file: PathBuf,
    /// Override a parameter, `name=value` (repeatable).
    #[arg(long = "set", value_name = "NAME=VALUE")]
    set: Vec<String>,
    /// Iteration budget for set computations (default 4n).
    #[arg(long)]
    budget: Option<usize>,
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Which {
    Feasible,
    Reachable,
    Null,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// All verdicts with certificates.
    Analyze(Common),
    /// Feasible, reachable or null-controllable set.
    Sets {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        which: Which,
    },
    /// Spectrum of H off {0}, or of the dual inner process off R+⊥.
    Spectrum {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        dual_inner: bool,
        /// e.g. `0:inf`, `[1,inf)`, `(0,inf)`, `[1/2,3]`.
        #[arg(long)]
        interval: Option<String>,
    },
    /// Inner/outer decomposition.
    Decompose(Common),
    /// Verdicts checked against direct set computations.
    Oracle(Common),
    /// A trajectory prefix.
    Simulate {
        #[command(flatten)]
        common: Common,
        /// Initial state, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        x0: String,
        #[arg(long, default_value_t = 10)]
        steps: usize,
        #[arg(long, default_value = "least_norm")]
        strategy: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Keep every state inside F(H).
        #[arg(long)]
        within_feasible: bool,
    },
}

fn load(c: &Common) -> Result<Process> {
    let overrides = c.set.iter().map(|s| parse_assignment(s)).collect::<Result<Vec<_>>>()?;
    parse_system(&c.file, &overrides)?.system.build_process()
}

fn format(c: &Common) -> Format {
    match c.format {
        FormatArg::Json => Format::Json,
        FormatArg::Text => Format::Text,
    }
}

fn parse_state(s: &str) -> Result<Vec<Rat>> {
    s.split(',').map(|t| parse_rat(t.trim())).collect()
}

fn execute(cmd: Command) -> Result<(Report, Format, bool)> {
    Ok(match cmd {
        Command::Analyze(c) => {
            let h = load(&c)?;
            let r = Analyzer::new(&h, c.budget)?.report()?;
            let conclusive = r.is_conclusive();
            (Report::Analysis(r), format(&c), conclusive)
        }
        Command::Sets { common, which } => {
            let h = load(&common)?;
            let b = common.budget.unwrap_or_else(|| default_budget(h.n()));
            let (name, result) = match which {
                Which::Feasible => ("feasible", feasible_set(&h, b)?),
                Which::Reachable => ("reachable", reachable_set(&h, b)?),
                Which::Null => ("null-controllable", null_controllable_set(&h, b)?),
            };
            let r = Report::Set {
                which: name.into(),
                result,
            };
            (r, format(&common), true)
        }
        Command::Spectrum {
            common,
            dual_inner,
            interval,
        } => {
            let h = load(&common)?;
            let (p, exclusion) = if dual_inner {
                let d = decompose(&h)?;
                (d.h_in.dual(PolarSign::Negative), d.r_plus.orth_complement())
            } else {
                (h.clone(), Subspace::zero(h.n()))
            };
            let mut oracle = SpectrumOracle::new(&p, &exclusion)?;
            let interval = interval.map(|s| s.parse::<SpectrumInterval>()).transpose()?;
            let decision = match &interval {
                Some(iv) => {
                    let d = oracle.decide_interval(iv);
                    if !d.dense_agrees {
                        return Err(Error::InvariantViolation("spectral test-point passes disagree".into()));
                    }
                    Some(d)
                }
                None => None,
            };
            let pieces = oracle.describe();
            let r = Report::Spectrum(SpectrumReport {
                exclusion,
                interval,
                decision,
                pieces,
            });
            (r, format(&common), true)
        }
        Command::Decompose(c) => {
            let h = load(&c)?;
            (Report::Decomposition(Box::new(decompose(&h)?)), format(&c), true)
        }
        Command::Oracle(c) => {
            let h = load(&c)?;
            let x = cross_check(&h, c.budget)?;
            let conclusive = x.report.is_conclusive();
            (Report::Oracle(Box::new(x)), format(&c), conclusive)
        }
        Command::Simulate {
            common,
            x0,
            steps,
            strategy,
            seed,
            within_feasible,
        } => {
            let h = load(&common)?;
            let x0 = parse_state(&x0)?;
            let strategy: Strategy = strategy.parse()?;
            let within = if within_feasible {
                let b = common.budget.unwrap_or_else(|| default_budget(h.n()));
                Some(feasible_set(&h, b)?.cone)
            } else {
                None
            };
            let s = h.simulate(&x0, steps, strategy, seed, within.as_ref())?;
            (Report::Simulation(s), format(&common), true)
        }
    })
}

/// Runs the CLI on `argv` (including the program name), writing results to
/// `out` and diagnostics to `err`; returns the exit code.
pub fn run_cli_with(argv: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    return 0;
                }
                _ => 1,
            };
            let _ = write!(err, "{}", e.render());
            return code;
        }
    };
    match execute(cli.command) {
        Ok((report, fmt, conclusive)) => {
            let mut s = emit_report(&report, fmt);
            if !s.ends_with('\n') {
                s.push('\n');
            }
            let _ = out.write_all(s.as_bytes());
            if conclusive {
                0
            } else {
                2
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

pub fn run_cli(argv: &[String]) -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_cli_with(argv, &mut stdout.lock(), &mut stderr.lock())
}
