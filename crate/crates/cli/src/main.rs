//! `runlab`: triangles, grammar derivations, brute-force oracles and the
//! identity verification harness from the command line.
//!
//! Exit codes: 0 on success, 1 when a verification check fails, 2 on usage
//! or parse errors.

mod render;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use runlab::exactnum::{parse_rational, Rational};
use runlab::grammar::{parse_mpoly, Grammar};
use runlab::identities::{
    run_suite, Fault, Suite, VerifyOptions, DEFAULT_N_MAX, DEFAULT_ORACLE_N_MAX, DEFAULT_ORDER,
};
use runlab::permcore::{distribution, Stat, MAX_ORACLE_N};
use runlab::triangles::TriangleKind;

const MAX_N_VAR: &str = "RUNLAB_MAX_N";
const DEFAULT_MAX_N: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Plain,
    Json,
    Csv,
}

#[derive(Parser)]
#[command(
    name = "runlab",
    version,
    about = "Alternating runs, alternating subsequences and their grammars"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print rows of a triangle: runs, altsubseq, peaks, leftpeaks or euler.
    Triangle {
        name: String,
        n_max: usize,
        #[arg(long, value_enum, default_value = "plain")]
        format: OutputFormat,
    },
    /// Apply the formal derivative of a grammar n times to a word.
    Grammar {
        /// Rules such as "x -> x*y; y -> y*z; z -> y^2".
        #[arg(long, conflicts_with = "builtin", required_unless_present = "builtin")]
        spec: Option<String>,
        /// main, dumont, peaks or schett.
        #[arg(long)]
        builtin: Option<String>,
        #[arg(long)]
        word: String,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "plain")]
        format: OutputFormat,
    },
    /// Run identity checks: all, grammar, convolutions, closed-forms, gf or oracle.
    Verify {
        suite: String,
        /// Largest n checked; for the oracle suite, the largest S_n enumerated.
        #[arg(long)]
        n_max: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_ORACLE_N_MAX)]
        oracle_n_max: usize,
        /// Series order for the generating-function checks.
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: usize,
        /// Comma-separated evaluation points for every generating function.
        #[arg(long, value_delimiter = ',')]
        x0: Option<Vec<String>>,
        /// Comma-separated sample points for the closed forms with radicals.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        points: Option<Vec<String>>,
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long, value_enum, default_value = "plain")]
        format: OutputFormat,
        /// Corrupt one triangle entry before checking: name:n:k[:delta].
        #[arg(long, hide = true)]
        inject_fault: Option<String>,
    },
    /// Histogram of a statistic over all permutations of size n.
    Oracle {
        /// runs, peaks, leftpeaks, altsubseq or descents.
        stat: String,
        n: usize,
        #[arg(long, value_enum, default_value = "plain")]
        format: OutputFormat,
    },
}

enum Failure {
    Usage(String),
    Checks(String),
}

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn max_n() -> Result<usize, Failure> {
    match std::env::var(MAX_N_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| usage(format!("{MAX_N_VAR}={v:?} is not a non-negative integer"))),
        Err(_) => Ok(DEFAULT_MAX_N),
    }
}

fn guard(what: &str, n: usize) -> Result<(), Failure> {
    let ceiling = max_n()?;
    if n > ceiling {
        return Err(usage(format!(
            "{what} = {n} exceeds the ceiling {ceiling} (set {MAX_N_VAR} to raise it)"
        )));
    }
    Ok(())
}

fn rationals(values: &[String]) -> Result<Vec<Rational>, Failure> {
    values
        .iter()
        .map(|v| parse_rational(v.trim()).map_err(usage))
        .collect()
}

fn run(cli: Cli) -> Result<String, Failure> {
    match cli.command {
        Command::Triangle {
            name,
            n_max,
            format,
        } => {
            let kind: TriangleKind = name.parse().map_err(usage)?;
            guard("n_max", n_max)?;
            let t = kind.generate(n_max).map_err(usage)?;
            Ok(render::triangle(&t, format))
        }
        Command::Grammar {
            spec,
            builtin,
            word,
            n,
            format,
        } => {
            guard("n", n)?;
            let g = match (spec, builtin) {
                (Some(s), _) => Grammar::parse(&s),
                (None, Some(b)) => Grammar::builtin(&b),
                (None, None) => unreachable!("clap requires one of --spec and --builtin"),
            }
            .map_err(|e| usage(format!("grammar: {e}")))?;
            let w = parse_mpoly(&word).map_err(|e| usage(format!("word: {e}")))?;
            let p = g.derive_n(&w, n).map_err(usage)?;
            Ok(render::mpoly(&p, format))
        }
        Command::Oracle { stat, n, format } => {
            let stat: Stat = stat.parse().map_err(usage)?;
            guard("n", n)?;
            if !(1..=MAX_ORACLE_N).contains(&n) {
                return Err(usage(format!("n = {n} is outside 1..={MAX_ORACLE_N}")));
            }
            let d = distribution(stat, n).map_err(usage)?;
            Ok(render::distribution(&d, format))
        }
        Command::Verify {
            suite,
            n_max,
            oracle_n_max,
            order,
            x0,
            points,
            workers,
            format,
            inject_fault,
        } => {
            let suite: Suite = suite.parse().map_err(usage)?;
            let mut opts = VerifyOptions {
                n_max: DEFAULT_N_MAX,
                oracle_n_max,
                order,
                ..VerifyOptions::default()
            };
            match (suite, n_max) {
                (Suite::Oracle, Some(n)) => opts.oracle_n_max = n,
                (_, Some(n)) => opts.n_max = n,
                _ => {}
            }
            guard("n-max", opts.n_max)?;
            guard("order", opts.order)?;
            if !(1..=MAX_ORACLE_N).contains(&opts.oracle_n_max) {
                return Err(usage(format!(
                    "oracle n-max must lie in 1..={MAX_ORACLE_N}"
                )));
            }
            if let Some(x0) = x0 {
                let pts = rationals(&x0)?;
                opts.carlitz_points = pts.clone();
                opts.stanley_points = pts.clone();
                opts.final_gf_points = pts;
            }
            if let Some(points) = points {
                opts.points = Some(rationals(&points)?);
            }
            if let Some(f) = inject_fault {
                opts.fault = Some(f.parse::<Fault>().map_err(usage)?);
            }
            let pool = match workers {
                Some(0) => return Err(usage("--workers must be at least 1")),
                Some(k) => rayon::ThreadPoolBuilder::new()
                    .num_threads(k)
                    .build()
                    .map_err(usage)?,
                None => rayon::ThreadPoolBuilder::new().build().map_err(usage)?,
            };
            let reports = pool.install(|| run_suite(suite, &opts)).map_err(usage)?;
            let out = render::reports(&reports, format);
            if reports.iter().all(|r| r.passed) {
                Ok(out)
            } else {
                Err(Failure::Checks(out))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Checks(out)) => {
            print!("{out}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
