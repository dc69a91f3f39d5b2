use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use bpba_cli::{bench, compute, read_spec};
use bpba_core::compute::Method;
use bpba_core::lattice::validate_spec;
use bpba_core::verify::{run_single, Suite, VerifyReport};
use bpba_core::ExternalConfig;
use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

#[derive(Parser)]
#[command(name = "bpba", version, about = "Exact partition functions of six-vertex lattices with a reflecting boundary")]
struct Cli {
    /// Worker threads for config enumeration and verify draws.
    #[arg(long, env = "BPBA_THREADS", global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Direct,
    Aba,
    Cba,
    All,
}

impl MethodArg {
    fn methods(self) -> Vec<Method> {
        match self {
            MethodArg::Direct => vec![Method::Direct],
            MethodArg::Aba => vec![Method::Aba],
            MethodArg::Cba => vec![Method::Cba],
            MethodArg::All => Method::ALL.to_vec(),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Weights,
    Fcr,
    Baxter,
    Invariance,
    Reduction,
    All,
}

impl SuiteArg {
    fn suites(self) -> Vec<Suite> {
        match self {
            SuiteArg::Weights => vec![Suite::Weights],
            SuiteArg::Fcr => vec![Suite::Fcr],
            SuiteArg::Baxter => vec![Suite::Baxter],
            SuiteArg::Invariance => vec![Suite::Invariance],
            SuiteArg::Reduction => vec![Suite::Reduction],
            SuiteArg::All => Suite::CONCRETE.to_vec(),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check a spec file for perimeter, ordering and genericity violations.
    Validate {
        spec: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate Z for one configuration or all of them.
    Compute {
        spec: PathBuf,
        #[arg(long, value_enum, default_value = "all")]
        method: MethodArg,
        /// Labels at the line starts, e.g. 2112.
        #[arg(long, requires = "beta", conflicts_with = "all_configs")]
        alpha: Option<String>,
        /// Labels at the line ends.
        #[arg(long, requires = "alpha")]
        beta: Option<String>,
        #[arg(long)]
        all_configs: bool,
        /// Also check invariance of each method's state at this many random points.
        #[arg(long, default_value_t = 0)]
        invariance_points: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Run randomized identity suites.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
        #[arg(long, default_value_t = 20)]
        draws: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Time each method on random specs with N = 1..=nmax lines.
    Bench {
        #[arg(long, default_value_t = 4)]
        nmax: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
}

fn print_json<T: serde::Serialize>(value: &T) -> anyhow::Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

/// `Ok(true)` on success, `Ok(false)` on disagreement or failed checks,
/// `Err` on bad input.
fn run(cli: Cli) -> anyhow::Result<bool> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().context("thread pool")?;
    }
    match cli.command {
        Command::Validate { spec, json } => {
            let spec = read_spec(&spec)?;
            let report = validate_spec(&spec);
            if json {
                print_json(&serde_json::json!({ "ok": report.ok(), "violations": report.violations }))?;
            } else {
                println!("{report}");
            }
            Ok(report.ok())
        }
        Command::Compute { spec, method, alpha, beta, all_configs, invariance_points, seed, json } => {
            let spec = read_spec(&spec)?;
            let configs = match (alpha, beta, all_configs) {
                (_, _, true) => ExternalConfig::enumerate(spec.n_lines()).collect(),
                (Some(a), Some(b), false) => vec![ExternalConfig::from_labels(&a, &b)?],
                _ => anyhow::bail!("give --alpha and --beta, or --all-configs"),
            };
            if configs.iter().any(|c| c.n_lines() != spec.n_lines()) {
                anyhow::bail!("expected {} labels in --alpha and --beta", spec.n_lines());
            }
            let methods = method.methods();
            let mut report = compute::run(&spec, &methods, &configs)?;
            if invariance_points > 0 {
                report.identities = compute::invariance_checks(&spec, &methods, invariance_points, seed)?;
            }
            if json {
                print_json(&report)?;
            } else {
                println!("{report}");
            }
            Ok(report.passed())
        }
        Command::Verify { suite, draws, seed, json } => {
            let outcomes = suite.suites().into_par_iter().map(|s| run_single(s, draws, seed)).collect::<Vec<_>>();
            let report = VerifyReport { seed, draws, outcomes: outcomes.into_iter().flatten().collect() };
            if json {
                print_json(&report)?;
            } else {
                for s in suite.suites() {
                    let (ok, total) = report.count(s);
                    println!("{s}: {ok}/{total} checks passed ({draws} draws, seed {seed})");
                }
                for f in report.failures() {
                    println!("FAIL {} draw {} {}: {}", f.suite, f.draw, f.check, f.detail);
                }
            }
            Ok(report.passed())
        }
        Command::Bench { nmax, seed, json } => {
            let table = bench::run(nmax, seed)?;
            if json {
                print_json(&table)?;
            } else {
                println!("{table}");
            }
            Ok(table.rows.iter().all(|r| r.agreement))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
