use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand, ValueEnum};
use kcluster::bench::{run_bench, to_csv, BenchConfig};
use kcluster::fuzz::{run_fuzz, FuzzConfig, MutationSpec};
use kcluster::inspect::{render_cliques, render_nir};
use kcluster::instance::read_realization;
use kcluster::solve::{solve_realization, ClassChoice};
use kcluster_core::oracle::Budget;
use kcluster_core::{to_nir, to_snir, GraphClass};

/// Densest k-subgraph on interval and proper interval graphs.
#[derive(Parser)]
#[command(name = "kcluster", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one instance.
    Solve {
        path: PathBuf,
        #[arg(long)]
        k: usize,
        /// Only accept node sets inducing a connected subgraph.
        #[arg(long)]
        connected: bool,
        #[arg(long, value_enum, default_value_t = ClassChoice::Auto)]
        class: ClassChoice,
        #[arg(long)]
        json: bool,
    },
    /// Print the normal form or the clique sequence of an instance.
    Inspect {
        #[arg(value_enum)]
        what: InspectWhat,
        path: PathBuf,
    },
    /// Compare both programs with brute force.
    Fuzz {
        /// Check every normal form with up to this many nodes.
        #[arg(long, default_value_t = 0)]
        exhaustive_n: usize,
        /// Random instances after the exhaustive ones.
        #[arg(long, default_value_t = 0)]
        trials: usize,
        #[arg(long, default_value_t = 8)]
        min_n: usize,
        #[arg(long, default_value_t = 14)]
        max_n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest n handed to the oracle; bigger instances are skipped.
        #[arg(long, default_value_t = 24)]
        budget: usize,
        /// Print the summary as JSON.
        #[arg(long)]
        json: bool,
        #[arg(long, hide = true)]
        inject_mutation: Option<MutationSpec>,
    },
    /// Time the solvers over a grid and print CSV.
    Bench {
        #[arg(long = "n", value_delimiter = ',', default_values_t = [200, 400, 800])]
        ns: Vec<usize>,
        #[arg(long = "k", value_delimiter = ',', default_values_t = [6])]
        ks: Vec<usize>,
        #[arg(long, value_enum, default_value_t = BenchClass::Both)]
        class: BenchClass,
        #[arg(long)]
        connected: bool,
        #[arg(long, default_value_t = 5)]
        reps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum InspectWhat {
    Nir,
    Cliques,
}

#[derive(Clone, Copy, ValueEnum)]
enum BenchClass {
    Proper,
    Interval,
    Both,
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Solve { path, k, connected, class, json } => {
            let r = read_realization(&path)?;
            let report = solve_realization(&r, k, connected, class)?;
            if json {
                println!("{}", serde_json::to_string(&report)?);
            } else {
                print!("{}", report.to_text());
            }
            Ok(if report.feasible { ExitCode::SUCCESS } else { ExitCode::from(2) })
        }
        Command::Inspect { what, path } => {
            let r = read_realization(&path)?;
            let (f, labels) = match to_snir(&r) {
                Ok((s, labels)) => (s.into_nir(), labels),
                Err(_) => to_nir(&r),
            };
            match what {
                InspectWhat::Nir => print!("{}", render_nir(&f, &labels)),
                InspectWhat::Cliques => print!("{}", render_cliques(&f)),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Fuzz { exhaustive_n, trials, min_n, max_n, seed, budget, json, inject_mutation } => {
            anyhow::ensure!(min_n >= 1 && min_n <= max_n, "need 1 <= min-n <= max-n");
            let cfg = FuzzConfig {
                exhaustive_n,
                trials,
                min_n,
                max_n,
                seed,
                budget: Budget { max_n: budget },
                mutation: inject_mutation,
            };
            let report = run_fuzz(&cfg);
            for rec in &report.records {
                println!("{}", serde_json::to_string(rec)?);
            }
            if json {
                println!("{}", serde_json::to_string(&report.summary)?);
            } else {
                println!("{}", report.summary);
            }
            Ok(if report.summary.clean() { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Command::Bench { ns, ks, class, connected, reps, seed } => {
            let classes = match class {
                BenchClass::Proper => vec![GraphClass::Proper],
                BenchClass::Interval => vec![GraphClass::Interval],
                BenchClass::Both => vec![GraphClass::Proper, GraphClass::Interval],
            };
            anyhow::ensure!(ns.iter().all(|&n| n >= 1), "every n must be at least 1");
            let cfg = BenchConfig { ns, ks, classes, connected: vec![connected], reps, seed };
            print!("{}", to_csv(&run_bench(&cfg)));
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::FAILURE } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
