//! `domination`: build graphs, compute domination parameters, run the random
//! sweep and the bound-comparison table, and emit certificate bundles.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 verification failure
//! (including any failed bound check), 3 solver budget exceeded.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use domination::constructions::{ConstructionSpec, Family, Probability, DEFAULT_VERTEX_CAP};
use domination::experiments::{
    bounds_table, bounds_to_csv, certify, default_bounds_graphs, measure, random_sweep, summary_to_csv, trials_to_csv,
    ComputeOptions, SweepConfig, TrialRecord, DEFAULT_MASTER_SEED, EXACT_MAX_N,
};
use domination::fractional::DEFAULT_LP_CAP;
use domination::scalar::format_exact;
use domination::{Error, Graph};

const EXIT_USAGE: u8 = 1;
const EXIT_VERIFY: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "domination",
    version,
    about = "Domination, fractional domination and greedy bounds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a member of a graph family and write it as an edge list.
    Construct {
        /// matching_complement, torus_J, clique_chain_H, hairy_clique or random
        #[arg(long)]
        family: Family,
        /// Family parameter (`n` for random).
        #[arg(long, short = 't', alias = "n")]
        param: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Edge probability of the random family, e.g. 1/2.
        #[arg(long, default_value = "1/2")]
        p: Probability,
        #[arg(long, default_value_t = DEFAULT_VERTEX_CAP)]
        vertex_cap: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run solvers on an edge-list file and check the bound chain.
    Compute {
        graph: PathBuf,
        /// Comma-separated subset of gamma_f, gamma, gamma_g, bounds.
        #[arg(long, value_delimiter = ',', default_value = "gamma_f,gamma,gamma_g,bounds")]
        which: Vec<Which>,
        /// Use brute force over sets of at most this size.
        #[arg(long)]
        size_cap: Option<usize>,
        /// Run the exact solver beyond its default order limit.
        #[arg(long)]
        force: bool,
        /// Wall-clock limit for the exact solver in seconds.
        #[arg(long, default_value_t = 60)]
        time_limit: u64,
        /// Emit a one-row CSV instead of the text report.
        #[arg(long)]
        csv: bool,
        #[arg(long)]
        timings: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Seeded G(n, p) trials, one CSV row per trial.
    RandomSweep {
        #[arg(long, value_delimiter = ',', default_value = "40,60,80,100")]
        n_list: Vec<usize>,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        /// Master seed; trial seeds derive from (seed, n, index).
        #[arg(long, default_value_t = DEFAULT_MASTER_SEED)]
        seed: u64,
        #[arg(long, default_value = "1/2")]
        p: Probability,
        /// Skip the exact solver.
        #[arg(long)]
        no_gamma: bool,
        #[arg(long)]
        force: bool,
        /// Fill the ms_* columns (output is then no longer reproducible).
        #[arg(long)]
        timings: bool,
        /// Also write per-n aggregates here.
        #[arg(long)]
        summary: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare the two upper bounds on the greedy value.
    BoundsTable {
        /// Edge-list files; the shipped family sweep when omitted.
        graphs: Vec<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit the LP pair, greedy trace, scaled packing and weight audit.
    Certify {
        graph: PathBuf,
        #[arg(long, default_value_t = DEFAULT_LP_CAP)]
        lp_cap: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
enum Which {
    GammaF,
    Gamma,
    GammaG,
    Bounds,
}

fn write_output(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn read_graph(path: &Path) -> anyhow::Result<Graph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Graph::parse(&text).map_err(|e| anyhow!("{}: {e}", path.display()))
}

fn label_of(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default()
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    match cli.command {
        Command::Construct {
            family,
            param,
            seed,
            p,
            vertex_cap,
            out,
        } => {
            let spec = ConstructionSpec {
                family,
                param,
                seed,
                probability: p,
                vertex_cap,
            };
            let g = spec.build()?;
            write_output(out.as_deref(), &g.to_edge_list())?;
            Ok(0)
        }
        Command::Compute {
            graph,
            which,
            size_cap,
            force,
            time_limit,
            csv,
            timings,
            out,
        } => {
            let g = read_graph(&graph)?;
            let opts = ComputeOptions {
                gamma_f: which.contains(&Which::GammaF),
                gamma: which.contains(&Which::Gamma),
                gamma_g: which.contains(&Which::GammaG),
                size_cap,
                force,
                exact_max_n: EXACT_MAX_N,
                exact_time_limit: Some(Duration::from_secs(time_limit)),
                lp_cap: DEFAULT_LP_CAP,
            };
            let m = measure(&g, &opts)?;
            let record = TrialRecord::from_measurement(&label_of(&graph), None, 0, &m);
            let text = if csv {
                trials_to_csv(std::slice::from_ref(&record), timings)?
            } else {
                let mut text = String::new();
                if let Some(f) = &m.fractional {
                    text.push_str(&format!("gamma_f       {}\n", format_exact(&f.value)));
                }
                if let Some(r) = &m.exact {
                    text.push_str(&format!("exact         {r}\n"));
                }
                if let Some(t) = &m.greedy {
                    text.push_str(&format!("greedy        {:?}\n", t.sequence()));
                }
                if which.contains(&Which::Bounds) {
                    text.push_str(&m.report.to_table());
                } else {
                    for (k, v) in [
                        ("gamma", m.report.gamma.map(|v| v.to_string())),
                        ("gamma_g", m.report.gamma_g.map(|v| v.to_string())),
                    ] {
                        if let Some(v) = v {
                            text.push_str(&format!("{k:<14}{v}\n"));
                        }
                    }
                }
                text.push_str(&format!("chain_ok      {}\n", m.report.chain_ok()));
                for e in &m.errors {
                    text.push_str(&format!("error         {e}\n"));
                }
                text
            };
            write_output(out.as_deref(), &text)?;
            Ok(if !m.report.chain_ok() {
                EXIT_VERIFY
            } else if m.budget_exceeded() {
                EXIT_BUDGET
            } else {
                0
            })
        }
        Command::RandomSweep {
            n_list,
            trials,
            seed,
            p,
            no_gamma,
            force,
            timings,
            summary,
            out,
        } => {
            let cfg = SweepConfig {
                n_list,
                trials,
                master_seed: seed,
                probability: p,
                compute: ComputeOptions {
                    gamma: !no_gamma,
                    force,
                    ..ComputeOptions::default()
                },
            };
            let result = random_sweep(&cfg)?;
            write_output(out.as_deref(), &trials_to_csv(&result.records, timings)?)?;
            if let Some(path) = summary {
                write_output(Some(&path), &summary_to_csv(&result.aggregates)?)?;
            }
            for r in result.records.iter().filter(|r| !r.errors.is_empty()) {
                for e in &r.errors {
                    eprintln!("{} trial {}: {e}", r.label, r.trial);
                }
            }
            let budget = result.records.iter().any(|r| !r.errors.is_empty());
            Ok(if !result.all_chains_ok() {
                EXIT_VERIFY
            } else if budget {
                EXIT_BUDGET
            } else {
                0
            })
        }
        Command::BoundsTable { graphs, out } => {
            let inputs = if graphs.is_empty() {
                default_bounds_graphs()?
            } else {
                graphs
                    .iter()
                    .map(|p| Ok((label_of(p), read_graph(p)?)))
                    .collect::<anyhow::Result<Vec<_>>>()?
            };
            let rows = bounds_table(&inputs, DEFAULT_LP_CAP);
            write_output(out.as_deref(), &bounds_to_csv(&rows)?)?;
            Ok(if rows.iter().any(|r| r.error.is_some()) {
                EXIT_VERIFY
            } else {
                0
            })
        }
        Command::Certify { graph, lp_cap, out } => {
            let g = read_graph(&graph)?;
            let bundle = certify(&g, lp_cap)?;
            write_output(out.as_deref(), &bundle.to_text())?;
            Ok(0)
        }
    }
}

fn exit_code_for(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::Budget(_) | Error::SizeCapExceeded { .. }) => EXIT_BUDGET,
        Some(Error::Verification(_) | Error::TraceMismatch(_)) => EXIT_VERIFY,
        _ => EXIT_USAGE,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
