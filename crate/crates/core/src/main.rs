use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use mip::agent::AgentSpec;
use mip::domain::{load_map, validate_map};
use mip::harness::{
    load_map_dir, read_records, replay, run_benchmark, write_outputs, BenchResult, ExperimentConfig, HarnessError,
    SummaryRow,
};
use mip::humans::ProfileSpec;
use mip::service::{self, ServiceConfig};

/// Mixed-initiative planning on Frozen Lake.
///
/// Exit status: 0 on success, 1 on error, 2 when some episodes failed or a
/// replay diverged.
#[derive(Parser)]
#[command(name = "mip", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the experiment described by a JSON config file.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Overrides `out` in the config.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cross agents, simulation budgets, humans and seeds over a map directory.
    Bench {
        /// Directory of `*.fl.json` maps.
        #[arg(long)]
        maps: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "bayes-pomcp,pomcp")]
        agents: Vec<String>,
        /// Applied to the search agents only.
        #[arg(long = "n-sims", value_delimiter = ',', default_value = "100")]
        n_sims: Vec<u32>,
        #[arg(long, value_delimiter = ',', default_value = "0,1,2")]
        seeds: Vec<u64>,
        #[arg(long, default_value = "results")]
        out: PathBuf,
        /// JSON list of human profiles; the default population otherwise.
        #[arg(long)]
        humans: Option<PathBuf>,
        #[arg(long = "max-steps")]
        max_steps: Option<u32>,
        /// Unlimited when absent.
        #[arg(long = "detection-budget")]
        detection_budget: Option<u32>,
        /// Log per-step search diagnostics.
        #[arg(long)]
        diagnostics: bool,
    },
    /// Re-simulate recorded episodes and check their scores.
    Replay {
        #[arg(long)]
        record: PathBuf,
    },
    /// Check map files against the map rules.
    ValidateMap {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Serve the game session API.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        /// Offer these maps instead of the shipped ones.
        #[arg(long)]
        maps: Option<PathBuf>,
        /// Append finished sessions to `sessions.jsonl` here.
        #[arg(long = "log-dir")]
        log_dir: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    tracing_subscriber::fmt()
        .with_env_filter(tracing_subscriber::EnvFilter::try_from_default_env().unwrap_or_else(|_| "info".into()))
        .with_writer(std::io::stderr)
        .init();
    match dispatch(Cli::parse().command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn dispatch(command: Command) -> Result<ExitCode, HarnessError> {
    match command {
        Command::Run { config, out } => {
            let text = std::fs::read_to_string(&config)?;
            let cfg: ExperimentConfig = serde_json::from_str(&text)?;
            let base = config.parent().unwrap_or(Path::new("."));
            let maps = cfg.resolve_maps(base)?;
            let out =
                out.or_else(|| cfg.out.as_ref().map(|o| base.join(o))).unwrap_or_else(|| PathBuf::from("results"));
            finish(run_benchmark(&maps, &cfg)?, &out)
        }
        Command::Bench { maps, agents, n_sims, seeds, out, humans, max_steps, detection_budget, diagnostics } => {
            let named = load_map_dir(&maps)?;
            if named.is_empty() {
                return Err(HarnessError::Config(format!("no *.fl.json maps in {}", maps.display())));
            }
            let mut specs = Vec::new();
            for a in &agents {
                let base: AgentSpec = a.parse()?;
                if base.is_search() && !a.contains('@') {
                    specs.extend(n_sims.iter().map(|&n| AgentSpec::with_sims(base.id.clone(), n)));
                } else {
                    specs.push(base);
                }
            }
            let mut cfg = ExperimentConfig::new(named.iter().map(|m| m.id.clone()).collect(), specs, seeds);
            if let Some(path) = humans {
                cfg.humans = serde_json::from_str::<Vec<ProfileSpec>>(&std::fs::read_to_string(path)?)?;
            }
            cfg.max_steps = max_steps;
            cfg.detection_budget = detection_budget;
            cfg.diagnostics = diagnostics;
            finish(run_benchmark(&named, &cfg)?, &out)
        }
        Command::Replay { record } => {
            let mut diverged = 0;
            for r in read_records(&record)? {
                match replay(&r) {
                    Ok(report) if report.is_faithful() => {
                        println!("{} {} seed {}: score {} reproduced", r.map_id, r.agent, r.seed, report.replayed_score)
                    }
                    Ok(report) => {
                        diverged += 1;
                        println!(
                            "{} {} seed {}: recorded {} replayed {}, steps differing {:?}",
                            r.map_id,
                            r.agent,
                            r.seed,
                            report.recorded_score,
                            report.replayed_score,
                            report.mismatched_steps
                        );
                    }
                    Err(e) => {
                        diverged += 1;
                        println!("{} {} seed {}: {e}", r.map_id, r.agent, r.seed);
                    }
                }
            }
            Ok(if diverged == 0 { ExitCode::SUCCESS } else { ExitCode::from(2) })
        }
        Command::ValidateMap { files } => {
            let mut bad = 0;
            for f in &files {
                let text = std::fs::read_to_string(f)?;
                match load_map(&text) {
                    Ok(map) => {
                        let report = validate_map(&map);
                        for w in &report.warnings {
                            println!("{}: warning: {w:?}", f.display());
                        }
                        println!("{}: ok ({}x{})", f.display(), map.size(), map.size());
                    }
                    Err(e) => {
                        bad += 1;
                        println!("{}: invalid: {e:?}", f.display());
                    }
                }
            }
            Ok(if bad == 0 { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Serve { port, maps, log_dir } => {
            let maps = match maps {
                Some(dir) => load_map_dir(&dir)?,
                None => Vec::new(),
            };
            let runtime = tokio::runtime::Runtime::new()?;
            runtime.block_on(service::serve(service::any_addr(port), ServiceConfig { maps, log_dir }))?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn finish(result: BenchResult, out: &Path) -> Result<ExitCode, HarnessError> {
    write_outputs(&result, out)?;
    print_summary(&result.summary);
    println!("wrote {} records to {}", result.records.len(), out.display());
    if result.is_complete() {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("{} episodes failed, see failures.json", result.failures.len());
        Ok(ExitCode::from(2))
    }
}

fn print_summary(rows: &[SummaryRow]) {
    println!(
        "{:<32} {:>4} {:>8} {:>10} {:>8} {:>9} {:>6}",
        "agent", "size", "episodes", "score", "std", "s/move", "goal"
    );
    for r in rows {
        let agent = match r.n_sims {
            Some(n) => format!("{}@{n}", r.agent),
            None => r.agent.clone(),
        };
        println!(
            "{:<32} {:>4} {:>8} {:>10.2} {:>8.2} {:>9.4} {:>6.2}",
            agent, r.map_size, r.episodes, r.mean_score, r.std_score, r.mean_move_seconds, r.goal_rate
        );
    }
}
