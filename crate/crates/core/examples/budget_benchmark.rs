//! Score and planning time of Bayes-POMCP against plain POMCP on the shipped
//! maps, written to an output directory.
//!
//! ```text
//! cargo run --release --example budget_benchmark -- results/budget
//! ```

use std::path::PathBuf;

use mip::harness::{run_benchmark, write_outputs, ExperimentConfig, NamedMap};

fn main() {
    let out = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "results/budget".into()));
    let maps: Vec<NamedMap> = mip::maps::builtin_ids()
        .map(|id| NamedMap { id: id.to_string(), map: mip::maps::builtin(id).unwrap() })
        .collect();
    let agents = ["bayes-pomcp@100", "bayes-pomcp@500", "pomcp@100", "pomcp@500"].map(|a| a.parse().unwrap()).to_vec();
    let config = ExperimentConfig::new(maps.iter().map(|m| m.id.clone()).collect(), agents, vec![0, 1, 2]);
    let result = run_benchmark(&maps, &config).unwrap();
    println!("{:<18} {:>4} {:>9} {:>8} {:>10}", "agent", "size", "score", "std", "s/move");
    for row in &result.summary {
        println!(
            "{:<18} {:>4} {:>9.2} {:>8.2} {:>10.5}",
            format!("{}@{}", row.agent, row.n_sims.unwrap_or(0)),
            row.map_size,
            row.mean_score,
            row.std_score,
            row.mean_move_seconds
        );
    }
    write_outputs(&result, &out).unwrap();
    println!("records in {}", out.display());
}
