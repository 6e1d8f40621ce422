//! Check that logged episodes replay to the same score.
//!
//! ```text
//! mip bench --maps crates/core/maps --agents bayes-pomcp --n-sims 100 --seeds 0 --out results/b
//! cargo run --example replay_record -- results/b/records.jsonl
//! ```
//!
//! With no argument a fresh episode is recorded and replayed.

use mip::harness::{replay, run_episode, EpisodeParams, EpisodeRecord, RecordOptions};
use mip::humans::default_population;

fn main() {
    let records: Vec<EpisodeRecord> = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(&path)
            .expect("readable record file")
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|l| serde_json::from_str(l).expect("one record per line"))
            .collect(),
        None => {
            let map = mip::maps::builtin("lake8-b").unwrap();
            let human = &default_population()[0];
            let params = EpisodeParams::benchmark(8);
            vec![run_episode(
                "lake8-b",
                &map,
                &"bayes-pomcp@100".parse().unwrap(),
                human,
                3,
                &params,
                RecordOptions::default(),
            )]
        }
    };
    for r in &records {
        match replay(r) {
            Ok(rep) => println!(
                "{} {} seed {}: recorded {} replayed {} {}",
                r.map_id,
                r.agent.label(),
                r.seed,
                rep.recorded_score,
                rep.replayed_score,
                if rep.is_faithful() { "ok" } else { "DIVERGED" }
            ),
            Err(e) => println!("{} seed {}: {e}", r.map_id, r.seed),
        }
    }
}
