//! A planner that maximizes the negated team reward, against a compliant user.

use mip::harness::{run_episode, EpisodeParams, RecordOptions};
use mip::humans::{Dynamics, ProfileSpec, ThetaSpec};

fn main() {
    let user = ProfileSpec::new("compliant", 0.9, ThetaSpec::Beta { a: 80.0, b: 20.0 }, Dynamics::Static);
    for id in mip::maps::builtin_ids_of_size(8) {
        let map = mip::maps::builtin(id).unwrap();
        let params = EpisodeParams::benchmark(8);
        print!("{id}:");
        for agent in ["adv-bayes-pomcp@100", "no-assist", "bayes-pomcp@100"] {
            let total: i64 = (0..4)
                .map(|seed| {
                    run_episode(id, &map, &agent.parse().unwrap(), &user, seed, &params, RecordOptions::default()).score
                })
                .sum();
            print!("  {agent} {:.1}", total as f64 / 4.0);
        }
        println!();
    }
}
