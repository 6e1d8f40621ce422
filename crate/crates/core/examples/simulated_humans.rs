//! The default simulated users against no help and against Bayes-POMCP,
//! with the compliance of each user over the episode.

use mip::harness::{run_episode, EpisodeParams, RecordOptions};
use mip::humans::default_population;

fn main() {
    let map = mip::maps::builtin("lake8-d").unwrap();
    let params = EpisodeParams::benchmark(8);
    for human in default_population() {
        for agent in ["no-assist", "bayes-pomcp@100"] {
            let r = run_episode("lake8-d", &map, &agent.parse().unwrap(), &human, 0, &params, RecordOptions::default());
            let thetas: Vec<f64> = r.trace.iter().filter_map(|s| s.theta).collect();
            let interventions = r.trace.iter().filter(|s| s.robot.is_intervention()).count();
            println!(
                "{:<19} {:<16} score {:>5} steps {:>3} falls {:>2} interventions {:>2} theta {:.2} -> {:.2}",
                human.id,
                agent,
                r.score,
                r.steps,
                r.falls,
                interventions,
                thetas.first().copied().unwrap_or(0.0),
                thetas.last().copied().unwrap_or(0.0)
            );
        }
    }
}
