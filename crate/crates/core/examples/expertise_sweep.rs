//! Mean score of each agent as the user's expertise ψ varies.

use std::collections::BTreeMap;

use mip::harness::{mean_std, run_benchmark, ExperimentConfig, NamedMap};
use mip::humans::{Dynamics, ProfileSpec, ThetaSpec};

fn main() {
    let maps: Vec<NamedMap> = mip::maps::builtin_ids_of_size(8)
        .into_iter()
        .map(|id| NamedMap { id: id.to_string(), map: mip::maps::builtin(id).unwrap() })
        .collect();
    let agents = ["bayes-pomcp@100", "pomcp@100", "heuristic-interrupt", "heuristic-takecontrol", "no-assist"];
    print!("{:>5}", "psi");
    for a in agents {
        print!(" {a:>22}");
    }
    println!();
    for psi in [0.2, 0.4, 0.6, 0.8, 1.0] {
        let mut config = ExperimentConfig::new(
            maps.iter().map(|m| m.id.clone()).collect(),
            agents.iter().map(|a| a.parse().unwrap()).collect(),
            (0..4).collect(),
        );
        config.humans = vec![ProfileSpec::new("sweep", psi, ThetaSpec::Beta { a: 50.0, b: 50.0 }, Dynamics::Static)];
        let result = run_benchmark(&maps, &config).unwrap();
        let mut by_agent: BTreeMap<String, Vec<f64>> = BTreeMap::new();
        for r in &result.records {
            by_agent.entry(r.agent.label()).or_default().push(r.score as f64);
        }
        print!("{psi:>5.1}");
        for a in agents {
            print!(" {:>22.1}", mean_std(&by_agent[a]).unwrap().0);
        }
        println!();
    }
}
