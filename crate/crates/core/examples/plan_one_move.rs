//! One Bayes-POMCP decision with the root statistics behind it.
//!
//! ```text
//! cargo run --release --example plan_one_move -- 500
//! ```

use mip::domain::{HumanAction, RewardParams, WorldState};
use mip::planner::{Planner, PlannerMode, SearchConfig};

fn main() {
    let n_sims = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(100);
    let map = mip::maps::builtin("lake8-a").unwrap();
    let state = WorldState::initial(&map, None);
    let params = RewardParams::benchmark(8);

    for mode in [PlannerMode::Bayes, PlannerMode::AblationPomcp, PlannerMode::Adversarial] {
        let mut planner = Planner::new(SearchConfig::with_mode(mode, n_sims), 7);
        // Down from the start runs into a slippery cell.
        let action = planner.plan(&map, &state, &params, HumanAction::Down);
        let d = planner.diagnostics().unwrap();
        println!("{mode:?}: {action:?}");
        for a in &d.actions {
            println!("    {:<22} N={:<4} V={:>8.2}", format!("{:?}", a.action), a.visits, a.value);
        }
        println!("    root visits {}, tree nodes {}, depth {}", d.root_visits, d.tree_nodes, d.max_depth);
    }
}
