//! What each heuristic style does with every possible human action.

use mip::domain::{Cell, HumanAction, RewardParams, WorldState};
use mip::heuristic::{heuristic_decide, HeuristicConfig, HeuristicState, InterventionStyle};
use mip::planner::SimWorld;

fn main() {
    let map = mip::maps::builtin("lake8-c").unwrap();
    let mut state = WorldState::initial(&map, None);
    state.pos = Cell::new(2, 3);
    let world = SimWorld::new(&map, &state, RewardParams::benchmark(8));
    println!("human at {}", state.pos);
    for style in [InterventionStyle::Interrupt, InterventionStyle::TakeControl] {
        let config = HeuristicConfig::new(style, true);
        for human in HumanAction::ALL {
            let (action, _) = heuristic_decide(&world, &state, human, HeuristicState::default(), &config);
            println!("{style:?} {human:?}: {}", serde_json::to_string(&action).unwrap());
        }
    }
}
