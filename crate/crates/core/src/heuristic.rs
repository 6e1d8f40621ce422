//! One-step intervention rule with a fixed style.
//!
//! The robot intervenes when the human's move lands on a cell it believes is
//! hazardous, or when the landing cell is more than `k` steps farther from the
//! goal (Manhattan) than the best believed-safe neighbor. After intervening it
//! always lets the next action through.

use serde::{Deserialize, Serialize};

use crate::domain::{Cell, Direction, HumanAction, Reason, RobotAction, RobotActionKind, WorldState};
use crate::planner::SimWorld;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InterventionStyle {
    Interrupt,
    TakeControl,
}

/// Whose neighbors the distance test compares against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NeighborBasis {
    /// Neighbors of the cell the human is on.
    #[default]
    Current,
    /// Neighbors of the cell the human's move would land on.
    Landing,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeuristicConfig {
    pub k: u32,
    pub style: InterventionStyle,
    pub explain: bool,
    #[serde(default)]
    pub neighbors: NeighborBasis,
}

impl HeuristicConfig {
    pub fn new(style: InterventionStyle, explain: bool) -> Self {
        HeuristicConfig { k: 1, style, explain, neighbors: NeighborBasis::Current }
    }

    pub fn kind(&self) -> RobotActionKind {
        match (self.style, self.explain) {
            (InterventionStyle::Interrupt, false) => RobotActionKind::Interrupt,
            (InterventionStyle::Interrupt, true) => RobotActionKind::InterruptExplain,
            (InterventionStyle::TakeControl, false) => RobotActionKind::TakeControl,
            (InterventionStyle::TakeControl, true) => RobotActionKind::TakeControlExplain,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct HeuristicState {
    /// The robot intervened on the previous turn.
    pub prev_interrupt: bool,
}

pub fn goal_dist(cell: Cell, goal: Cell) -> usize {
    cell.manhattan(goal)
}

/// Decide on `human` given the robot's believed world.
pub fn heuristic_decide(
    world: &SimWorld,
    state: &WorldState,
    human: HumanAction,
    hstate: HeuristicState,
    config: &HeuristicConfig,
) -> (RobotAction, HeuristicState) {
    let pass = (RobotAction::NoAssist, HeuristicState { prev_interrupt: false });
    let Some(d) = human.direction() else { return pass };
    if hstate.prev_interrupt {
        return pass;
    }
    let size = world.map.size();
    let goal = world.map.goal();
    let landing = state.pos.step(d, size).unwrap_or(state.pos);

    let reason = if world.is_hazard(landing) {
        Some(Reason::HazardAhead)
    } else {
        let basis = match config.neighbors {
            NeighborBasis::Current => state.pos,
            NeighborBasis::Landing => landing,
        };
        let best = Direction::ALL
            .into_iter()
            .filter_map(|n| basis.step(n, size))
            .filter(|&c| !world.is_hazard(c))
            .map(|c| goal_dist(c, goal))
            .min();
        match best {
            Some(b) if goal_dist(landing, goal) as i64 - b as i64 > config.k as i64 => Some(Reason::LongerPath),
            _ => None,
        }
    };
    let Some(reason) = reason else { return pass };

    let kind = config.kind();
    let mut action = world.robot_action(kind, state.pos, human);
    if let RobotAction::InterruptExplain { explanation } | RobotAction::TakeControlExplain { explanation, .. } =
        &mut action
    {
        explanation.reason = reason;
        explanation.cell = landing;
    }
    (action, HeuristicState { prev_interrupt: true })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::{load_map, GridMap, RewardParams};

    fn map() -> GridMap {
        load_map(
            r#"{"size":4,"start":[0,0],"goal":[3,3],"layers":{"true":["A.H.","....","....","...G"],"human":["..s.","....","....","...."],"robot":["..s.","....","....","...."],"fog":["....","....","....","...."]}}"#,
        )
        .unwrap()
    }

    #[test]
    fn distances() {
        assert_eq!(goal_dist(Cell::new(0, 0), Cell::new(7, 7)), 14);
        assert_eq!(goal_dist(Cell::new(3, 3), Cell::new(3, 3)), 0);
        assert_eq!(goal_dist(Cell::new(0, 7), Cell::new(7, 0)), 14);
    }

    #[test]
    fn cedes_after_intervening() {
        let m = map();
        let state = WorldState::initial(&m, None);
        let w = SimWorld::new(&m, &state, RewardParams::default());
        let cfg = HeuristicConfig::new(InterventionStyle::Interrupt, false);
        let (a, s) = heuristic_decide(&w, &state, HumanAction::Up, HeuristicState { prev_interrupt: true }, &cfg);
        assert_eq!((a, s.prev_interrupt), (RobotAction::NoAssist, false));
    }

    #[test]
    fn blocks_hole_and_detours() {
        let m = map();
        let mut state = WorldState::initial(&m, None);
        state.pos = Cell::new(0, 1);
        let w = SimWorld::new(&m, &state, RewardParams::default());
        let cfg = HeuristicConfig::new(InterventionStyle::TakeControl, true);
        let (a, s) = heuristic_decide(&w, &state, HumanAction::Right, HeuristicState::default(), &cfg);
        assert!(s.prev_interrupt);
        assert_eq!(a.kind(), RobotActionKind::TakeControlExplain);
        assert_eq!(a.replacement(), Some(Direction::Down));
        assert_eq!(a.explanation().unwrap().reason, Reason::HazardAhead);
        // stepping away from the goal while a closer safe neighbor exists
        state.pos = Cell::new(1, 1);
        let (a, _) = heuristic_decide(&w, &state, HumanAction::Up, HeuristicState::default(), &cfg);
        assert_eq!(a.explanation().unwrap().reason, Reason::LongerPath);
        let (a, _) = heuristic_decide(&w, &state, HumanAction::Down, HeuristicState::default(), &cfg);
        assert_eq!(a, RobotAction::NoAssist);
        let (a, s) = heuristic_decide(&w, &state, HumanAction::Detect, HeuristicState::default(), &cfg);
        assert_eq!((a, s.prev_interrupt), (RobotAction::NoAssist, false));
    }
}
