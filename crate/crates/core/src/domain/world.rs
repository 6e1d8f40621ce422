//! Joint-action dynamics and game-score accounting.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::grid::{Cell, CellSet, Direction};
use super::map::{CellKind, GridMap};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HumanAction {
    Up,
    Down,
    Left,
    Right,
    Detect,
}

impl HumanAction {
    pub const ALL: [HumanAction; 5] =
        [HumanAction::Up, HumanAction::Down, HumanAction::Left, HumanAction::Right, HumanAction::Detect];

    pub fn direction(self) -> Option<Direction> {
        match self {
            HumanAction::Up => Some(Direction::Up),
            HumanAction::Down => Some(Direction::Down),
            HumanAction::Left => Some(Direction::Left),
            HumanAction::Right => Some(Direction::Right),
            HumanAction::Detect => None,
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

impl From<Direction> for HumanAction {
    fn from(d: Direction) -> Self {
        match d {
            Direction::Up => HumanAction::Up,
            Direction::Down => HumanAction::Down,
            Direction::Left => HumanAction::Left,
            Direction::Right => HumanAction::Right,
        }
    }
}

impl std::str::FromStr for HumanAction {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "up" => Ok(HumanAction::Up),
            "down" => Ok(HumanAction::Down),
            "left" => Ok(HumanAction::Left),
            "right" => Ok(HumanAction::Right),
            "detect" => Ok(HumanAction::Detect),
            other => Err(format!("unknown human action `{other}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Reason {
    HazardAhead,
    LongerPath,
}

/// Why the robot intervened, shown to the human by the explain variants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Explanation {
    pub reason: Reason,
    pub cell: Cell,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RobotAction {
    NoAssist,
    Interrupt,
    InterruptExplain {
        explanation: Explanation,
    },
    TakeControl {
        #[serde(rename = "move")]
        mv: Direction,
    },
    TakeControlExplain {
        #[serde(rename = "move")]
        mv: Direction,
        explanation: Explanation,
    },
}

/// Payload-free robot action, in canonical tie-break order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RobotActionKind {
    NoAssist,
    Interrupt,
    InterruptExplain,
    TakeControl,
    TakeControlExplain,
}

impl RobotActionKind {
    pub const ALL: [RobotActionKind; 5] = [
        RobotActionKind::NoAssist,
        RobotActionKind::Interrupt,
        RobotActionKind::InterruptExplain,
        RobotActionKind::TakeControl,
        RobotActionKind::TakeControlExplain,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn is_intervention(self) -> bool {
        self != RobotActionKind::NoAssist
    }

    pub fn explains(self) -> bool {
        matches!(self, RobotActionKind::InterruptExplain | RobotActionKind::TakeControlExplain)
    }

    pub fn takes_control(self) -> bool {
        matches!(self, RobotActionKind::TakeControl | RobotActionKind::TakeControlExplain)
    }

    /// Attach the payload this kind needs.
    pub fn with_payload(self, replacement: Direction, explanation: Explanation) -> RobotAction {
        match self {
            RobotActionKind::NoAssist => RobotAction::NoAssist,
            RobotActionKind::Interrupt => RobotAction::Interrupt,
            RobotActionKind::InterruptExplain => RobotAction::InterruptExplain { explanation },
            RobotActionKind::TakeControl => RobotAction::TakeControl { mv: replacement },
            RobotActionKind::TakeControlExplain => RobotAction::TakeControlExplain { mv: replacement, explanation },
        }
    }
}

impl RobotAction {
    pub fn kind(&self) -> RobotActionKind {
        match self {
            RobotAction::NoAssist => RobotActionKind::NoAssist,
            RobotAction::Interrupt => RobotActionKind::Interrupt,
            RobotAction::InterruptExplain { .. } => RobotActionKind::InterruptExplain,
            RobotAction::TakeControl { .. } => RobotActionKind::TakeControl,
            RobotAction::TakeControlExplain { .. } => RobotActionKind::TakeControlExplain,
        }
    }

    pub fn is_intervention(&self) -> bool {
        self.kind().is_intervention()
    }

    /// Move the robot substitutes for the human's, if it takes control.
    pub fn replacement(&self) -> Option<Direction> {
        match self {
            RobotAction::TakeControl { mv } | RobotAction::TakeControlExplain { mv, .. } => Some(*mv),
            _ => None,
        }
    }

    pub fn explanation(&self) -> Option<Explanation> {
        match self {
            RobotAction::InterruptExplain { explanation } | RobotAction::TakeControlExplain { explanation, .. } => {
                Some(*explanation)
            }
            _ => None,
        }
    }
}

/// Constants of the game score.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RewardParams {
    pub max_steps: u32,
    /// Fall penalty.
    pub alpha: i64,
    /// Detection cost.
    pub rho: i64,
    /// Goal bonus.
    pub kappa: i64,
}

impl Default for RewardParams {
    fn default() -> Self {
        Self { max_steps: 80, alpha: 10, rho: 2, kappa: 30 }
    }
}

impl RewardParams {
    /// Benchmark settings: 50 steps on 4×4 maps, 100 on 8×8.
    pub fn benchmark(size: usize) -> Self {
        let max_steps = if size <= 4 { 50 } else { 100 };
        Self { max_steps, ..Self::default() }
    }
}

/// Dynamic part of the world state. Fully observed by both agents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WorldState {
    pub pos: Cell,
    pub steps_taken: u32,
    pub falls: u32,
    pub detections_used: u32,
    /// `None` means unlimited.
    pub detection_budget: Option<u32>,
    /// Cells whose true slipperiness the human has sensed.
    pub revealed: CellSet,
    /// Cells where a fall has happened this episode.
    pub fall_cells: CellSet,
    pub done: bool,
    pub goal_reached: bool,
}

impl WorldState {
    pub fn initial(map: &GridMap, detection_budget: Option<u32>) -> Self {
        Self {
            pos: map.start(),
            steps_taken: 0,
            falls: 0,
            detections_used: 0,
            detection_budget,
            revealed: CellSet::EMPTY,
            fall_cells: CellSet::EMPTY,
            done: false,
            goal_reached: false,
        }
    }

    pub fn can_detect(&self) -> bool {
        self.detection_budget.is_none_or(|b| self.detections_used < b)
    }

    pub fn detections_left(&self) -> Option<u32> {
        self.detection_budget.map(|b| b.saturating_sub(self.detections_used))
    }

    pub fn score(&self, params: &RewardParams) -> i64 {
        game_score(params, self.steps_taken, self.falls, self.detections_used, self.goal_reached)
    }
}

/// What happened during one joint step.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct StepEvents {
    /// Direction actually executed, if any.
    pub executed: Option<Direction>,
    pub moved: bool,
    pub blocked_by_interrupt: bool,
    pub fell: bool,
    /// Cell the agent fell on.
    pub fall_cell: Option<Cell>,
    /// Cells revealed by the sensor this step.
    pub detected: Vec<Cell>,
    pub reached_goal: bool,
    /// Contribution of this step to the game score.
    pub reward: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IllegalAction {
    #[error("episode already finished")]
    EpisodeFinished,
    #[error("detection budget exhausted")]
    BudgetExhausted,
    #[error("a detection cannot be intervened on")]
    InterveneOnDetect,
}

/// Advance the world by one joint human/robot action.
pub fn step_world(
    map: &GridMap,
    state: &WorldState,
    human: HumanAction,
    robot: &RobotAction,
    params: &RewardParams,
) -> Result<(WorldState, StepEvents), IllegalAction> {
    if state.done {
        return Err(IllegalAction::EpisodeFinished);
    }
    let mut next = *state;
    let mut ev = StepEvents { reward: -1, ..StepEvents::default() };

    match human.direction() {
        None => {
            if robot.is_intervention() {
                return Err(IllegalAction::InterveneOnDetect);
            }
            if !state.can_detect() {
                return Err(IllegalAction::BudgetExhausted);
            }
            next.detections_used += 1;
            ev.reward -= params.rho;
            for d in Direction::ALL {
                if let Some(cell) = map.neighbor(state.pos, d) {
                    next.revealed.insert(cell);
                    ev.detected.push(cell);
                }
            }
        }
        Some(wanted) => {
            let executed = match robot {
                RobotAction::NoAssist => Some(wanted),
                RobotAction::Interrupt | RobotAction::InterruptExplain { .. } => None,
                RobotAction::TakeControl { mv } | RobotAction::TakeControlExplain { mv, .. } => Some(*mv),
            };
            ev.executed = executed;
            match executed {
                None => ev.blocked_by_interrupt = true,
                Some(dir) => {
                    if let Some(target) = map.neighbor(state.pos, dir) {
                        ev.moved = true;
                        match map.kind(target) {
                            k if k.is_hazard() => {
                                ev.fell = true;
                                ev.fall_cell = Some(target);
                                ev.reward -= params.alpha;
                                next.falls += 1;
                                next.fall_cells.insert(target);
                                next.pos = map.start();
                            }
                            CellKind::Goal => {
                                ev.reached_goal = true;
                                ev.reward += params.kappa;
                                next.pos = target;
                                next.goal_reached = true;
                                next.done = true;
                            }
                            _ => next.pos = target,
                        }
                    }
                }
            }
        }
    }

    next.steps_taken += 1;
    if next.steps_taken >= params.max_steps {
        next.done = true;
    }
    Ok((next, ev))
}

/// Team score: `max_steps − steps − α·falls − ρ·detections + κ·[goal]`.
pub fn game_score(params: &RewardParams, steps: u32, falls: u32, detections: u32, goal_reached: bool) -> i64 {
    params.max_steps as i64 - steps as i64 - params.alpha * falls as i64 - params.rho * detections as i64
        + if goal_reached { params.kappa } else { 0 }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::map::load_map;

    fn map4() -> GridMap {
        let text = r#"{"size":4,"start":[0,0],"goal":[3,3],"layers":{"true":["A...","~H..","....","...G"],"human":["....","ss..","....","...."],"robot":["....","ss..","....","...."],"fog":["....","....","....","...."]}}"#;
        load_map(text).unwrap()
    }

    #[test]
    fn plain_move_costs_one() {
        let map = map4();
        let s = WorldState::initial(&map, None);
        let (n, ev) =
            step_world(&map, &s, HumanAction::Right, &RobotAction::NoAssist, &RewardParams::default()).unwrap();
        assert_eq!(n.pos, Cell::new(0, 1));
        assert_eq!(ev.reward, -1);
        assert!(ev.moved);
    }

    #[test]
    fn interrupt_blocks() {
        let map = map4();
        let s = WorldState::initial(&map, None);
        let (n, ev) =
            step_world(&map, &s, HumanAction::Right, &RobotAction::Interrupt, &RewardParams::default()).unwrap();
        assert_eq!(n.pos, s.pos);
        assert!(ev.blocked_by_interrupt);
        assert_eq!(ev.reward, -1);
        assert_eq!(WorldState { steps_taken: s.steps_taken, ..n }, s);
    }

    #[test]
    fn slippery_cell_resets_to_start() {
        let map = map4();
        let mut s = WorldState::initial(&map, None);
        s.revealed.insert(Cell::new(2, 2));
        let (n, ev) =
            step_world(&map, &s, HumanAction::Down, &RobotAction::NoAssist, &RewardParams::default()).unwrap();
        assert!(ev.fell);
        assert_eq!(ev.reward, -11);
        assert_eq!(n.pos, map.start());
        assert_eq!(n.falls, 1);
        assert_eq!(n.revealed, s.revealed);
        assert!(n.fall_cells.contains(Cell::new(1, 0)));
    }

    #[test]
    fn detect_reveals_neighbors() {
        let map = map4();
        let mut s = WorldState::initial(&map, None);
        s.pos = Cell::new(1, 2);
        let (n, ev) =
            step_world(&map, &s, HumanAction::Detect, &RobotAction::NoAssist, &RewardParams::default()).unwrap();
        assert_eq!(ev.reward, -3);
        assert_eq!(ev.detected.len(), 4);
        assert_eq!(n.revealed.len(), 4);
        assert_eq!(n.detections_used, 1);
        assert_eq!(n.pos, s.pos);
    }

    #[test]
    fn take_control_executes_robot_move() {
        let map = map4();
        let s = WorldState::initial(&map, None);
        let (n, ev) = step_world(
            &map,
            &s,
            HumanAction::Down,
            &RobotAction::TakeControl { mv: Direction::Right },
            &RewardParams::default(),
        )
        .unwrap();
        assert_eq!(n.pos, Cell::new(0, 1));
        assert_eq!(ev.executed, Some(Direction::Right));
    }

    #[test]
    fn off_grid_move_is_a_paid_noop() {
        let map = map4();
        let s = WorldState::initial(&map, None);
        let (n, ev) = step_world(&map, &s, HumanAction::Up, &RobotAction::NoAssist, &RewardParams::default()).unwrap();
        assert_eq!(n.pos, s.pos);
        assert!(!ev.moved);
        assert_eq!(n.steps_taken, 1);
    }

    #[test]
    fn illegal_actions() {
        let map = map4();
        let mut s = WorldState::initial(&map, Some(0));
        let p = RewardParams::default();
        assert_eq!(
            step_world(&map, &s, HumanAction::Detect, &RobotAction::NoAssist, &p),
            Err(IllegalAction::BudgetExhausted)
        );
        s.detection_budget = None;
        assert_eq!(
            step_world(&map, &s, HumanAction::Detect, &RobotAction::Interrupt, &p),
            Err(IllegalAction::InterveneOnDetect)
        );
        s.done = true;
        assert_eq!(
            step_world(&map, &s, HumanAction::Right, &RobotAction::NoAssist, &p),
            Err(IllegalAction::EpisodeFinished)
        );
    }

    #[test]
    fn goal_and_step_cap() {
        let map = map4();
        let mut s = WorldState::initial(&map, None);
        s.pos = Cell::new(3, 2);
        let p = RewardParams::default();
        let (n, ev) = step_world(&map, &s, HumanAction::Right, &RobotAction::NoAssist, &p).unwrap();
        assert!(n.done && n.goal_reached && ev.reached_goal);
        assert_eq!(ev.reward, 29);

        let mut s = WorldState::initial(&map, None);
        s.steps_taken = p.max_steps - 1;
        let (n, _) = step_world(&map, &s, HumanAction::Right, &RobotAction::NoAssist, &p).unwrap();
        assert!(n.done && !n.goal_reached);
    }

    #[test]
    fn score_examples() {
        let p = RewardParams::default();
        assert_eq!(game_score(&p, 30, 1, 2, true), 66);
        assert_eq!(game_score(&p, 80, 0, 0, false), 0);
        assert_eq!(RewardParams::benchmark(4).max_steps, 50);
        assert_eq!(RewardParams::benchmark(8).max_steps, 100);
    }

    #[test]
    fn robot_action_json_shape() {
        let a = RobotAction::TakeControlExplain {
            mv: Direction::Left,
            explanation: Explanation { reason: Reason::HazardAhead, cell: Cell::new(2, 3) },
        };
        let json = serde_json::to_string(&a).unwrap();
        assert_eq!(
            json,
            r#"{"kind":"take_control_explain","move":"left","explanation":{"reason":"hazard_ahead","cell":[2,3]}}"#
        );
        assert_eq!(serde_json::from_str::<RobotAction>(&json).unwrap(), a);
    }
}
