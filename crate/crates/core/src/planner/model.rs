//! What the robot believes about the world and the human, as used inside search.

use rand::Rng;

use crate::belief::{BetaParticle, Outcome};
use crate::domain::{
    step_world, Cell, CellSet, Direction, Explanation, GridMap, HumanAction, Reason, RewardParams, RobotAction,
    RobotActionKind, WorldState,
};
use crate::pathfinding::DistanceField;

use super::{PlannerMode, SearchConfig};

/// Augmented simulation state: world, compliance particle and the human
/// action the robot must answer next. Always a copy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AugmentedSimState {
    pub world: WorldState,
    pub particle: BetaParticle,
    pub pending: HumanAction,
}

/// The world as the robot believes it, fixed for the duration of one search.
#[derive(Debug, Clone)]
pub struct SimWorld {
    pub map: GridMap,
    pub field: DistanceField,
    pub params: RewardParams,
    holes: CellSet,
}

impl SimWorld {
    /// Robot view plus sensor readings and observed falls; unknown cells safe.
    pub fn new(map: &GridMap, state: &WorldState, params: RewardParams) -> Self {
        let believed = map.as_believed_by_robot(state);
        let field = DistanceField::new(believed.size(), believed.true_hazards(), believed.goal());
        let holes = believed.holes();
        SimWorld { map: believed, field, params, holes }
    }

    pub fn is_hazard(&self, cell: Cell) -> bool {
        self.map.kind(cell).is_hazard()
    }

    /// Move the robot substitutes when it takes control: a shortest believed-safe
    /// step, else the believed-safe step closest to the goal, else the least bad
    /// step that is not into a hole.
    pub fn replacement_move(&self, pos: Cell) -> Direction {
        if let Some(d) = self.field.next_step(pos) {
            return d;
        }
        let goal = self.map.goal();
        let size = self.map.size();
        let closest = |allowed: &dyn Fn(Cell) -> bool| {
            Direction::ALL
                .into_iter()
                .filter_map(|d| pos.step(d, size).map(|c| (d, c)))
                .filter(|&(_, c)| allowed(c))
                .min_by_key(|&(_, c)| c.manhattan(goal))
                .map(|(d, _)| d)
        };
        closest(&|c| !self.is_hazard(c))
            .or_else(|| closest(&|c| !self.holes.contains(c)))
            .or_else(|| Direction::ALL.into_iter().find(|&d| pos.step(d, size).is_none()))
            .unwrap_or(Direction::Up)
    }

    /// Why intervening on `wanted` from `pos` is worth it.
    pub fn explanation(&self, pos: Cell, wanted: Option<Direction>) -> Explanation {
        match wanted.and_then(|d| pos.step(d, self.map.size())) {
            Some(target) if self.is_hazard(target) => Explanation { reason: Reason::HazardAhead, cell: target },
            Some(target) => Explanation { reason: Reason::LongerPath, cell: target },
            None => Explanation { reason: Reason::LongerPath, cell: pos },
        }
    }

    /// Concrete robot action of `kind` answering `pending` at `pos`.
    pub fn robot_action(&self, kind: RobotActionKind, pos: Cell, pending: HumanAction) -> RobotAction {
        if !kind.is_intervention() {
            return RobotAction::NoAssist;
        }
        let mv = if kind.takes_control() { self.replacement_move(pos) } else { Direction::Up };
        kind.with_payload(mv, self.explanation(pos, pending.direction()))
    }

    fn in_grid_moves(&self, pos: Cell) -> impl Iterator<Item = Direction> + '_ {
        let size = self.map.size();
        Direction::ALL.into_iter().filter(move |&d| pos.step(d, size).is_some())
    }

    fn uniform_move<R: Rng + ?Sized>(&self, pos: Cell, rng: &mut R) -> HumanAction {
        let moves: Vec<Direction> = self.in_grid_moves(pos).collect();
        moves[rng.random_range(0..moves.len())].into()
    }
}

/// The robot's model of a human that was not intervened on: the believed
/// shortest-path step with probability `1 − eps_plan`, otherwise a uniform
/// in-grid move. With no believed path it detects while it can.
pub fn planner_human_model<R: Rng + ?Sized>(
    world: &SimWorld,
    state: &WorldState,
    eps_plan: f64,
    rng: &mut R,
) -> HumanAction {
    if eps_plan > 0.0 && rng.random::<f64>() < eps_plan {
        return world.uniform_move(state.pos, rng);
    }
    match world.field.next_step(state.pos) {
        Some(d) => d.into(),
        None if state.can_detect() => HumanAction::Detect,
        None => world.uniform_move(state.pos, rng),
    }
}

/// Result of one simulated joint step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimStep {
    pub reward: f64,
    pub terminal: bool,
    pub next: AugmentedSimState,
}

/// Legal robot actions when answering `pending`.
pub fn legal_actions(pending: HumanAction) -> &'static [RobotActionKind] {
    if pending == HumanAction::Detect {
        &[RobotActionKind::NoAssist]
    } else {
        &RobotActionKind::ALL
    }
}

/// Apply `kind` to the pending human action, then draw the human's reply.
pub fn step_sim<R: Rng + ?Sized>(
    world: &SimWorld,
    s: &AugmentedSimState,
    kind: RobotActionKind,
    config: &SearchConfig,
    rng: &mut R,
) -> SimStep {
    let pos = s.world.pos;
    let mv = if kind.takes_control() { world.replacement_move(pos) } else { Direction::Up };
    let robot = kind.with_payload(mv, Explanation { reason: Reason::LongerPath, cell: pos });
    let (next_world, ev) =
        step_world(&world.map, &s.world, s.pending, &robot, &world.params).expect("search only takes legal actions");
    let mut reward = ev.reward as f64;
    if config.mode == PlannerMode::Adversarial {
        reward = -reward;
    }
    let mut next = AugmentedSimState { world: next_world, particle: s.particle, pending: HumanAction::Detect };
    if next_world.done {
        return SimStep { reward, terminal: true, next };
    }
    next.pending = match config.mode {
        PlannerMode::AblationPomcp => world.uniform_move(next_world.pos, rng),
        _ if kind.is_intervention() => {
            let blocked = s.pending.direction().expect("interventions answer moves");
            let mut p = s.particle.mean();
            if kind.explains() {
                p += config.explain_boost;
            }
            let outcome = if rng.random::<f64>() < p { Outcome::Comply } else { Outcome::Oppose };
            next.particle = s.particle.updated(outcome);
            respond_to_intervention(world, &next_world, blocked, kind.takes_control().then_some(mv), outcome, rng)
        }
        _ => planner_human_model(world, &next_world, config.eps_plan, rng),
    };
    SimStep { reward, terminal: false, next }
}

fn respond_to_intervention<R: Rng + ?Sized>(
    world: &SimWorld,
    state: &WorldState,
    blocked: Direction,
    robot_move: Option<Direction>,
    outcome: Outcome,
    rng: &mut R,
) -> HumanAction {
    let opposite = robot_move.unwrap_or(blocked).reverse();
    match outcome {
        Outcome::Comply => {
            let mut excluded = vec![blocked];
            if robot_move.is_some() {
                excluded.push(opposite);
            }
            match world.field.best_step_excluding(state.pos, &excluded) {
                Some(d) => d.into(),
                None if state.can_detect() => HumanAction::Detect,
                None => world.uniform_move(state.pos, rng),
            }
        }
        Outcome::Oppose => {
            if rng.random::<f64>() < 0.5 && state.can_detect() {
                HumanAction::Detect
            } else {
                opposite.into()
            }
        }
    }
}

/// Replacement move for the robot at `state`, planned on its own beliefs.
pub fn robot_replacement_move(map: &GridMap, state: &WorldState) -> Direction {
    SimWorld::new(map, state, RewardParams::default()).replacement_move(state.pos)
}
