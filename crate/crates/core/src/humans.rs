//! Simulated users: ε-greedy A* navigators with static or drifting compliance.
//!
//! A simulated human only ever sees a [`HumanView`], never the true layer.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Beta, Distribution};
use serde::{Deserialize, Serialize};

use crate::domain::{Cell, CellSet, Direction, HumanAction, HumanView, RobotAction, StepEvents, WorldState};
use crate::pathfinding;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Dynamics {
    Static,
    /// Compliance drops when the robot takes control, rises when it explains.
    PreferenceDriven,
    /// Compliance rises with progress and drops after a fall.
    OutcomeDriven,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HumanProfile {
    /// Expertise: probability of taking the greedy move.
    pub psi: f64,
    /// Probability of accepting an intervention.
    pub theta: f64,
    /// Beta parameters `theta` was drawn from, if any.
    pub theta_prior: Option<(f64, f64)>,
    pub dynamics: Dynamics,
    pub delta: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ThetaEvent {
    TookControl,
    Explained,
    EpisodeSuccessStep,
    Fell,
}

pub const THETA_MIN: f64 = 0.01;
pub const THETA_MAX: f64 = 0.99;

pub fn update_theta(profile: &HumanProfile, event: ThetaEvent) -> HumanProfile {
    let d = profile.delta;
    let change = match (profile.dynamics, event) {
        (Dynamics::PreferenceDriven, ThetaEvent::TookControl) => -d,
        (Dynamics::PreferenceDriven, ThetaEvent::Explained) => d,
        (Dynamics::OutcomeDriven, ThetaEvent::EpisodeSuccessStep) => d / 5.0,
        (Dynamics::OutcomeDriven, ThetaEvent::Fell) => -d,
        _ => return *profile,
    };
    HumanProfile { theta: (profile.theta + change).clamp(THETA_MIN, THETA_MAX), ..*profile }
}

/// Events one joint step produces for compliance dynamics.
pub fn theta_events(
    robot: &RobotAction,
    before: &WorldState,
    after: &WorldState,
    events: &StepEvents,
    goal: Cell,
) -> Vec<ThetaEvent> {
    let mut out = Vec::new();
    if robot.kind().takes_control() {
        out.push(ThetaEvent::TookControl);
    }
    if robot.kind().explains() {
        out.push(ThetaEvent::Explained);
    }
    if events.fell {
        out.push(ThetaEvent::Fell);
    } else if after.pos.manhattan(goal) < before.pos.manhattan(goal) {
        out.push(ThetaEvent::EpisodeSuccessStep);
    }
    out
}

/// First step of a shortest path on the human's believed-safe cells.
pub fn astar_next(view: &HumanView, pos: Cell, goal: Cell) -> Option<Direction> {
    pathfinding::astar_next(view.size, view.hazards, pos, goal)
}

/// The intervention the human is reacting to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LastIntervention {
    pub robot: RobotAction,
    /// The move the robot blocked or overrode.
    pub blocked: Direction,
    /// Where the human stood when proposing it.
    pub from: Cell,
}

/// Short-term memory of a simulated human within one episode.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct HumanMemory {
    /// Cells the robot steered the human away from; ignored once revealed.
    pub avoided: CellSet,
    /// Consecutive interventions opposed.
    pub oppose_streak: u32,
}

fn in_grid_moves(view: &HumanView, pos: Cell) -> Vec<Direction> {
    Direction::ALL.into_iter().filter(|&d| pos.step(d, view.size).is_some()).collect()
}

fn uniform_move<R: Rng + ?Sized>(view: &HumanView, pos: Cell, rng: &mut R) -> HumanAction {
    let moves = in_grid_moves(view, pos);
    moves[rng.random_range(0..moves.len())].into()
}

/// Best first step toward the goal that avoids `excluded` directions.
fn replan(view: &HumanView, pos: Cell, excluded: &[Direction]) -> Option<Direction> {
    let mut best: Option<(usize, Direction)> = None;
    for d in Direction::ALL {
        if excluded.contains(&d) {
            continue;
        }
        let Some(n) = pos.step(d, view.size) else { continue };
        if view.hazards.contains(n) {
            continue;
        }
        if let Some(c) = pathfinding::astar_cost(view.size, view.hazards, n, view.goal) {
            if best.is_none_or(|(bc, _)| c < bc) {
                best = Some((c, d));
            }
        }
    }
    best.map(|(_, d)| d)
}

/// Next action of a simulated human.
///
/// After an intervention the human complies with probability `theta`, marking
/// the cell it was kept from as one to avoid and re-planning without the
/// blocked move (nor undoing a take-over). Otherwise it opposes: first by
/// repeating the move, then by detecting or moving the opposite way, equally
/// often. Without an intervention it follows A* with probability `psi` and
/// moves uniformly otherwise.
pub fn human_act<R: Rng + ?Sized>(
    profile: &HumanProfile,
    memory: &mut HumanMemory,
    view: &HumanView,
    state: &WorldState,
    last: Option<&LastIntervention>,
    rng: &mut R,
) -> HumanAction {
    memory.avoided = memory.avoided.difference(state.revealed);
    let pos = state.pos;
    if let Some(last) = last {
        let robot_move = last.robot.replacement();
        let opposite = robot_move.unwrap_or(last.blocked).reverse();
        if rng.random::<f64>() < profile.theta {
            memory.oppose_streak = 0;
            if let Some(target) = last.from.step(last.blocked, view.size) {
                if target != view.goal && !state.revealed.contains(target) {
                    memory.avoided.insert(target);
                }
            }
            let mut excluded = vec![last.blocked];
            if robot_move.is_some() {
                excluded.push(opposite);
            }
            let cautious = view.with_extra_hazards(memory.avoided);
            return match replan(&cautious, pos, &excluded).or_else(|| replan(view, pos, &excluded)) {
                Some(d) => d.into(),
                None if state.can_detect() => HumanAction::Detect,
                None => uniform_move(view, pos, rng),
            };
        }
        memory.oppose_streak += 1;
        if memory.oppose_streak == 1 {
            return last.blocked.into();
        }
        return if rng.random::<f64>() < 0.5 && state.can_detect() { HumanAction::Detect } else { opposite.into() };
    }
    memory.oppose_streak = 0;
    if rng.random::<f64>() >= profile.psi {
        return uniform_move(view, pos, rng);
    }
    let cautious = view.with_extra_hazards(memory.avoided);
    if let Some(d) = astar_next(&cautious, pos, view.goal).or_else(|| astar_next(view, pos, view.goal)) {
        return d.into();
    }
    let unexplored =
        Direction::ALL.into_iter().filter_map(|d| pos.step(d, view.size)).any(|c| !view.revealed.contains(c));
    if state.can_detect() && unexplored {
        HumanAction::Detect
    } else {
        uniform_move(view, pos, rng)
    }
}

/// Compliance of a profile: fixed or drawn from a beta prior.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ThetaSpec {
    Fixed(f64),
    Beta { a: f64, b: f64 },
}

/// One entry of a population file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProfileSpec {
    pub id: String,
    pub psi: f64,
    pub theta: ThetaSpec,
    #[serde(default = "default_dynamics")]
    pub dynamics: Dynamics,
    #[serde(default = "default_delta")]
    pub delta: f64,
}

fn default_dynamics() -> Dynamics {
    Dynamics::Static
}

fn default_delta() -> f64 {
    0.05
}

impl ProfileSpec {
    pub fn new(id: impl Into<String>, psi: f64, theta: ThetaSpec, dynamics: Dynamics) -> Self {
        ProfileSpec { id: id.into(), psi, theta, dynamics, delta: default_delta() }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> HumanProfile {
        let (theta, theta_prior) = match self.theta {
            ThetaSpec::Fixed(t) => (t, None),
            ThetaSpec::Beta { a, b } => {
                let dist = Beta::new(a, b).expect("beta parameters are positive");
                (dist.sample(rng), Some((a, b)))
            }
        };
        HumanProfile {
            psi: self.psi,
            theta: theta.clamp(THETA_MIN, THETA_MAX),
            theta_prior,
            dynamics: self.dynamics,
            delta: self.delta,
        }
    }
}

/// Compliance priors used for simulated populations.
pub const THETA_PRIORS: [(f64, f64); 5] = [(20.0, 80.0), (40.0, 60.0), (50.0, 50.0), (60.0, 40.0), (80.0, 20.0)];

/// Four users: a skilled compliant one, a weak reluctant one, and two
/// ψ = 0.7 users whose compliance drifts.
pub fn default_population() -> Vec<ProfileSpec> {
    vec![
        ProfileSpec::new("static-expert", 0.9, ThetaSpec::Beta { a: 60.0, b: 40.0 }, Dynamics::Static),
        ProfileSpec::new("static-novice", 0.5, ThetaSpec::Beta { a: 40.0, b: 60.0 }, Dynamics::Static),
        ProfileSpec::new("dynamic-preference", 0.7, ThetaSpec::Beta { a: 50.0, b: 50.0 }, Dynamics::PreferenceDriven),
        ProfileSpec::new("dynamic-outcome", 0.7, ThetaSpec::Beta { a: 50.0, b: 50.0 }, Dynamics::OutcomeDriven),
    ]
}

/// A simulated human with its own random stream.
#[derive(Debug, Clone)]
pub struct SimulatedHuman {
    pub profile: HumanProfile,
    pub memory: HumanMemory,
    rng: ChaCha8Rng,
}

impl SimulatedHuman {
    pub fn new(profile: HumanProfile, rng: ChaCha8Rng) -> Self {
        SimulatedHuman { profile, memory: HumanMemory::default(), rng }
    }

    pub fn act(&mut self, view: &HumanView, state: &WorldState, last: Option<&LastIntervention>) -> HumanAction {
        human_act(&self.profile, &mut self.memory, view, state, last, &mut self.rng)
    }

    /// Let compliance react to what just happened.
    pub fn observe(
        &mut self,
        robot: &RobotAction,
        before: &WorldState,
        after: &WorldState,
        events: &StepEvents,
        goal: Cell,
    ) {
        for e in theta_events(robot, before, after, events, goal) {
            self.profile = update_theta(&self.profile, e);
        }
    }
}
