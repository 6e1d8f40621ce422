//! Online Monte-Carlo tree search over robot interventions.
//!
//! The tree is keyed by the alternating history of human and robot actions.
//! Each node keeps a set of beta particles describing how likely the human is
//! to accept an intervention; simulations sample a particle at the root and
//! let it drive the simulated human's replies.

mod model;
mod search;
mod tree;

pub use model::{
    legal_actions, planner_human_model, robot_replacement_move, step_sim, AugmentedSimState, SimStep, SimWorld,
};
pub use search::{rollout_once, search, simulate_once, SearchStats};
pub use tree::{backup, greedy_select, ucb_select, ActionNode, HistoryNode, NodeId, Tree};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::belief::{classify_response, init_belief, root_belief_update};
use crate::domain::{GridMap, HumanAction, RewardParams, RobotAction, RobotActionKind, WorldState};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PlannerMode {
    /// Belief-driven human model.
    Bayes,
    /// Uniformly random human replies and no belief tracking.
    AblationPomcp,
    /// Bayes model, maximizing the negated team reward.
    Adversarial,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SearchConfig {
    pub gamma: f64,
    /// Simulations stop once `gamma^depth < epsilon`.
    pub epsilon: f64,
    pub n_sims: u32,
    pub ucb_c: f64,
    pub mode: PlannerMode,
    /// Noise of the modeled human when not intervened on.
    pub eps_plan: f64,
    /// Particles kept per node.
    pub belief_capacity: usize,
    /// Extra compliance probability the model grants explained interventions.
    pub explain_boost: f64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        let gamma: f64 = 0.99;
        SearchConfig {
            gamma,
            epsilon: gamma.powi(30),
            n_sims: 100,
            ucb_c: 30.0,
            mode: PlannerMode::Bayes,
            eps_plan: 0.1,
            belief_capacity: 100,
            explain_boost: 0.05,
        }
    }
}

impl SearchConfig {
    pub fn with_mode(mode: PlannerMode, n_sims: u32) -> Self {
        SearchConfig { mode, n_sims, ..Default::default() }
    }
}

/// Per-action root statistics after a search.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ActionStat {
    pub action: RobotActionKind,
    pub visits: u32,
    pub value: f64,
}

/// What the last search saw, for episode logs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchDiagnostics {
    pub root_visits: u32,
    pub actions: Vec<ActionStat>,
    pub chosen: RobotActionKind,
    pub belief_mean: f64,
    pub belief_size: usize,
    pub tree_nodes: usize,
    pub max_depth: u32,
}

/// A planner that persists its tree across the turns of one episode.
#[derive(Debug, Clone)]
pub struct Planner {
    config: SearchConfig,
    tree: Tree,
    rng: ChaCha8Rng,
    last: Option<SearchDiagnostics>,
}

impl Planner {
    pub fn new(config: SearchConfig, seed: u64) -> Self {
        let tree = Tree::new(init_belief(config.belief_capacity.max(1)).expect("capacity is positive"));
        Planner { config, tree, rng: ChaCha8Rng::seed_from_u64(seed), last: None }
    }

    pub fn config(&self) -> &SearchConfig {
        &self.config
    }

    pub fn tree(&self) -> &Tree {
        &self.tree
    }

    /// Forget everything and start a new episode.
    pub fn reset(&mut self, seed: u64) {
        *self = Planner::new(self.config, seed);
    }

    /// Choose the robot's answer to `pending` in `state`.
    pub fn plan(
        &mut self,
        map: &GridMap,
        state: &WorldState,
        params: &RewardParams,
        pending: HumanAction,
    ) -> RobotAction {
        let world = SimWorld::new(map, state, *params);
        let (kind, stats) = search(&mut self.tree, &world, state, pending, &self.config, &mut self.rng);
        let root = self.tree.root();
        self.last = Some(SearchDiagnostics {
            root_visits: root.visits,
            actions: legal_actions(pending)
                .iter()
                .map(|&k| ActionStat {
                    action: k,
                    visits: root.action_visits(k),
                    value: root.action(k).map_or(0.0, |a| a.value),
                })
                .collect(),
            chosen: kind,
            belief_mean: root.belief.mean().unwrap_or(0.5),
            belief_size: root.belief.len(),
            tree_nodes: self.tree.len(),
            max_depth: stats.max_depth,
        });
        world.robot_action(kind, state.pos, pending)
    }

    /// Move the root to the observed history and refresh its belief.
    pub fn advance(&mut self, robot: &RobotAction, pending: HumanAction, observed: HumanAction) {
        let capacity = self.config.belief_capacity.max(1);
        let kind = robot.kind();
        let child_particles = self
            .tree
            .child(self.tree.root_id(), kind, observed)
            .map(|c| self.tree.node(c).belief.particles().to_vec())
            .unwrap_or_default();
        let belief = if self.config.mode == PlannerMode::AblationPomcp {
            init_belief(capacity).expect("capacity is positive")
        } else {
            let outcome = pending.direction().and_then(|d| classify_response(robot, d, observed));
            root_belief_update(&child_particles, outcome, capacity, &mut self.rng).belief
        };
        self.tree.advance(kind, observed, belief.clone());
        self.tree.root_mut().belief = belief;
    }

    pub fn diagnostics(&self) -> Option<&SearchDiagnostics> {
        self.last.as_ref()
    }
}
