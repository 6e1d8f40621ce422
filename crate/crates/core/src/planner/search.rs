use rand::Rng;
use serde::Serialize;

use crate::belief::BetaParticle;
use crate::domain::{HumanAction, RobotActionKind, WorldState};

use super::model::{legal_actions, step_sim, AugmentedSimState, SimWorld};
use super::tree::{backup, greedy_select, ucb_select, NodeId, Tree};
use super::{PlannerMode, SearchConfig};

/// Counters collected during one search.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub simulations: u32,
    /// Deepest depth at which a joint step was simulated, in tree or rollout.
    pub max_depth: u32,
    pub rollouts: u32,
    pub terminal_hits: u32,
}

struct Ctx<'a, R: Rng + ?Sized> {
    world: &'a SimWorld,
    config: &'a SearchConfig,
    rng: &'a mut R,
    stats: SearchStats,
}

impl<R: Rng + ?Sized> Ctx<'_, R> {
    fn cut(&self, depth: u32) -> bool {
        self.config.gamma.powi(depth as i32) < self.config.epsilon
    }

    fn touch(&mut self, depth: u32) {
        self.stats.max_depth = self.stats.max_depth.max(depth);
    }

    fn simulate(&mut self, tree: &mut Tree, s: AugmentedSimState, node: NodeId, depth: u32) -> f64 {
        if self.cut(depth) {
            return 0.0;
        }
        let track_belief = self.config.mode != PlannerMode::AblationPomcp;
        if depth > 0 && track_belief {
            tree.node_mut(node).belief.push(s.particle);
        }
        let legal = legal_actions(s.pending);
        let kind = ucb_select(tree.node(node), legal, self.config.ucb_c);
        self.touch(depth);
        let step = step_sim(self.world, &s, kind, self.config, self.rng);
        let first_visit = tree.node(node).action_visits(kind) == 0;

        let ret = if step.terminal {
            self.stats.terminal_hits += 1;
            step.reward
        } else if first_visit {
            let child = tree.ensure_child(node, kind, step.next.pending, self.config.belief_capacity);
            if track_belief {
                tree.node_mut(child).belief.push(step.next.particle);
            }
            self.stats.rollouts += 1;
            step.reward + self.config.gamma * self.rollout(step.next, depth + 1)
        } else {
            let child = tree.ensure_child(node, kind, step.next.pending, self.config.belief_capacity);
            step.reward + self.config.gamma * self.simulate(tree, step.next, child, depth + 1)
        };

        let n = tree.node_mut(node);
        let action = n.actions[kind.index()].get_or_insert_with(Default::default);
        backup(&mut action.visits, &mut action.value, ret);
        backup(&mut n.visits, &mut n.value, ret);
        ret
    }

    fn rollout(&mut self, mut s: AugmentedSimState, mut depth: u32) -> f64 {
        let mut total = 0.0;
        let mut discount = 1.0;
        while !self.cut(depth) {
            let legal = legal_actions(s.pending);
            let kind = legal[self.rng.random_range(0..legal.len())];
            self.touch(depth);
            let step = step_sim(self.world, &s, kind, self.config, self.rng);
            total += discount * step.reward;
            if step.terminal {
                break;
            }
            discount *= self.config.gamma;
            s = step.next;
            depth += 1;
        }
        total
    }
}

/// Run `config.n_sims` simulations from the root of `tree`, which answers
/// `pending` in `state`, and return the greedy root action.
pub fn search<R: Rng + ?Sized>(
    tree: &mut Tree,
    world: &SimWorld,
    state: &WorldState,
    pending: HumanAction,
    config: &SearchConfig,
    rng: &mut R,
) -> (RobotActionKind, SearchStats) {
    let mut ctx = Ctx { world, config, rng, stats: SearchStats::default() };
    let root = tree.root_id();
    for _ in 0..config.n_sims {
        let particle = tree.root().belief.sample(ctx.rng).unwrap_or(BetaParticle::UNIFORM);
        let s = AugmentedSimState { world: *state, particle, pending };
        ctx.simulate(tree, s, root, 0);
        ctx.stats.simulations += 1;
    }
    (greedy_select(tree.root(), legal_actions(pending)), ctx.stats)
}

/// Value of one simulation from an arbitrary tree node, for tests and tools.
pub fn simulate_once<R: Rng + ?Sized>(
    tree: &mut Tree,
    world: &SimWorld,
    s: AugmentedSimState,
    node: NodeId,
    depth: u32,
    config: &SearchConfig,
    rng: &mut R,
) -> f64 {
    let mut ctx = Ctx { world, config, rng, stats: SearchStats::default() };
    ctx.simulate(tree, s, node, depth)
}

/// Discounted return of a single rollout from `s` at `depth`.
pub fn rollout_once<R: Rng + ?Sized>(
    world: &SimWorld,
    s: AugmentedSimState,
    depth: u32,
    config: &SearchConfig,
    rng: &mut R,
) -> f64 {
    let mut ctx = Ctx { world, config, rng, stats: SearchStats::default() };
    ctx.rollout(s, depth)
}
