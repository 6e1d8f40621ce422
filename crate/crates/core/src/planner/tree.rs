use serde::Serialize;

use crate::belief::BeliefSet;
use crate::domain::{HumanAction, RobotActionKind};

pub type NodeId = u32;

/// Statistics of a robot action taken at some history.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct ActionNode {
    pub visits: u32,
    pub value: f64,
    /// Next history nodes, indexed by the human's reply.
    #[serde(skip)]
    pub children: [Option<NodeId>; 5],
}

/// A node keyed by an action history ending in a human action.
#[derive(Debug, Clone, PartialEq)]
pub struct HistoryNode {
    pub visits: u32,
    pub value: f64,
    pub belief: BeliefSet,
    /// Indexed by [`RobotActionKind::index`].
    pub actions: [Option<ActionNode>; 5],
}

impl HistoryNode {
    pub fn new(belief: BeliefSet) -> Self {
        HistoryNode { visits: 0, value: 0.0, belief, actions: Default::default() }
    }

    pub fn action(&self, kind: RobotActionKind) -> Option<&ActionNode> {
        self.actions[kind.index()].as_ref()
    }

    pub fn action_visits(&self, kind: RobotActionKind) -> u32 {
        self.action(kind).map_or(0, |a| a.visits)
    }
}

/// Running mean update: `V ← V + (R − V) / N` after incrementing `N`.
pub fn backup(visits: &mut u32, value: &mut f64, ret: f64) {
    *visits += 1;
    *value += (ret - *value) / *visits as f64;
}

/// Arena-backed search tree with a movable root.
#[derive(Debug, Clone, PartialEq)]
pub struct Tree {
    nodes: Vec<HistoryNode>,
    root: NodeId,
}

impl Tree {
    pub fn new(root_belief: BeliefSet) -> Self {
        Tree { nodes: vec![HistoryNode::new(root_belief)], root: 0 }
    }

    pub fn root_id(&self) -> NodeId {
        self.root
    }

    pub fn root(&self) -> &HistoryNode {
        &self.nodes[self.root as usize]
    }

    pub fn root_mut(&mut self) -> &mut HistoryNode {
        let r = self.root as usize;
        &mut self.nodes[r]
    }

    pub fn node(&self, id: NodeId) -> &HistoryNode {
        &self.nodes[id as usize]
    }

    pub fn node_mut(&mut self, id: NodeId) -> &mut HistoryNode {
        &mut self.nodes[id as usize]
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn child(&self, id: NodeId, kind: RobotActionKind, human: HumanAction) -> Option<NodeId> {
        self.node(id).action(kind)?.children[human.index()]
    }

    /// The child for `(kind, human)`, created empty with `capacity` if missing.
    pub fn ensure_child(&mut self, id: NodeId, kind: RobotActionKind, human: HumanAction, capacity: usize) -> NodeId {
        if let Some(c) = self.child(id, kind, human) {
            return c;
        }
        let new_id = self.nodes.len() as NodeId;
        self.nodes.push(HistoryNode::new(BeliefSet::empty(capacity)));
        let action = self.node_mut(id).actions[kind.index()].get_or_insert_with(ActionNode::default);
        action.children[human.index()] = Some(new_id);
        new_id
    }

    /// Keep only the subtree below `(kind, human)` and make it the root. The
    /// arena is compacted, so old ids are invalid afterwards. Returns whether
    /// the child existed; if not the tree restarts from `fallback`.
    pub fn advance(&mut self, kind: RobotActionKind, human: HumanAction, fallback: BeliefSet) -> bool {
        let Some(child) = self.child(self.root, kind, human) else {
            *self = Tree::new(fallback);
            return false;
        };
        let mut old = std::mem::take(&mut self.nodes);
        let mut remap = vec![u32::MAX; old.len()];
        let mut order = vec![child];
        remap[child as usize] = 0;
        let mut i = 0;
        while i < order.len() {
            let id = order[i] as usize;
            for a in old[id].actions.iter().flatten() {
                for &c in a.children.iter().flatten() {
                    if remap[c as usize] == u32::MAX {
                        remap[c as usize] = order.len() as u32;
                        order.push(c);
                    }
                }
            }
            i += 1;
        }
        let mut nodes = Vec::with_capacity(order.len());
        for &id in &order {
            let mut n = std::mem::replace(&mut old[id as usize], HistoryNode::new(BeliefSet::empty(0)));
            for a in n.actions.iter_mut().flatten() {
                for c in a.children.iter_mut().flatten() {
                    *c = remap[*c as usize];
                }
            }
            nodes.push(n);
        }
        self.nodes = nodes;
        self.root = 0;
        true
    }
}

/// UCB1 over the legal actions of `node`; unvisited actions come first.
pub fn ucb_select(node: &HistoryNode, legal: &[RobotActionKind], c: f64) -> RobotActionKind {
    if let Some(&k) = legal.iter().find(|&&k| node.action_visits(k) == 0) {
        return k;
    }
    let ln_n = (node.visits.max(1) as f64).ln();
    let mut best = legal[0];
    let mut best_score = f64::NEG_INFINITY;
    for &k in legal {
        let a = node.action(k).expect("visited action exists");
        let score = a.value + c * (ln_n / a.visits as f64).sqrt();
        if score > best_score {
            best_score = score;
            best = k;
        }
    }
    best
}

/// Highest-valued visited legal action, first in canonical order on ties.
/// Falls back to the first legal action when nothing was visited.
pub fn greedy_select(node: &HistoryNode, legal: &[RobotActionKind]) -> RobotActionKind {
    let mut best = None;
    for &k in legal {
        if let Some(a) = node.action(k).filter(|a| a.visits > 0) {
            if best.is_none_or(|(_, v)| a.value > v) {
                best = Some((k, a.value));
            }
        }
    }
    best.map_or(legal[0], |(k, _)| k)
}
