//! Robot agents selectable by id.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::domain::{GridMap, HumanAction, RewardParams, RobotAction, WorldState};
use crate::heuristic::{heuristic_decide, HeuristicConfig, HeuristicState, InterventionStyle};
use crate::planner::{Planner, PlannerMode, SearchConfig, SearchDiagnostics, SimWorld};

/// Every agent id the harness and the service accept.
pub const AGENT_IDS: [&str; 8] = [
    "no-assist",
    "heuristic-interrupt",
    "heuristic-interrupt-explain",
    "heuristic-takecontrol",
    "heuristic-takecontrol-explain",
    "bayes-pomcp",
    "pomcp",
    "adv-bayes-pomcp",
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown agent `{0}`")]
pub struct UnknownAgent(pub String);

/// Agent id plus the knobs that matter for it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AgentSpec {
    pub id: String,
    /// Simulations per move for the search agents.
    #[serde(default = "default_n_sims")]
    pub n_sims: u32,
    /// Slack of the heuristic agents.
    #[serde(default = "default_k")]
    pub k: u32,
}

fn default_n_sims() -> u32 {
    100
}

fn default_k() -> u32 {
    1
}

impl AgentSpec {
    pub fn new(id: impl Into<String>) -> Self {
        AgentSpec { id: id.into(), n_sims: default_n_sims(), k: default_k() }
    }

    pub fn with_sims(id: impl Into<String>, n_sims: u32) -> Self {
        AgentSpec { n_sims, ..AgentSpec::new(id) }
    }

    pub fn is_search(&self) -> bool {
        matches!(self.id.as_str(), "bayes-pomcp" | "pomcp" | "adv-bayes-pomcp")
    }

    pub fn validate(&self) -> Result<(), UnknownAgent> {
        if AGENT_IDS.contains(&self.id.as_str()) {
            Ok(())
        } else {
            Err(UnknownAgent(self.id.clone()))
        }
    }

    /// `id` for non-search agents, `id@n_sims` otherwise.
    pub fn label(&self) -> String {
        if self.is_search() {
            format!("{}@{}", self.id, self.n_sims)
        } else {
            self.id.clone()
        }
    }

    pub fn build(&self, seed: u64) -> Result<Box<dyn Agent>, UnknownAgent> {
        let heuristic = |style, explain| {
            let config = HeuristicConfig { k: self.k, ..HeuristicConfig::new(style, explain) };
            Box::new(HeuristicAgent::new(config)) as Box<dyn Agent>
        };
        let search =
            |mode| Box::new(SearchAgent::new(SearchConfig::with_mode(mode, self.n_sims), seed)) as Box<dyn Agent>;
        Ok(match self.id.as_str() {
            "no-assist" => Box::new(NoAssist),
            "heuristic-interrupt" => heuristic(InterventionStyle::Interrupt, false),
            "heuristic-interrupt-explain" => heuristic(InterventionStyle::Interrupt, true),
            "heuristic-takecontrol" => heuristic(InterventionStyle::TakeControl, false),
            "heuristic-takecontrol-explain" => heuristic(InterventionStyle::TakeControl, true),
            "bayes-pomcp" => search(PlannerMode::Bayes),
            "pomcp" => search(PlannerMode::AblationPomcp),
            "adv-bayes-pomcp" => search(PlannerMode::Adversarial),
            other => return Err(UnknownAgent(other.to_string())),
        })
    }
}

impl fmt::Display for AgentSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Parses `id` or `id@n_sims`.
impl FromStr for AgentSpec {
    type Err = UnknownAgent;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let spec = match s.split_once('@') {
            Some((id, n)) => AgentSpec::with_sims(id, n.parse().map_err(|_| UnknownAgent(s.to_string()))?),
            None => AgentSpec::new(s),
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// A robot policy that answers each human action.
pub trait Agent: Send {
    /// Answer `pending`, the action the human just proposed in `state`.
    fn decide(&mut self, map: &GridMap, state: &WorldState, params: &RewardParams, pending: HumanAction)
        -> RobotAction;

    /// The human answered the joint step `(pending, robot)` with `next`.
    fn observe(&mut self, _robot: &RobotAction, _pending: HumanAction, _next: HumanAction) {}

    fn diagnostics(&self) -> Option<SearchDiagnostics> {
        None
    }
}

/// Never intervenes.
#[derive(Debug, Clone, Copy, Default)]
pub struct NoAssist;

impl Agent for NoAssist {
    fn decide(&mut self, _: &GridMap, _: &WorldState, _: &RewardParams, _: HumanAction) -> RobotAction {
        RobotAction::NoAssist
    }
}

#[derive(Debug, Clone)]
pub struct HeuristicAgent {
    config: HeuristicConfig,
    state: HeuristicState,
}

impl HeuristicAgent {
    pub fn new(config: HeuristicConfig) -> Self {
        HeuristicAgent { config, state: HeuristicState::default() }
    }
}

impl Agent for HeuristicAgent {
    fn decide(
        &mut self,
        map: &GridMap,
        state: &WorldState,
        params: &RewardParams,
        pending: HumanAction,
    ) -> RobotAction {
        let world = SimWorld::new(map, state, *params);
        let (action, next) = heuristic_decide(&world, state, pending, self.state, &self.config);
        self.state = next;
        action
    }
}

/// Tree-search agent in any of the planner modes.
#[derive(Debug, Clone)]
pub struct SearchAgent {
    planner: Planner,
}

impl SearchAgent {
    pub fn new(config: SearchConfig, seed: u64) -> Self {
        SearchAgent { planner: Planner::new(config, seed) }
    }

    pub fn planner(&self) -> &Planner {
        &self.planner
    }
}

impl Agent for SearchAgent {
    fn decide(
        &mut self,
        map: &GridMap,
        state: &WorldState,
        params: &RewardParams,
        pending: HumanAction,
    ) -> RobotAction {
        self.planner.plan(map, state, params, pending)
    }

    fn observe(&mut self, robot: &RobotAction, pending: HumanAction, next: HumanAction) {
        self.planner.advance(robot, pending, next);
    }

    fn diagnostics(&self) -> Option<SearchDiagnostics> {
        self.planner.diagnostics().cloned()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_resolve() {
        for id in AGENT_IDS {
            assert!(AgentSpec::new(id).build(0).is_ok(), "{id}");
        }
        assert_eq!(AgentSpec::new("telepath").build(0).err(), Some(UnknownAgent("telepath".into())));
        let spec: AgentSpec = "pomcp@500".parse().unwrap();
        assert_eq!((spec.id.as_str(), spec.n_sims, spec.label()), ("pomcp", 500, "pomcp@500".to_string()));
        assert!("pomcp@many".parse::<AgentSpec>().is_err());
        assert_eq!(AgentSpec::new("no-assist").label(), "no-assist");
    }
}
