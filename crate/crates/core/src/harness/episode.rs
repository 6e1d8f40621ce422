use std::time::Instant;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::agent::AgentSpec;
use crate::domain::{
    game_score, step_world, GridMap, HumanAction, MapDocument, MapError, RewardParams, RobotAction, StepEvents,
    WorldState,
};
use crate::humans::{HumanProfile, LastIntervention, ProfileSpec, SimulatedHuman};
use crate::planner::SearchDiagnostics;

/// Score constants and sensor budget of one episode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EpisodeParams {
    pub reward: RewardParams,
    /// `None` means unlimited.
    pub detection_budget: Option<u32>,
}

impl EpisodeParams {
    /// Benchmark settings for a map of side `size`, unlimited sensor.
    pub fn benchmark(size: usize) -> Self {
        EpisodeParams { reward: RewardParams::benchmark(size), detection_budget: None }
    }
}

/// One turn: what the human proposed, what the robot did, what happened.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepRecord {
    pub human: HumanAction,
    pub robot: RobotAction,
    pub events: StepEvents,
    /// Wall time of the agent's decision.
    pub plan_seconds: f64,
    /// Compliance of a simulated human when it proposed the action.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagnostics: Option<SearchDiagnostics>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "state", rename_all = "snake_case")]
pub enum EpisodeStatus {
    Completed,
    Failed { error: String },
}

/// Everything needed to audit and replay an episode.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EpisodeRecord {
    pub map_id: String,
    /// Full map, so the record replays on its own. Live sessions omit it and
    /// replay falls back to the shipped map named `map_id`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub map: Option<MapDocument>,
    pub map_size: usize,
    pub agent: AgentSpec,
    pub human_id: String,
    /// Initial profile of a simulated human; absent for live players.
    #[serde(default)]
    pub human: Option<HumanProfile>,
    pub seed: u64,
    pub params: EpisodeParams,
    pub trace: Vec<StepRecord>,
    pub score: i64,
    pub steps: u32,
    pub falls: u32,
    pub detections: u32,
    pub goal_reached: bool,
    pub mean_plan_seconds: f64,
    pub status: EpisodeStatus,
}

impl EpisodeRecord {
    /// Start an empty record for a live or simulated episode.
    pub fn begin(
        map_id: &str,
        map: &GridMap,
        agent: &AgentSpec,
        human_id: &str,
        seed: u64,
        params: EpisodeParams,
    ) -> Self {
        EpisodeRecord {
            map_id: map_id.to_string(),
            map: Some(map.to_document()),
            map_size: map.size(),
            agent: agent.clone(),
            human_id: human_id.to_string(),
            human: None,
            seed,
            params,
            trace: Vec::new(),
            score: params.reward.max_steps as i64,
            steps: 0,
            falls: 0,
            detections: 0,
            goal_reached: false,
            mean_plan_seconds: 0.0,
            status: EpisodeStatus::Completed,
        }
    }

    /// Append a step and refresh the totals from `state`.
    pub fn push(&mut self, step: StepRecord, state: &WorldState) {
        self.trace.push(step);
        self.steps = state.steps_taken;
        self.falls = state.falls;
        self.detections = state.detections_used;
        self.goal_reached = state.goal_reached;
        self.score = state.score(&self.params.reward);
        self.mean_plan_seconds = self.trace.iter().map(|s| s.plan_seconds).sum::<f64>() / self.trace.len() as f64;
    }

    pub fn is_completed(&self) -> bool {
        self.status == EpisodeStatus::Completed
    }

    /// Copy with every wall-clock field zeroed, for determinism checks.
    pub fn without_timing(&self) -> Self {
        let mut r = self.clone();
        r.mean_plan_seconds = 0.0;
        for s in &mut r.trace {
            s.plan_seconds = 0.0;
        }
        r
    }

    /// Sort key used when merging parallel results.
    pub fn key(&self) -> (String, String, String, u64) {
        (self.map_id.clone(), self.agent.label(), self.human_id.clone(), self.seed)
    }
}

/// Knobs that only change what is logged.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecordOptions {
    /// Keep per-step search diagnostics.
    pub diagnostics: bool,
}

/// Independent seeded streams of one episode. The human's streams do not
/// depend on the agent, so different agents face identical users.
pub(crate) struct EpisodeRngs {
    pub theta: ChaCha8Rng,
    pub human: ChaCha8Rng,
    pub agent_seed: u64,
}

impl EpisodeRngs {
    pub fn new(seed: u64) -> Self {
        let stream = |s| {
            let mut r = ChaCha8Rng::seed_from_u64(seed);
            r.set_stream(s);
            r
        };
        let agent_seed = stream(3).next_u64();
        EpisodeRngs { theta: stream(1), human: stream(2), agent_seed }
    }
}

/// Seed the agent of an episode with `seed` receives. Live sessions use the
/// same derivation so a logged seed rebuilds the same agent.
pub fn agent_seed(seed: u64) -> u64 {
    EpisodeRngs::new(seed).agent_seed
}

/// Play one episode of `agent` with a simulated human drawn from `human`.
pub fn run_episode(
    map_id: &str,
    map: &GridMap,
    agent: &AgentSpec,
    human: &ProfileSpec,
    seed: u64,
    params: &EpisodeParams,
    options: RecordOptions,
) -> EpisodeRecord {
    let mut record = EpisodeRecord::begin(map_id, map, agent, &human.id, seed, *params);
    let mut rngs = EpisodeRngs::new(seed);
    let profile = human.sample(&mut rngs.theta);
    record.human = Some(profile);
    let mut robot = match agent.build(rngs.agent_seed) {
        Ok(a) => a,
        Err(e) => {
            record.status = EpisodeStatus::Failed { error: e.to_string() };
            return record;
        }
    };
    let mut person = SimulatedHuman::new(profile, rngs.human);
    let mut state = WorldState::initial(map, params.detection_budget);
    let mut theta = person.profile.theta;
    let mut pending = person.act(&map.human_view(&state), &state, None);

    while !state.done {
        let started = Instant::now();
        let action = robot.decide(map, &state, &params.reward, pending);
        let plan_seconds = started.elapsed().as_secs_f64();
        let (next, events) = match step_world(map, &state, pending, &action, &params.reward) {
            Ok(x) => x,
            Err(e) => {
                record.status = EpisodeStatus::Failed { error: format!("step {}: {e}", state.steps_taken) };
                return record;
            }
        };
        person.observe(&action, &state, &next, &events, map.goal());
        let diagnostics = if options.diagnostics { robot.diagnostics() } else { None };
        record.push(
            StepRecord { human: pending, robot: action, events, plan_seconds, theta: Some(theta), diagnostics },
            &next,
        );
        let from = state.pos;
        state = next;
        if state.done {
            break;
        }
        let last = pending.direction().filter(|_| action.is_intervention()).map(|blocked| LastIntervention {
            robot: action,
            blocked,
            from,
        });
        theta = person.profile.theta;
        let reply = person.act(&map.human_view(&state), &state, last.as_ref());
        robot.observe(&action, pending, reply);
        pending = reply;
    }
    record
}

#[derive(Debug, Error)]
pub enum ReplayError {
    #[error("record map is invalid: {0:?}")]
    Map(#[from] MapError),
    #[error("record has no map and `{0}` is not a shipped map")]
    MissingMap(String),
    #[error("step {step} is illegal: {source}")]
    Illegal { step: usize, source: crate::domain::IllegalAction },
}

/// Outcome of re-simulating a record.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReplayReport {
    pub recorded_score: i64,
    pub replayed_score: i64,
    /// Steps whose events differ from the recording.
    pub mismatched_steps: Vec<usize>,
}

impl ReplayReport {
    pub fn is_faithful(&self) -> bool {
        self.recorded_score == self.replayed_score && self.mismatched_steps.is_empty()
    }
}

/// Re-run the recorded joint actions through the domain.
pub fn replay(record: &EpisodeRecord) -> Result<ReplayReport, ReplayError> {
    let map = match &record.map {
        Some(doc) => GridMap::from_document(doc)?,
        None => crate::maps::builtin(&record.map_id).ok_or_else(|| ReplayError::MissingMap(record.map_id.clone()))?,
    };
    let params = &record.params.reward;
    let mut state = WorldState::initial(&map, record.params.detection_budget);
    let mut mismatched = Vec::new();
    let mut total = params.max_steps as i64;
    for (i, step) in record.trace.iter().enumerate() {
        let (next, events) = step_world(&map, &state, step.human, &step.robot, params)
            .map_err(|source| ReplayError::Illegal { step: i, source })?;
        if events != step.events {
            mismatched.push(i);
        }
        total += events.reward;
        state = next;
    }
    let replayed = game_score(params, state.steps_taken, state.falls, state.detections_used, state.goal_reached);
    debug_assert_eq!(replayed, total);
    Ok(ReplayReport { recorded_score: record.score, replayed_score: replayed, mismatched_steps: mismatched })
}
