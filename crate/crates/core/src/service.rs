//! Turn-based HTTP game sessions: a person plays against any agent.
//!
//! Every response is built from what the human may see. The true layer and
//! the robot's view never leave the server; exported logs carry the map id
//! instead of the map itself.

use std::collections::HashMap;
use std::fs::OpenOptions;
use std::io::Write;
use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::{Arc, Mutex};
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use axum::extract::rejection::JsonRejection;
use axum::extract::{Path, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};
use tower_http::cors::CorsLayer;
use uuid::Uuid;

use crate::agent::{Agent, AgentSpec};
use crate::domain::{
    step_world, AgentKind, Cell, GridMap, HumanAction, RewardParams, RobotAction, StepEvents, WorldState,
};
use crate::harness::{EpisodeParams, EpisodeRecord, NamedMap, StepRecord};
use crate::maps;

/// Sensor uses per session unless the request says otherwise.
pub const DEFAULT_DETECTION_BUDGET: u32 = 5;

/// Human id written into session logs.
pub const LIVE_HUMAN_ID: &str = "live";

#[derive(Debug, Clone, Default)]
pub struct ServiceConfig {
    /// Maps offered by `GET /maps`. Empty means the shipped maps.
    pub maps: Vec<NamedMap>,
    /// Finished sessions are appended to `sessions.jsonl` here.
    pub log_dir: Option<PathBuf>,
}

struct Shared {
    maps: Vec<NamedMap>,
    log_dir: Option<PathBuf>,
    sessions: Mutex<HashMap<Uuid, Arc<tokio::sync::Mutex<Session>>>>,
}

#[derive(Clone)]
pub struct AppState(Arc<Shared>);

impl AppState {
    pub fn new(config: ServiceConfig) -> Self {
        let maps = if config.maps.is_empty() {
            maps::builtin_ids()
                .map(|id| NamedMap { id: id.to_string(), map: maps::builtin(id).expect("shipped map") })
                .collect()
        } else {
            config.maps
        };
        AppState(Arc::new(Shared { maps, log_dir: config.log_dir, sessions: Mutex::new(HashMap::new()) }))
    }

    fn session(&self, id: &str) -> Result<Arc<tokio::sync::Mutex<Session>>, ApiError> {
        let id = Uuid::parse_str(id).map_err(|_| ApiError::not_found(id))?;
        self.0
            .sessions
            .lock()
            .expect("session registry")
            .get(&id)
            .cloned()
            .ok_or_else(|| ApiError::not_found(&id.to_string()))
    }
}

pub fn router(state: AppState) -> Router {
    Router::new()
        .route("/maps", get(list_maps))
        .route("/sessions", post(create_session))
        .route("/sessions/{id}", get(get_session))
        .route("/sessions/{id}/actions", post(submit_action))
        .route("/sessions/{id}/log", get(export_log))
        .layer(CorsLayer::permissive())
        .with_state(state)
}

/// Bind `addr` and serve until the process is stopped.
pub async fn serve(addr: SocketAddr, config: ServiceConfig) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    tracing::info!("listening on {}", listener.local_addr()?);
    axum::serve(listener, router(AppState::new(config))).await
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapInfo {
    pub id: String,
    pub size: usize,
    pub start: Cell,
    pub goal: Cell,
}

/// An agent given either as `"id"` / `"id@n_sims"` or as a full spec.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum AgentRef {
    Label(String),
    Spec(AgentSpec),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CreateSession {
    pub map: String,
    pub agent: AgentRef,
    /// Drawn at random when absent; always echoed in the log.
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default = "default_budget")]
    pub detection_budget: u32,
    /// Defaults to the benchmark limit for the map size.
    #[serde(default)]
    pub max_steps: Option<u32>,
}

fn default_budget() -> u32 {
    DEFAULT_DETECTION_BUDGET
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubmitAction {
    pub action: HumanAction,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SessionStatus {
    Active,
    Finished,
}

/// A cell the human probed with the sensor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RevealedCell {
    pub cell: Cell,
    pub slippery: bool,
}

/// What the human player may see of a session.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Snapshot {
    pub id: Uuid,
    pub map_id: String,
    pub agent: String,
    pub status: SessionStatus,
    /// Unix seconds.
    pub created_at: u64,
    pub size: usize,
    pub start: Cell,
    pub goal: Cell,
    /// Rows of the human's map: `A` start, `G` goal, `H` hole, `s` believed
    /// slippery, `.` believed safe, `?` fogged.
    pub human_view: Vec<String>,
    pub fog: Vec<Cell>,
    pub revealed: Vec<RevealedCell>,
    pub fall_cells: Vec<Cell>,
    pub position: Cell,
    pub steps: u32,
    pub max_steps: u32,
    pub falls: u32,
    pub detections_used: u32,
    /// `None` when the sensor is unlimited.
    pub detections_left: Option<u32>,
    pub score: i64,
    pub done: bool,
    pub goal_reached: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TurnResponse {
    pub robot_action: RobotAction,
    pub events: StepEvents,
    pub snapshot: Snapshot,
    pub done: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorBody {
    pub error: String,
    pub message: String,
}

#[derive(Debug)]
pub struct ApiError {
    status: StatusCode,
    code: &'static str,
    message: String,
}

impl ApiError {
    fn new(status: StatusCode, code: &'static str, message: impl Into<String>) -> Self {
        ApiError { status, code, message: message.into() }
    }

    fn not_found(id: &str) -> Self {
        ApiError::new(StatusCode::NOT_FOUND, "not_found", format!("no session `{id}`"))
    }

    fn illegal(message: impl Into<String>) -> Self {
        ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, "illegal_action", message)
    }
}

fn bad_request(e: JsonRejection) -> ApiError {
    ApiError::new(StatusCode::BAD_REQUEST, "bad_request", e.body_text())
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(ErrorBody { error: self.code.to_string(), message: self.message })).into_response()
    }
}

struct Session {
    id: Uuid,
    map_id: String,
    map: GridMap,
    agent: Box<dyn Agent>,
    state: WorldState,
    params: EpisodeParams,
    record: EpisodeRecord,
    /// Previous joint step, told to the agent once the next human action arrives.
    last: Option<(RobotAction, HumanAction)>,
    created_at: u64,
}

impl Session {
    fn snapshot(&self) -> Snapshot {
        let map = &self.map;
        let human_view = (0..map.size())
            .map(|r| {
                (0..map.size())
                    .map(|c| {
                        let cell = Cell::new(r, c);
                        match map.kind(cell) {
                            crate::domain::CellKind::Start => 'A',
                            crate::domain::CellKind::Goal => 'G',
                            crate::domain::CellKind::Hole => 'H',
                            _ => map.view(AgentKind::Human, cell).to_char(),
                        }
                    })
                    .collect()
            })
            .collect();
        let revealed = self
            .state
            .revealed
            .iter()
            .map(|cell| RevealedCell { cell, slippery: map.kind(cell).is_hazard() })
            .collect();
        let s = &self.state;
        Snapshot {
            id: self.id,
            map_id: self.map_id.clone(),
            agent: self.record.agent.label(),
            status: if s.done { SessionStatus::Finished } else { SessionStatus::Active },
            created_at: self.created_at,
            size: map.size(),
            start: map.start(),
            goal: map.goal(),
            human_view,
            fog: map.cells().filter(|&c| map.is_fogged(c)).collect(),
            revealed,
            fall_cells: s.fall_cells.iter().collect(),
            position: s.pos,
            steps: s.steps_taken,
            max_steps: self.params.reward.max_steps,
            falls: s.falls,
            detections_used: s.detections_used,
            detections_left: s.detections_left(),
            score: s.score(&self.params.reward),
            done: s.done,
            goal_reached: s.goal_reached,
        }
    }

    /// One full turn: plan, apply, log.
    fn submit(&mut self, human: HumanAction) -> Result<TurnResponse, ApiError> {
        if self.state.done {
            return Err(ApiError::illegal("the episode is finished"));
        }
        if human == HumanAction::Detect && !self.state.can_detect() {
            return Err(ApiError::illegal("no detections left"));
        }
        if let Some((robot, pending)) = self.last.take() {
            self.agent.observe(&robot, pending, human);
        }
        let reward: RewardParams = self.params.reward;
        let started = Instant::now();
        let robot = self.agent.decide(&self.map, &self.state, &reward, human);
        let plan_seconds = started.elapsed().as_secs_f64();
        let (next, events) = step_world(&self.map, &self.state, human, &robot, &reward).map_err(|e| {
            ApiError::new(
                StatusCode::INTERNAL_SERVER_ERROR,
                "agent_error",
                format!("agent chose an illegal action: {e}"),
            )
        })?;
        self.record.push(
            StepRecord { human, robot, events: events.clone(), plan_seconds, theta: None, diagnostics: None },
            &next,
        );
        self.state = next;
        self.last = Some((robot, human));
        Ok(TurnResponse { robot_action: robot, events, snapshot: self.snapshot(), done: self.state.done })
    }
}

async fn list_maps(State(app): State<AppState>) -> Json<Vec<MapInfo>> {
    Json(
        app.0
            .maps
            .iter()
            .map(|m| MapInfo { id: m.id.clone(), size: m.map.size(), start: m.map.start(), goal: m.map.goal() })
            .collect(),
    )
}

async fn create_session(
    State(app): State<AppState>,
    req: Result<Json<CreateSession>, JsonRejection>,
) -> Result<(StatusCode, Json<Snapshot>), ApiError> {
    let Json(req) = req.map_err(bad_request)?;
    let named =
        app.0.maps.iter().find(|m| m.id == req.map).ok_or_else(|| {
            ApiError::new(StatusCode::BAD_REQUEST, "unknown_map", format!("unknown map `{}`", req.map))
        })?;
    let unknown_agent =
        |e: crate::agent::UnknownAgent| ApiError::new(StatusCode::BAD_REQUEST, "unknown_agent", e.to_string());
    let spec = match req.agent {
        AgentRef::Label(s) => s.parse::<AgentSpec>().map_err(unknown_agent)?,
        AgentRef::Spec(s) => {
            s.validate().map_err(unknown_agent)?;
            s
        }
    };
    let seed = req.seed.unwrap_or_else(rand::random);
    let agent = spec.build(crate::harness::agent_seed(seed)).map_err(unknown_agent)?;
    let mut params = EpisodeParams::benchmark(named.map.size());
    params.detection_budget = Some(req.detection_budget);
    if let Some(m) = req.max_steps {
        params.reward.max_steps = m;
    }
    let mut record = EpisodeRecord::begin(&named.id, &named.map, &spec, LIVE_HUMAN_ID, seed, params);
    record.map = None;
    let id = Uuid::new_v4();
    let session = Session {
        id,
        map_id: named.id.clone(),
        map: named.map.clone(),
        agent,
        state: WorldState::initial(&named.map, params.detection_budget),
        params,
        record,
        last: None,
        created_at: SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs()),
    };
    let snapshot = session.snapshot();
    app.0.sessions.lock().expect("session registry").insert(id, Arc::new(tokio::sync::Mutex::new(session)));
    tracing::info!(%id, map = %snapshot.map_id, agent = %snapshot.agent, seed, "session created");
    Ok((StatusCode::CREATED, Json(snapshot)))
}

async fn get_session(State(app): State<AppState>, Path(id): Path<String>) -> Result<Json<Snapshot>, ApiError> {
    let session = app.session(&id)?;
    let guard = session.lock().await;
    Ok(Json(guard.snapshot()))
}

async fn export_log(State(app): State<AppState>, Path(id): Path<String>) -> Result<Json<EpisodeRecord>, ApiError> {
    let session = app.session(&id)?;
    let guard = session.lock().await;
    Ok(Json(guard.record.clone()))
}

async fn submit_action(
    State(app): State<AppState>,
    Path(id): Path<String>,
    req: Result<Json<SubmitAction>, JsonRejection>,
) -> Result<Json<TurnResponse>, ApiError> {
    let session = app.session(&id)?;
    let Json(req) = req.map_err(bad_request)?;
    let mut guard = session
        .try_lock_owned()
        .map_err(|_| ApiError::new(StatusCode::CONFLICT, "conflict", "another action is being processed"))?;
    let log_dir = app.0.log_dir.clone();
    tokio::task::spawn_blocking(move || {
        let turn = guard.submit(req.action)?;
        if turn.done {
            if let Some(dir) = log_dir {
                if let Err(e) = append_log(&dir, &guard.record) {
                    tracing::warn!(id = %guard.id, "could not write session log: {e}");
                }
            }
        }
        Ok(Json(turn))
    })
    .await
    .map_err(|e| ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, "internal", e.to_string()))?
}

fn append_log(dir: &std::path::Path, record: &EpisodeRecord) -> std::io::Result<()> {
    std::fs::create_dir_all(dir)?;
    let mut f = OpenOptions::new().create(true).append(true).open(dir.join("sessions.jsonl"))?;
    let mut line = serde_json::to_vec(record)?;
    line.push(b'\n');
    f.write_all(&line)
}

/// Bind address for `port` on all interfaces.
pub fn any_addr(port: u16) -> SocketAddr {
    SocketAddr::from(([0, 0, 0, 0], port))
}
