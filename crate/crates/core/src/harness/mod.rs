//! Batch experiments: agents against simulated humans over maps and seeds.

mod bench;
mod episode;
mod summary;

pub use bench::{episode_params, read_records, run_benchmark, worker_count, write_outputs, BenchResult, FailedCell};
pub use episode::{
    agent_seed, replay, run_episode, EpisodeParams, EpisodeRecord, EpisodeStatus, RecordOptions, ReplayError,
    ReplayReport, StepRecord,
};
pub use summary::{mean_std, summarize, write_summary_csv, SummaryRow};

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::agent::{AgentSpec, UnknownAgent};
use crate::domain::{load_map, GridMap, MapError};
use crate::humans::{default_population, ProfileSpec};
use crate::maps;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("invalid experiment config: {0}")]
    Config(String),
    #[error(transparent)]
    UnknownAgent(#[from] UnknownAgent),
    #[error("map `{id}`: {source:?}")]
    Map { id: String, source: MapError },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

/// A map together with the id it is reported under.
#[derive(Debug, Clone)]
pub struct NamedMap {
    pub id: String,
    pub map: GridMap,
}

/// Contents of a `mip run --config` file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    /// Map files (relative to the config file) or names of shipped maps.
    pub maps: Vec<String>,
    pub agents: Vec<AgentSpec>,
    #[serde(default = "default_population")]
    pub humans: Vec<ProfileSpec>,
    pub seeds: Vec<u64>,
    /// Overrides the per-size benchmark step limit.
    #[serde(default)]
    pub max_steps: Option<u32>,
    /// `None` means unlimited.
    #[serde(default)]
    pub detection_budget: Option<u32>,
    #[serde(default)]
    pub out: Option<PathBuf>,
    #[serde(default)]
    pub diagnostics: bool,
}

impl ExperimentConfig {
    pub fn new(maps: Vec<String>, agents: Vec<AgentSpec>, seeds: Vec<u64>) -> Self {
        ExperimentConfig {
            maps,
            agents,
            humans: default_population(),
            seeds,
            max_steps: None,
            detection_budget: None,
            out: None,
            diagnostics: false,
        }
    }

    pub fn check(&self) -> Result<(), HarnessError> {
        if self.maps.is_empty() || self.agents.is_empty() || self.seeds.is_empty() || self.humans.is_empty() {
            return Err(HarnessError::Config("maps, agents, humans and seeds must be non-empty".into()));
        }
        for a in &self.agents {
            a.validate()?;
        }
        Ok(())
    }

    /// Load every map entry. Paths resolve against `base`; an entry that is not
    /// a file is looked up among the shipped maps.
    pub fn resolve_maps(&self, base: &Path) -> Result<Vec<NamedMap>, HarnessError> {
        self.maps.iter().map(|entry| resolve_map(entry, base)).collect()
    }
}

pub fn resolve_map(entry: &str, base: &Path) -> Result<NamedMap, HarnessError> {
    let path = base.join(entry);
    if path.is_file() {
        let text = std::fs::read_to_string(&path)?;
        let map = load_map(&text).map_err(|source| HarnessError::Map { id: entry.to_string(), source })?;
        return Ok(NamedMap { id: maps::map_id_from_path(&path), map });
    }
    maps::builtin(entry)
        .map(|map| NamedMap { id: entry.to_string(), map })
        .ok_or_else(|| HarnessError::Config(format!("no map file or shipped map named `{entry}`")))
}

/// All `*.fl.json` maps in `dir`, sorted by id.
pub fn load_map_dir(dir: &Path) -> Result<Vec<NamedMap>, HarnessError> {
    let mut out = Vec::new();
    for entry in std::fs::read_dir(dir)? {
        let path = entry?.path();
        if path.to_string_lossy().ends_with(".fl.json") {
            let text = std::fs::read_to_string(&path)?;
            let id = maps::map_id_from_path(&path);
            let map = load_map(&text).map_err(|source| HarnessError::Map { id: id.clone(), source })?;
            out.push(NamedMap { id, map });
        }
    }
    out.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(out)
}
