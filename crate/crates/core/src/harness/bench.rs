use std::fs;
use std::io::{BufWriter, Write};
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;

use super::episode::{run_episode, EpisodeParams, EpisodeRecord, RecordOptions};
use super::summary::{summarize, write_summary_csv, SummaryRow};
use super::{ExperimentConfig, HarnessError, NamedMap};
use crate::agent::AgentSpec;
use crate::humans::ProfileSpec;

/// A grid cell of the experiment that did not complete.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FailedCell {
    pub map_id: String,
    pub agent: String,
    pub human_id: String,
    pub seed: u64,
    pub error: String,
}

#[derive(Debug, Clone)]
pub struct BenchResult {
    /// Sorted by (map, agent, human, seed).
    pub records: Vec<EpisodeRecord>,
    pub summary: Vec<SummaryRow>,
    pub failures: Vec<FailedCell>,
}

impl BenchResult {
    pub fn is_complete(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Worker count: `MIP_THREADS` if set to a positive number, else all cores.
pub fn worker_count() -> usize {
    std::env::var("MIP_THREADS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

/// Episode parameters for `map` under `config`.
pub fn episode_params(config: &ExperimentConfig, size: usize) -> EpisodeParams {
    let mut p = EpisodeParams::benchmark(size);
    if let Some(m) = config.max_steps {
        p.reward.max_steps = m;
    }
    p.detection_budget = config.detection_budget;
    p
}

/// Every map × agent × human × seed cell, in parallel on at most
/// [`worker_count`] threads.
pub fn run_benchmark(maps: &[NamedMap], config: &ExperimentConfig) -> Result<BenchResult, HarnessError> {
    config.check()?;
    let mut cells: Vec<(&NamedMap, &AgentSpec, &ProfileSpec, u64)> = Vec::new();
    for m in maps {
        for a in &config.agents {
            for h in &config.humans {
                for &s in &config.seeds {
                    cells.push((m, a, h, s));
                }
            }
        }
    }
    let options = RecordOptions { diagnostics: config.diagnostics };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(worker_count())
        .build()
        .map_err(|e| HarnessError::Config(e.to_string()))?;
    let mut records: Vec<EpisodeRecord> = pool.install(|| {
        cells
            .par_iter()
            .map(|(m, a, h, s)| run_episode(&m.id, &m.map, a, h, *s, &episode_params(config, m.map.size()), options))
            .collect()
    });
    records.sort_by_key(|r| r.key());
    let failures = records
        .iter()
        .filter_map(|r| match &r.status {
            super::EpisodeStatus::Failed { error } => Some(FailedCell {
                map_id: r.map_id.clone(),
                agent: r.agent.label(),
                human_id: r.human_id.clone(),
                seed: r.seed,
                error: error.clone(),
            }),
            _ => None,
        })
        .collect();
    let summary = summarize(&records);
    Ok(BenchResult { records, summary, failures })
}

/// Write `records.jsonl`, `summary.csv` and, if needed, `failures.json`.
pub fn write_outputs(result: &BenchResult, dir: &Path) -> Result<(), HarnessError> {
    fs::create_dir_all(dir)?;
    let mut w = BufWriter::new(fs::File::create(dir.join("records.jsonl"))?);
    for r in &result.records {
        serde_json::to_writer(&mut w, r)?;
        w.write_all(b"\n")?;
    }
    w.flush()?;
    write_summary_csv(&result.summary, fs::File::create(dir.join("summary.csv"))?)?;
    if !result.failures.is_empty() {
        fs::write(dir.join("failures.json"), serde_json::to_vec_pretty(&result.failures)?)?;
    }
    Ok(())
}

/// Read records written by [`write_outputs`] or exported by the service. A
/// file holding one pretty-printed record is accepted too.
pub fn read_records(path: &Path) -> Result<Vec<EpisodeRecord>, HarnessError> {
    let text = fs::read_to_string(path)?;
    if let Ok(one) = serde_json::from_str::<EpisodeRecord>(&text) {
        return Ok(vec![one]);
    }
    text.lines().filter(|l| !l.trim().is_empty()).map(|l| serde_json::from_str(l).map_err(HarnessError::from)).collect()
}
