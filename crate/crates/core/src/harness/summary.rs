use std::collections::BTreeMap;
use std::io::Write;

use serde::{Deserialize, Serialize};

use super::episode::EpisodeRecord;

/// Aggregate over all completed episodes sharing an agent, map size and budget.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub agent: String,
    pub map_size: usize,
    /// Simulations per move, for search agents.
    pub n_sims: Option<u32>,
    pub episodes: usize,
    pub mean_score: f64,
    /// Sample standard deviation; 0 when there is a single episode.
    pub std_score: f64,
    pub single_episode: bool,
    pub mean_move_seconds: f64,
    pub goal_rate: f64,
    pub mean_falls: f64,
}

/// Mean and sample standard deviation. `None` for an empty slice.
pub fn mean_std(xs: &[f64]) -> Option<(f64, f64)> {
    if xs.is_empty() {
        return None;
    }
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() == 1 {
        return Some((mean, 0.0));
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    Some((mean, var.sqrt()))
}

/// Group completed records by (agent id, map size, n_sims). Failed records
/// are skipped. The result does not depend on input order.
pub fn summarize(records: &[EpisodeRecord]) -> Vec<SummaryRow> {
    let mut groups: BTreeMap<(String, usize, Option<u32>), Vec<&EpisodeRecord>> = BTreeMap::new();
    for r in records.iter().filter(|r| r.is_completed()) {
        let n_sims = r.agent.is_search().then_some(r.agent.n_sims);
        groups.entry((r.agent.id.clone(), r.map_size, n_sims)).or_default().push(r);
    }
    groups
        .into_iter()
        .map(|((agent, map_size, n_sims), mut rs)| {
            rs.sort_by_key(|r| r.key());
            let scores: Vec<f64> = rs.iter().map(|r| r.score as f64).collect();
            let (mean_score, std_score) = mean_std(&scores).expect("groups are non-empty");
            let moves: usize = rs.iter().map(|r| r.trace.len()).sum();
            let move_time: f64 = rs.iter().flat_map(|r| r.trace.iter().map(|s| s.plan_seconds)).sum();
            let n = rs.len() as f64;
            SummaryRow {
                agent,
                map_size,
                n_sims,
                episodes: rs.len(),
                mean_score,
                std_score,
                single_episode: rs.len() == 1,
                mean_move_seconds: if moves == 0 { 0.0 } else { move_time / moves as f64 },
                goal_rate: rs.iter().filter(|r| r.goal_reached).count() as f64 / n,
                mean_falls: rs.iter().map(|r| r.falls as f64).sum::<f64>() / n,
            }
        })
        .collect()
}

pub fn write_summary_csv<W: Write>(rows: &[SummaryRow], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sample_std() {
        assert_eq!(mean_std(&[42.0]), Some((42.0, 0.0)));
        let (m, s) = mean_std(&[40.0, 50.0]).unwrap();
        assert_eq!(m, 45.0);
        assert!((s - 7.0710678).abs() < 1e-6);
        assert_eq!(mean_std(&[]), None);
    }
}
