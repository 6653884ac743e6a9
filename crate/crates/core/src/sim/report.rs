use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::{BehaviorKind, GameKind, ScenarioConfig, ScenarioResult, Setting, SummaryStats};

pub const CSV_HEADER: &str = "scenario_id,seed,n_players,game,setting,behavior,crashed,min_distance_m,avg_ego_speed_mps,mean_decision_time_s";

/// One line of the per-scenario CSV.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioRow {
    pub scenario_id: u64,
    pub seed: u64,
    pub n_players: usize,
    pub game: GameKind,
    pub setting: Setting,
    pub behavior: BehaviorKind,
    pub crashed: bool,
    pub min_distance_m: f64,
    pub avg_ego_speed_mps: f64,
    pub mean_decision_time_s: f64,
}

impl ScenarioRow {
    pub fn new(cfg: &ScenarioConfig, result: &ScenarioResult) -> Self {
        Self {
            scenario_id: result.index,
            seed: cfg.seed,
            n_players: cfg.n_players,
            game: cfg.game,
            setting: cfg.setting,
            behavior: cfg.behavior,
            crashed: result.crashed,
            min_distance_m: result.min_pairwise_distance,
            avg_ego_speed_mps: result.avg_ego_speed,
            mean_decision_time_s: result.mean_decision_time(),
        }
    }
}

/// Writes the header and rows. The header is written even with no rows.
pub fn write_csv<W: Write>(out: W, rows: &[ScenarioRow]) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(CSV_HEADER.split(','))?;
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<R: Read>(input: R) -> Result<Vec<ScenarioRow>> {
    let mut r = csv::Reader::from_reader(input);
    let header = r.headers()?.iter().collect::<Vec<_>>().join(",");
    if header != CSV_HEADER {
        return Err(Error::Parse { line: 1, message: format!("unexpected header {header:?}") });
    }
    r.deserialize().map(|row| row.map_err(Error::from)).collect()
}

/// JSON summary of one batch: the configuration that produced it and the
/// aggregate statistics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BatchSummary {
    pub config: ScenarioConfig,
    pub summary: SummaryStats,
}
