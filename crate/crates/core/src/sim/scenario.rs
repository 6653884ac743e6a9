use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::stackelberg::Hierarchy;
use crate::vehicle::{AgentGeometry, Heading, LongitudinalState, WorldState};

use super::ScenarioConfig;

const MIN_SEPARATION: f64 = 0.5;
const MAX_DRAWS: usize = 10_000;

/// Initial conditions of one seeded scenario. Player 0 is the ego.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub index: u64,
    pub world: WorldState,
    pub geoms: Vec<AgentGeometry>,
    /// Ego first, then targets by ascending start distance.
    pub hierarchy: Hierarchy,
    pub target_distances: Vec<f64>,
}

/// Places the ego at its fixed start and each target at a distance drawn
/// from the configured range, using a random stream keyed by
/// `(cfg.seed, index)`. Draws closer than 0.5 m to an earlier target are
/// repeated.
pub fn generate_scenario(cfg: &ScenarioConfig, index: u64) -> Result<Scenario> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(index);

    let (lo, hi) = cfg.target_distance_range;
    let mut distances: Vec<f64> = Vec::with_capacity(cfg.n_players - 1);
    for _ in 1..cfg.n_players {
        let mut draws = 0;
        let d = loop {
            let d = rng.gen_range(lo..=hi);
            if distances.iter().all(|&e| (e - d).abs() >= MIN_SEPARATION) {
                break d;
            }
            draws += 1;
            if draws == MAX_DRAWS {
                return Err(Error::InvalidConfig(format!(
                    "cannot place {} targets {MIN_SEPARATION} m apart in ({lo}, {hi})",
                    cfg.n_players - 1
                )));
            }
        };
        distances.push(d);
    }

    let mut agents = vec![LongitudinalState::new(-cfg.ego_start_distance, cfg.initial_speed)];
    let mut geoms = vec![AgentGeometry::approach(Heading::PosY, cfg.lane_offset)];
    for (&d, heading) in distances.iter().zip(cfg.headings()) {
        agents.push(LongitudinalState::new(-d, cfg.initial_speed));
        geoms.push(AgentGeometry::approach(heading, cfg.lane_offset));
    }

    let mut targets: Vec<usize> = (1..cfg.n_players).collect();
    targets.sort_by(|&a, &b| distances[a - 1].total_cmp(&distances[b - 1]));
    let mut order = vec![0];
    order.extend(targets);

    Ok(Scenario {
        index,
        world: WorldState::new(agents, cfg.cost.dt)?,
        geoms,
        hierarchy: Hierarchy::new(order)?,
        target_distances: distances,
    })
}
