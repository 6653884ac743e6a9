use std::sync::atomic::{AtomicU64, Ordering};

use crate::decomposed::{decomposed_cost, decomposed_potential, PairDecomposed, Potential};
use crate::error::{Error, Result};
use crate::game::{CostFn, GameSpec, Strategy};
use crate::vehicle::{position_2d, step, AgentGeometry, Position, WorldState};

use super::{stage_pair_penalty, tracking_cost, CostParams};

// Cost bits never equal to this: it is a NaN payload no arithmetic produces.
const UNSET: u64 = u64::MAX;

/// Horizon costs for one decision epoch, split into self and pair terms.
///
/// Dynamics are decoupled, so each player's trajectory depends only on its
/// own strategy. Positions and tracking costs are computed up front; pair
/// interaction sums are filled in on first use and cached, since most
/// solvers touch a small fraction of the strategy pairs.
#[derive(Debug)]
pub struct RolloutGame {
    params: CostParams,
    counts: Vec<usize>,
    // positions[i][s][tau] for tau in 0..T.
    positions: Vec<Vec<Vec<Position>>>,
    tracking: Vec<Vec<f64>>,
    // memo[i][j - i - 1][si * counts[j] + sj] for i < j.
    memo: Vec<Vec<Vec<AtomicU64>>>,
}

impl RolloutGame {
    pub fn new(
        world: &WorldState,
        geoms: &[AgentGeometry],
        strategy_sets: &[Vec<Strategy>],
        params: &CostParams,
    ) -> Result<Self> {
        params.validate()?;
        let n = world.agents.len();
        if geoms.len() != n || strategy_sets.len() != n {
            return Err(Error::InvalidConfig(format!(
                "{n} agents, {} geometries, {} strategy sets",
                geoms.len(),
                strategy_sets.len()
            )));
        }
        let horizon = params.horizon_steps;
        let mut positions = Vec::with_capacity(n);
        let mut tracking = Vec::with_capacity(n);
        for i in 0..n {
            let mut pos_i = Vec::with_capacity(strategy_sets[i].len());
            let mut track_i = Vec::with_capacity(strategy_sets[i].len());
            for s in &strategy_sets[i] {
                if s.steps() != horizon {
                    return Err(Error::HorizonMismatch(format!(
                        "player {i} strategy {s} spans {} steps, cost horizon is {horizon}",
                        s.steps()
                    )));
                }
                let mut state = world.agents[i];
                let mut pts = Vec::with_capacity(horizon as usize);
                let mut track = 0.0;
                for k in 0..horizon {
                    pts.push(position_2d(&geoms[i], &state));
                    track += tracking_cost(state.v, params.desired(i));
                    state = step(state, s.action_at(k), world.dt);
                }
                pos_i.push(pts);
                track_i.push(track);
            }
            positions.push(pos_i);
            tracking.push(track_i);
        }
        let counts: Vec<usize> = strategy_sets.iter().map(Vec::len).collect();
        let memo = (0..n)
            .map(|i| {
                ((i + 1)..n)
                    .map(|j| (0..counts[i] * counts[j]).map(|_| AtomicU64::new(UNSET)).collect())
                    .collect()
            })
            .collect();
        Ok(Self { params: params.clone(), counts, positions, tracking, memo })
    }

    /// Wraps the costs in a game over the same strategy sets.
    pub fn into_game(self, strategy_sets: Vec<Vec<Strategy>>) -> Result<GameSpec<Self>> {
        GameSpec::new(strategy_sets, self)
    }

    pub fn params(&self) -> &CostParams {
        &self.params
    }

    /// Position of player `i` at step `tau` under strategy `s`.
    pub fn position(&self, i: usize, s: usize, tau: usize) -> Position {
        self.positions[i][s][tau]
    }

    fn compute_pair(&self, i: usize, si: usize, j: usize, sj: usize) -> f64 {
        self.positions[i][si]
            .iter()
            .zip(&self.positions[j][sj])
            .map(|(&a, &b)| stage_pair_penalty(a, b, &self.params))
            .sum()
    }
}

impl PairDecomposed for RolloutGame {
    fn num_players(&self) -> usize {
        self.counts.len()
    }

    fn self_cost(&self, player: usize, strategy: usize) -> f64 {
        self.tracking[player][strategy]
    }

    fn pair_cost(&self, i: usize, si: usize, j: usize, sj: usize) -> f64 {
        let (i, si, j, sj) = if i < j { (i, si, j, sj) } else { (j, sj, i, si) };
        let slot = &self.memo[i][j - i - 1][si * self.counts[j] + sj];
        let bits = slot.load(Ordering::Relaxed);
        if bits != UNSET {
            return f64::from_bits(bits);
        }
        let v = self.compute_pair(i, si, j, sj);
        slot.store(v.to_bits(), Ordering::Relaxed);
        v
    }
}

impl CostFn for RolloutGame {
    fn cost(&self, profile: &[usize], player: usize) -> f64 {
        decomposed_cost(self, profile, player)
    }
}

impl Potential for RolloutGame {
    fn potential(&self, profile: &[usize]) -> f64 {
        decomposed_potential(self, profile)
    }
}
