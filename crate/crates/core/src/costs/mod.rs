//! Intersection-crossing costs and the discriminating matrix game.
//!
//! Each player's stage cost is speed tracking plus a saturated box penalty
//! for every other player within the safe distances; the horizon cost sums
//! stage costs over the first T states of a rollout.

mod matrix;
mod rollout_game;

pub use matrix::{matrix_cost_from_formula, MatrixGame, STUDY_ACTIONS};
pub use rollout_game::RolloutGame;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::StrategyProfile;
use crate::vehicle::{self, position_2d, AgentGeometry, Position, WorldState};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CostParams {
    /// Desired speed, m/s, for every player without an override.
    pub desired_speed: f64,
    /// Per-player desired speeds; players past the end use `desired_speed`.
    #[serde(default)]
    pub desired_speeds: Vec<f64>,
    /// Safe distance along x, m.
    pub d_xc: f64,
    /// Safe distance along y, m.
    pub d_yc: f64,
    /// tanh sharpness, 1/m².
    pub beta: f64,
    pub horizon_steps: u32,
    pub dt: f64,
}

impl Default for CostParams {
    fn default() -> Self {
        Self {
            desired_speed: 10.0,
            desired_speeds: Vec::new(),
            d_xc: 6.0,
            d_yc: 6.0,
            beta: 1000.0,
            horizon_steps: 8,
            dt: vehicle::DEFAULT_DT,
        }
    }
}

impl CostParams {
    pub fn desired(&self, player: usize) -> f64 {
        self.desired_speeds.get(player).copied().unwrap_or(self.desired_speed)
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(Error::InvalidConfig(format!("{name} must be positive, got {v}")))
            }
        };
        positive("desired_speed", self.desired_speed)?;
        for &v in &self.desired_speeds {
            positive("desired_speeds", v)?;
        }
        positive("d_xc", self.d_xc)?;
        positive("d_yc", self.d_yc)?;
        positive("beta", self.beta)?;
        positive("dt", self.dt)?;
        if self.horizon_steps == 0 {
            return Err(Error::InvalidConfig("horizon_steps must be at least 1".into()));
        }
        Ok(())
    }
}

/// Box penalty between two positions, in [0, 4]. Each factor is close to 2
/// inside the safe distance on its axis and close to 0 outside it.
pub fn stage_pair_penalty(pi: Position, pj: Position, params: &CostParams) -> f64 {
    let dx = pi[0] - pj[0];
    let dy = pi[1] - pj[1];
    let fx = (params.beta * (params.d_xc * params.d_xc - dx * dx)).tanh() + 1.0;
    let fy = (params.beta * (params.d_yc * params.d_yc - dy * dy)).tanh() + 1.0;
    fx * fy
}

/// Speed-tracking term `(v - v_d)² / v_d`.
pub fn tracking_cost(v: f64, desired: f64) -> f64 {
    let e = v - desired;
    e * e / desired
}

/// Stage cost of player `i` in `world`.
pub fn stage_cost(i: usize, world: &WorldState, geoms: &[AgentGeometry], params: &CostParams) -> f64 {
    let pi = position_2d(&geoms[i], &world.agents[i]);
    let mut cost = tracking_cost(world.agents[i].v, params.desired(i));
    for (j, (state, geom)) in world.agents.iter().zip(geoms).enumerate() {
        if j != i {
            cost += stage_pair_penalty(pi, position_2d(geom, state), params);
        }
    }
    cost
}

/// Horizon cost of player `i`: stage costs summed over rollout states
/// `0..T`, excluding the final post-horizon state.
pub fn rollout_cost(
    i: usize,
    world: &WorldState,
    profile: &StrategyProfile,
    geoms: &[AgentGeometry],
    params: &CostParams,
) -> Result<f64> {
    if geoms.len() != world.agents.len() {
        return Err(Error::InvalidConfig(format!(
            "{} geometries for {} agents",
            geoms.len(),
            world.agents.len()
        )));
    }
    let horizon = vehicle::profile_horizon(profile)?;
    if horizon != params.horizon_steps {
        return Err(Error::HorizonMismatch(format!(
            "strategies span {horizon} steps, cost horizon is {}",
            params.horizon_steps
        )));
    }
    let traj = vehicle::rollout(world, profile)?;
    Ok(traj[..horizon as usize]
        .iter()
        .map(|w| stage_cost(i, w, geoms, params))
        .sum())
}
