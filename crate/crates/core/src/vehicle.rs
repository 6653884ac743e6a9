//! Longitudinal vehicle model: a discrete double integrator per agent, an
//! axis-aligned mapping from travel distance to the plane, and rollout of
//! strategy profiles.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{Action, StrategyProfile};

/// Default sampling time, s.
pub const DEFAULT_DT: f64 = 0.5;

pub type Position = [f64; 2];

/// Distance travelled along the agent's own axis and its speed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LongitudinalState {
    /// m; zero at the intersection centre, negative while approaching.
    pub z: f64,
    /// m/s, never negative.
    pub v: f64,
}

impl LongitudinalState {
    pub fn new(z: f64, v: f64) -> Self {
        Self { z, v }
    }
}

/// `z' = z + dt v`, `v' = max(0, v + dt u)`.
pub fn step(state: LongitudinalState, u: Action, dt: f64) -> LongitudinalState {
    LongitudinalState {
        z: state.z + dt * state.v,
        v: (state.v + dt * u.0).max(0.0),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Heading {
    PosX,
    NegX,
    PosY,
    NegY,
}

impl Heading {
    pub fn unit(self) -> [f64; 2] {
        match self {
            Heading::PosX => [1.0, 0.0],
            Heading::NegX => [-1.0, 0.0],
            Heading::PosY => [0.0, 1.0],
            Heading::NegY => [0.0, -1.0],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AgentGeometry {
    pub heading: Heading,
    pub lane_offset: Position,
    /// Travel coordinate of the intersection centre.
    pub stop_line: f64,
}

impl AgentGeometry {
    /// Right-hand-traffic approach through an intersection centred at the
    /// origin, with lanes `lane_offset` metres right of the centreline.
    pub fn approach(heading: Heading, lane_offset: f64) -> Self {
        let [hx, hy] = heading.unit();
        // Right of travel direction (hx, hy) is (hy, -hx).
        Self {
            heading,
            lane_offset: [hy * lane_offset, -hx * lane_offset],
            stop_line: 0.0,
        }
    }

    /// Remaining distance to the intersection centre; negative once past it.
    pub fn distance_to_center(&self, state: &LongitudinalState) -> f64 {
        self.stop_line - state.z
    }
}

/// `lane_offset + heading * z`.
pub fn position_2d(geom: &AgentGeometry, state: &LongitudinalState) -> Position {
    let [hx, hy] = geom.heading.unit();
    [geom.lane_offset[0] + hx * state.z, geom.lane_offset[1] + hy * state.z]
}

pub fn distance(a: Position, b: Position) -> f64 {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WorldState {
    pub agents: Vec<LongitudinalState>,
    pub epoch: u64,
    pub dt: f64,
}

impl WorldState {
    pub fn new(agents: Vec<LongitudinalState>, dt: f64) -> Result<Self> {
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(Error::InvalidConfig(format!("dt must be positive, got {dt}")));
        }
        Ok(Self { agents, epoch: 0, dt })
    }

    /// Applies one action per agent.
    pub fn advance(&self, actions: &[Action]) -> WorldState {
        debug_assert_eq!(actions.len(), self.agents.len());
        WorldState {
            agents: self
                .agents
                .iter()
                .zip(actions)
                .map(|(&s, &u)| step(s, u, self.dt))
                .collect(),
            epoch: self.epoch + 1,
            dt: self.dt,
        }
    }
}

/// Horizon length shared by every strategy of the profile.
pub fn profile_horizon(profile: &StrategyProfile) -> Result<u32> {
    let t = profile
        .0
        .first()
        .map(|s| s.steps())
        .ok_or_else(|| Error::HorizonMismatch("empty profile".into()))?;
    if let Some((i, s)) = profile.0.iter().enumerate().find(|(_, s)| s.steps() != t) {
        return Err(Error::HorizonMismatch(format!(
            "player {i} strategy spans {} steps, player 0 spans {t}",
            s.steps()
        )));
    }
    Ok(t)
}

/// The T+1 world states visited when every agent follows its strategy.
pub fn rollout(world: &WorldState, profile: &StrategyProfile) -> Result<Vec<WorldState>> {
    if profile.len() != world.agents.len() {
        return Err(Error::HorizonMismatch(format!(
            "profile has {} strategies for {} agents",
            profile.len(),
            world.agents.len()
        )));
    }
    let horizon = profile_horizon(profile)?;
    let mut traj = Vec::with_capacity(horizon as usize + 1);
    traj.push(world.clone());
    let mut actions = vec![Action(0.0); profile.len()];
    for k in 0..horizon {
        for (a, s) in actions.iter_mut().zip(&profile.0) {
            *a = s.action_at(k);
        }
        let next = traj[traj.len() - 1].advance(&actions);
        traj.push(next);
    }
    Ok(traj)
}
