//! Receding-horizon intersection crossing: scenario generation, target
//! behaviours, the closed-loop epoch loop and batch metrics.

mod behavior;
mod report;
mod run;
mod scenario;

pub use behavior::{behavior_action, tracking_action};
pub use report::{read_csv, write_csv, BatchSummary, ScenarioRow, CSV_HEADER};
pub use run::{
    decide, run_batch, run_batch_parallel, run_scenario, EpochLog, ScenarioResult, SummaryStats,
};
pub use scenario::{generate_scenario, Scenario};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::costs::CostParams;
use crate::error::{Error, Result};
use crate::game::DEFAULT_ACTIONS;
use crate::nash::BrdConfig;
use crate::vehicle::Heading;

macro_rules! named_enum {
    ($(#[$m:meta])* $name:ident { $($variant:ident => $s:literal),+ $(,)? }) => {
        $(#[$m])*
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
        pub enum $name {
            $(#[serde(rename = $s)] $variant),+
        }

        impl $name {
            pub const ALL: &'static [$name] = &[$($name::$variant),+];

            pub fn as_str(self) -> &'static str {
                match self {
                    $($name::$variant => $s),+
                }
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.as_str())
            }
        }

        impl FromStr for $name {
            type Err = Error;

            fn from_str(s: &str) -> Result<Self> {
                match s.trim().to_ascii_lowercase().as_str() {
                    $($s => Ok($name::$variant),)+
                    other => Err(Error::InvalidConfig(format!(
                        concat!("unknown ", stringify!($name), " {:?}; expected one of {}"),
                        other,
                        [$($s),+].join(", ")
                    ))),
                }
            }
        }
    };
}

named_enum!(
    /// How target vehicles choose their actions.
    BehaviorKind {
        Ideal => "ideal",
        SimpleRules => "simple",
        ConstantSpeed => "constant",
    }
);

named_enum!(
    GameKind {
        NashBrd => "nbr",
        NashPotential => "npf",
        StackelbergStrong => "sse",
        StackelbergWeak => "wse",
        StackelbergNashFollowers => "snf",
    }
);

named_enum!(
    Setting {
        Multiplayer => "multiplayer",
        Pairwise => "pairwise",
        Hierarchy => "hierarchy",
    }
);

/// What a constant-speed target holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstantSpeed {
    /// Gets to its desired speed and keeps it, ignoring everyone else.
    #[default]
    Desired,
    /// Keeps its initial speed.
    Current,
}

impl GameKind {
    pub fn is_stackelberg(self) -> bool {
        !matches!(self, GameKind::NashBrd | GameKind::NashPotential)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioConfig {
    pub n_players: usize,
    pub game: GameKind,
    pub setting: Setting,
    pub behavior: BehaviorKind,
    #[serde(default)]
    pub constant_speed: ConstantSpeed,
    /// Crash distance, m.
    pub crash_distance: f64,
    pub epochs: usize,
    pub seed: u64,
    /// Ego distance to the intersection centre at the start, m.
    pub ego_start_distance: f64,
    /// Targets' start distances are uniform on this interval, m.
    pub target_distance_range: (f64, f64),
    pub initial_speed: f64,
    /// Lane offset right of each road's centreline, m.
    pub lane_offset: f64,
    /// Approach direction of each target; the ego always travels along +y.
    /// Empty selects the default layout for `n_players`.
    #[serde(default)]
    pub target_headings: Vec<Heading>,
    pub actions: Vec<f64>,
    pub cost: CostParams,
    pub brd: BrdConfig,
    /// Keep per-epoch states and actions in each result.
    #[serde(default)]
    pub record_log: bool,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            n_players: 2,
            game: GameKind::NashBrd,
            setting: Setting::Multiplayer,
            behavior: BehaviorKind::Ideal,
            constant_speed: ConstantSpeed::Desired,
            crash_distance: 5.0,
            epochs: 50,
            seed: 0,
            ego_start_distance: 40.0,
            target_distance_range: (42.0, 70.0),
            initial_speed: 4.0,
            lane_offset: 1.5,
            target_headings: Vec::new(),
            actions: DEFAULT_ACTIONS.to_vec(),
            cost: CostParams::default(),
            brd: BrdConfig::default(),
            record_log: false,
        }
    }
}

impl ScenarioConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidConfig(m));
        if !matches!(self.n_players, 2 | 4) {
            return bad(format!("n_players must be 2 or 4, got {}", self.n_players));
        }
        if self.setting == Setting::Hierarchy
            && !matches!(self.game, GameKind::StackelbergStrong | GameKind::StackelbergWeak)
        {
            return bad(format!("setting hierarchy requires sse or wse, got {}", self.game));
        }
        if self.game == GameKind::StackelbergNashFollowers && self.setting == Setting::Hierarchy {
            return bad("snf has no hierarchy setting".into());
        }
        if self.crash_distance.is_nan() || self.crash_distance <= 0.0 {
            return bad(format!("crash distance must be positive, got {}", self.crash_distance));
        }
        if self.epochs == 0 {
            return bad("epochs must be at least 1".into());
        }
        let (lo, hi) = self.target_distance_range;
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return bad(format!("degenerate target distance range ({lo}, {hi})"));
        }
        if lo <= self.ego_start_distance {
            return bad(format!(
                "targets must start further out than the ego: range min {lo} <= ego start {}",
                self.ego_start_distance
            ));
        }
        if self.initial_speed.is_nan() || self.initial_speed < 0.0 {
            return bad(format!("initial speed must be non-negative, got {}", self.initial_speed));
        }
        if self.actions.is_empty() {
            return bad("action set is empty".into());
        }
        if !self.target_headings.is_empty() && self.target_headings.len() != self.n_players - 1 {
            return bad(format!(
                "{} target headings for {} targets",
                self.target_headings.len(),
                self.n_players - 1
            ));
        }
        if self.target_headings.iter().any(|h| matches!(h, Heading::PosY | Heading::NegY)) {
            return bad("targets must travel along the x axis".into());
        }
        self.cost.validate()?;
        self.brd.validate()
    }

    /// Target approach directions. By default every target arrives from
    /// the west, in the lane the ego crosses first.
    pub fn headings(&self) -> Vec<Heading> {
        if !self.target_headings.is_empty() {
            return self.target_headings.clone();
        }
        vec![Heading::PosX; self.n_players - 1]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for g in GameKind::ALL {
            assert_eq!(g.as_str().parse::<GameKind>().unwrap(), *g);
        }
        for s in Setting::ALL {
            assert_eq!(s.to_string().parse::<Setting>().unwrap(), *s);
        }
        assert_eq!("Constant".parse::<BehaviorKind>().unwrap(), BehaviorKind::ConstantSpeed);
        assert!("fast".parse::<BehaviorKind>().is_err());
        assert_eq!(serde_json::to_string(&GameKind::StackelbergWeak).unwrap(), "\"wse\"");
    }

    #[test]
    fn config_validation() {
        assert!(ScenarioConfig::default().validate().is_ok());
        let bad = [
            ScenarioConfig { n_players: 3, ..Default::default() },
            ScenarioConfig { setting: Setting::Hierarchy, ..Default::default() },
            ScenarioConfig { crash_distance: 0.0, ..Default::default() },
            ScenarioConfig { epochs: 0, ..Default::default() },
            ScenarioConfig { target_distance_range: (50.0, 50.0), ..Default::default() },
            ScenarioConfig { target_distance_range: (30.0, 60.0), ..Default::default() },
            ScenarioConfig { target_headings: vec![Heading::NegY], ..Default::default() },
        ];
        for cfg in bad {
            assert!(matches!(cfg.validate(), Err(Error::InvalidConfig(_))), "{cfg:?}");
        }
        let ok = ScenarioConfig {
            game: GameKind::StackelbergWeak,
            setting: Setting::Hierarchy,
            n_players: 4,
            ..Default::default()
        };
        assert!(ok.validate().is_ok());
        assert_eq!(ok.headings(), vec![Heading::PosX; 3]);
    }
}
