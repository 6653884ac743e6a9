use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::costs::RolloutGame;
use crate::error::Result;
use crate::game::{two_segment_strategies, Action, EquilibriumResult, Strategy};
use crate::nash::{combine_pairwise, nash_brd, nash_potential};
use crate::stackelberg::{
    stackelberg_2p, stackelberg_hierarchy, stackelberg_nash_followers, stackelberg_pairwise,
    Hierarchy, StackelbergMode,
};
use crate::vehicle::{distance, position_2d, AgentGeometry, WorldState};

use super::{behavior_action, generate_scenario, GameKind, ScenarioConfig, Setting};

const EGO: usize = 0;

/// Solves the configured game from `world` with the ego as player 0.
pub fn decide(
    cfg: &ScenarioConfig,
    world: &WorldState,
    geoms: &[AgentGeometry],
    hierarchy: &Hierarchy,
    strategy_sets: &[Vec<Strategy>],
) -> Result<EquilibriumResult> {
    let game = RolloutGame::new(world, geoms, strategy_sets, &cfg.cost)?.into_game(strategy_sets.to_vec())?;
    let mode = match cfg.game {
        GameKind::StackelbergWeak => StackelbergMode::Weak,
        _ => StackelbergMode::Strong,
    };
    match (cfg.game, cfg.setting) {
        (GameKind::NashBrd, Setting::Pairwise) => combine_pairwise(&game, EGO, |g, _| nash_brd(g, &cfg.brd)),
        (GameKind::NashBrd, _) => nash_brd(&game, &cfg.brd),
        (GameKind::NashPotential, Setting::Pairwise) => combine_pairwise(&game, EGO, |g, _| nash_potential(g)),
        (GameKind::NashPotential, _) => nash_potential(&game),
        (GameKind::StackelbergNashFollowers, Setting::Pairwise) => {
            combine_pairwise(&game, EGO, |g, ego_pos| stackelberg_nash_followers(g, ego_pos, &cfg.brd))
        }
        (GameKind::StackelbergNashFollowers, _) => stackelberg_nash_followers(&game, EGO, &cfg.brd),
        (_, Setting::Pairwise) => stackelberg_pairwise(&game, EGO, mode),
        (_, _) if game.num_players() == 2 => stackelberg_2p(&game, EGO, mode),
        (_, _) => stackelberg_hierarchy(&game, hierarchy, mode),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EpochLog {
    pub epoch: usize,
    /// State at the start of the epoch.
    pub state: WorldState,
    /// First action of every player's strategy in the ego's solution.
    pub planned: Vec<Action>,
    pub committed: Vec<Action>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioResult {
    pub index: u64,
    pub crashed: bool,
    /// Smallest ego-to-target distance over the run, m.
    pub min_pairwise_distance: f64,
    pub avg_ego_speed: f64,
    /// Wall-clock seconds per ego decision.
    pub decision_times: Vec<f64>,
    /// Ego strategy index chosen at each epoch.
    pub ego_strategies: Vec<usize>,
    /// Epochs whose solution had a follower tie that strong and weak
    /// selection would resolve differently.
    pub contested_epochs: Vec<usize>,
    pub nonconverged_epochs: usize,
    pub log: Option<Vec<EpochLog>>,
}

impl ScenarioResult {
    pub fn mean_decision_time(&self) -> f64 {
        mean(&self.decision_times)
    }

    /// Copy with timings cleared, for determinism comparisons.
    pub fn without_timing(&self) -> Self {
        Self { decision_times: Vec::new(), ..self.clone() }
    }
}

fn mean(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        0.0
    } else {
        xs.iter().sum::<f64>() / xs.len() as f64
    }
}

fn ego_min_distance(world: &WorldState, geoms: &[AgentGeometry]) -> f64 {
    let ego = position_2d(&geoms[EGO], &world.agents[EGO]);
    world
        .agents
        .iter()
        .zip(geoms)
        .skip(1)
        .map(|(s, g)| distance(ego, position_2d(g, s)))
        .fold(f64::INFINITY, f64::min)
}

/// Runs one closed-loop scenario: each epoch the ego solves its game, plays
/// the first action of its strategy, targets act by their behaviour, and the
/// world advances one step.
pub fn run_scenario(cfg: &ScenarioConfig, index: u64) -> Result<ScenarioResult> {
    let scenario = generate_scenario(cfg, index)?;
    let geoms = &scenario.geoms;
    let set = two_segment_strategies(&cfg.actions, cfg.cost.horizon_steps)?;
    let sets = vec![set; cfg.n_players];

    let mut world = scenario.world.clone();
    let mut min_distance = ego_min_distance(&world, geoms);
    let mut speed_sum = 0.0;
    let mut decision_times = Vec::with_capacity(cfg.epochs);
    let mut ego_strategies = Vec::with_capacity(cfg.epochs);
    let mut contested_epochs = Vec::new();
    let mut nonconverged_epochs = 0;
    let mut log = cfg.record_log.then(Vec::new);

    for epoch in 0..cfg.epochs {
        speed_sum += world.agents[EGO].v;

        let start = Instant::now();
        let solved = decide(cfg, &world, geoms, &scenario.hierarchy, &sets)?;
        decision_times.push(start.elapsed().as_secs_f64());

        if solved.contested_ties > 0 {
            contested_epochs.push(epoch);
        }
        nonconverged_epochs += usize::from(!solved.converged);
        ego_strategies.push(solved.indices[EGO]);

        let ego_action = solved.profile.get(EGO).first_action();
        let mut committed = vec![ego_action];
        for target in 1..cfg.n_players {
            committed.push(behavior_action(cfg, target, &world, geoms, Some(&solved.profile), ego_action)?);
        }
        if let Some(log) = log.as_mut() {
            log.push(EpochLog {
                epoch,
                state: world.clone(),
                planned: solved.profile.0.iter().map(Strategy::first_action).collect(),
                committed: committed.clone(),
            });
        }

        world = world.advance(&committed);
        min_distance = min_distance.min(ego_min_distance(&world, geoms));
    }

    Ok(ScenarioResult {
        index,
        crashed: min_distance < cfg.crash_distance,
        min_pairwise_distance: min_distance,
        avg_ego_speed: speed_sum / cfg.epochs as f64,
        decision_times,
        ego_strategies,
        contested_epochs,
        nonconverged_epochs,
        log,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryStats {
    pub scenario_count: usize,
    pub crash_count: usize,
    pub crashes_per_100: f64,
    pub mean_ego_speed: f64,
    /// Averaged over every ego decision of every scenario.
    pub mean_decision_time: f64,
    pub decision_count: usize,
    pub contested_epochs: usize,
    pub nonconverged_epochs: usize,
}

impl SummaryStats {
    pub fn from_results(results: &[ScenarioResult]) -> Self {
        let n = results.len();
        let crash_count = results.iter().filter(|r| r.crashed).count();
        let times: Vec<f64> = results.iter().flat_map(|r| r.decision_times.iter().copied()).collect();
        let speeds: Vec<f64> = results.iter().map(|r| r.avg_ego_speed).collect();
        Self {
            scenario_count: n,
            crash_count,
            crashes_per_100: if n == 0 { 0.0 } else { crash_count as f64 * 100.0 / n as f64 },
            mean_ego_speed: mean(&speeds),
            mean_decision_time: mean(&times),
            decision_count: times.len(),
            contested_epochs: results.iter().map(|r| r.contested_epochs.len()).sum(),
            nonconverged_epochs: results.iter().map(|r| r.nonconverged_epochs).sum(),
        }
    }
}

/// Runs scenarios `0..count` one after another.
pub fn run_batch(cfg: &ScenarioConfig, count: u64) -> Result<Vec<ScenarioResult>> {
    (0..count).map(|i| run_scenario(cfg, i)).collect()
}

/// Runs scenarios `0..count` across the rayon pool; results come back in
/// index order. Decision times are noisier than with [`run_batch`].
pub fn run_batch_parallel(cfg: &ScenarioConfig, count: u64) -> Result<Vec<ScenarioResult>> {
    (0..count).into_par_iter().map(|i| run_scenario(cfg, i)).collect()
}
