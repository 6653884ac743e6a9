//! Finite-game representation shared by every solver.
//!
//! Solvers work on profiles of strategy *indices* (`&[usize]`, one entry per
//! player); [`StrategyProfile`] is the structural form handed back to callers.
//! Best responses are always returned as full tie sets so that downstream
//! solvers (notably strong vs. weak Stackelberg) can pick their own
//! tie-breaking rule.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default enumeration cap on the product strategy space.
pub const DEFAULT_PROFILE_CAP: u128 = 10_000_000;

/// Acceleration actions available to every player by default, m/s².
pub const DEFAULT_ACTIONS: [f64; 5] = [-2.0, -1.0, 0.0, 1.0, 2.0];

/// One-step control input: a signed acceleration in m/s².
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct Action(pub f64);

impl Action {
    pub fn accel(self) -> f64 {
        self.0
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A constant action held for `steps` ticks.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    pub action: Action,
    pub steps: u32,
}

/// A player's action sequence over the horizon, stored as piecewise-constant
/// segments.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Strategy {
    segments: Vec<Segment>,
}

impl Strategy {
    pub fn new(segments: Vec<Segment>) -> Result<Self> {
        if segments.is_empty() {
            return Err(Error::InvalidStrategy("no segments".into()));
        }
        if let Some(s) = segments.iter().find(|s| s.steps == 0) {
            return Err(Error::InvalidStrategy(format!(
                "segment with action {} has zero steps",
                s.action
            )));
        }
        if let Some(s) = segments.iter().find(|s| !s.action.0.is_finite()) {
            return Err(Error::InvalidStrategy(format!("non-finite action {}", s.action)));
        }
        Ok(Self { segments })
    }

    /// A single action held for the whole horizon.
    pub fn constant(accel: f64, steps: u32) -> Result<Self> {
        Self::new(vec![Segment { action: Action(accel), steps }])
    }

    /// Two actions, each held for half of the horizon. An odd horizon gives
    /// the extra tick to the second half.
    pub fn two_segment(first: f64, second: f64, horizon: u32) -> Result<Self> {
        if horizon < 2 {
            return Err(Error::InvalidStrategy(format!(
                "two-segment strategy needs a horizon of at least 2 steps, got {horizon}"
            )));
        }
        let head = horizon / 2;
        Self::new(vec![
            Segment { action: Action(first), steps: head },
            Segment { action: Action(second), steps: horizon - head },
        ])
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    /// Total number of ticks covered.
    pub fn steps(&self) -> u32 {
        self.segments.iter().map(|s| s.steps).sum()
    }

    pub fn first_action(&self) -> Action {
        self.segments[0].action
    }

    /// Action applied at tick `k`; ticks past the end repeat the last action.
    pub fn action_at(&self, k: u32) -> Action {
        let mut acc = 0;
        for seg in &self.segments {
            acc += seg.steps;
            if k < acc {
                return seg.action;
            }
        }
        self.segments[self.segments.len() - 1].action
    }

    /// Per-tick expansion of the segments.
    pub fn actions(&self) -> impl Iterator<Item = Action> + '_ {
        self.segments
            .iter()
            .flat_map(|s| std::iter::repeat_n(s.action, s.steps as usize))
    }

    pub fn is_all_zero(&self) -> bool {
        self.segments.iter().all(|s| s.action.0 == 0.0)
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, s) in self.segments.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", s.action)?;
        }
        write!(f, "]")
    }
}

/// The lexicographic set of two-segment strategies over `actions`: for the
/// default five actions this is 25 strategies, index `5 * i_first + i_second`.
pub fn two_segment_strategies(actions: &[f64], horizon: u32) -> Result<Vec<Strategy>> {
    let mut out = Vec::with_capacity(actions.len() * actions.len());
    for &a in actions {
        for &b in actions {
            out.push(Strategy::two_segment(a, b, horizon)?);
        }
    }
    Ok(out)
}

/// One strategy per player.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StrategyProfile(pub Vec<Strategy>);

impl StrategyProfile {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, player: usize) -> &Strategy {
        &self.0[player]
    }
}

impl fmt::Display for StrategyProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, "}}")
    }
}

/// Maps a profile of strategy indices to one player's cost.
///
/// Implementations carry whatever evaluation context they need (the world
/// state for rollout-backed games) and must be deterministic.
pub trait CostFn: Sync {
    fn cost(&self, profile: &[usize], player: usize) -> f64;
}

impl<T: CostFn + ?Sized> CostFn for &T {
    fn cost(&self, profile: &[usize], player: usize) -> f64 {
        (**self).cost(profile, player)
    }
}

/// Dense cost tables for an N-player game, indexed lexicographically by
/// profile (player 0 most significant).
#[derive(Debug, Clone, PartialEq)]
pub struct TabularCost {
    dims: Vec<usize>,
    costs: Vec<Vec<f64>>,
}

impl TabularCost {
    pub fn from_fn(dims: Vec<usize>, mut f: impl FnMut(&[usize], usize) -> f64) -> Self {
        let n = dims.len();
        let total: usize = dims.iter().product();
        let mut costs = vec![Vec::with_capacity(total); n];
        let mut profile = vec![0; n];
        for _ in 0..total {
            for (p, table) in costs.iter_mut().enumerate() {
                table.push(f(&profile, p));
            }
            advance(&mut profile, &dims);
        }
        Self { dims, costs }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    fn flat(&self, profile: &[usize]) -> usize {
        profile
            .iter()
            .zip(&self.dims)
            .fold(0, |acc, (&s, &d)| acc * d + s)
    }
}

impl CostFn for TabularCost {
    fn cost(&self, profile: &[usize], player: usize) -> f64 {
        self.costs[player][self.flat(profile)]
    }
}

/// Odometer step in lexicographic order; returns false after wrapping.
fn advance(profile: &mut [usize], dims: &[usize]) -> bool {
    for p in (0..profile.len()).rev() {
        profile[p] += 1;
        if profile[p] < dims[p] {
            return true;
        }
        profile[p] = 0;
    }
    false
}

/// A finite game: per-player strategy sets and a cost evaluator.
#[derive(Debug, Clone)]
pub struct GameSpec<C> {
    strategy_sets: Vec<Vec<Strategy>>,
    cost: C,
    tie_tolerance: f64,
    profile_cap: u128,
}

impl<C: CostFn> GameSpec<C> {
    pub fn new(strategy_sets: Vec<Vec<Strategy>>, cost: C) -> Result<Self> {
        if strategy_sets.is_empty() {
            return Err(Error::PlayerCount { expected: ">= 1", actual: 0 });
        }
        if let Some(p) = strategy_sets.iter().position(|s| s.is_empty()) {
            return Err(Error::EmptyStrategySet(p));
        }
        Ok(Self {
            strategy_sets,
            cost,
            tie_tolerance: 0.0,
            profile_cap: DEFAULT_PROFILE_CAP,
        })
    }

    /// Costs within `tol` of the minimum count as ties. Defaults to 0.
    pub fn with_tie_tolerance(mut self, tol: f64) -> Self {
        self.tie_tolerance = tol.max(0.0);
        self
    }

    pub fn with_profile_cap(mut self, cap: u128) -> Self {
        self.profile_cap = cap;
        self
    }

    pub fn num_players(&self) -> usize {
        self.strategy_sets.len()
    }

    pub fn strategy_count(&self, player: usize) -> usize {
        self.strategy_sets[player].len()
    }

    pub fn strategies(&self, player: usize) -> &[Strategy] {
        &self.strategy_sets[player]
    }

    pub fn strategy_sets(&self) -> &[Vec<Strategy>] {
        &self.strategy_sets
    }

    pub fn cost_fn(&self) -> &C {
        &self.cost
    }

    pub fn tie_tolerance(&self) -> f64 {
        self.tie_tolerance
    }

    pub fn profile_cap(&self) -> u128 {
        self.profile_cap
    }

    pub fn cost(&self, profile: &[usize], player: usize) -> f64 {
        self.cost.cost(profile, player)
    }

    pub fn costs(&self, profile: &[usize]) -> Vec<f64> {
        (0..self.num_players()).map(|p| self.cost(profile, p)).collect()
    }

    /// `a` is within the tie tolerance of `b` or better.
    pub(crate) fn at_most(&self, a: f64, b: f64) -> bool {
        a <= b + self.tie_tolerance
    }

    pub fn profile_of(&self, indices: &[usize]) -> StrategyProfile {
        StrategyProfile(
            indices
                .iter()
                .enumerate()
                .map(|(p, &s)| self.strategy_sets[p][s].clone())
                .collect(),
        )
    }

    pub fn index_of(&self, player: usize, strategy: &Strategy) -> Option<usize> {
        self.strategy_sets[player].iter().position(|s| s == strategy)
    }

    /// Structural profile to indices; fails if a strategy is not in its
    /// player's declared set.
    pub fn indices_of(&self, profile: &StrategyProfile) -> Result<Vec<usize>> {
        if profile.len() != self.num_players() {
            return Err(Error::InvalidProfile(format!(
                "profile has {} strategies for a {}-player game",
                profile.len(),
                self.num_players()
            )));
        }
        profile
            .0
            .iter()
            .enumerate()
            .map(|(p, s)| {
                self.index_of(p, s).ok_or_else(|| {
                    Error::InvalidProfile(format!("strategy {s} is not in player {p}'s set"))
                })
            })
            .collect()
    }

    pub fn check_profile(&self, profile: &[usize]) -> Result<()> {
        if profile.len() != self.num_players() {
            return Err(Error::InvalidProfile(format!(
                "profile has {} entries for a {}-player game",
                profile.len(),
                self.num_players()
            )));
        }
        for (p, &s) in profile.iter().enumerate() {
            if s >= self.strategy_count(p) {
                return Err(Error::InvalidProfile(format!(
                    "strategy index {s} out of range for player {p} ({} strategies)",
                    self.strategy_count(p)
                )));
            }
        }
        Ok(())
    }

    pub fn check_player(&self, player: usize) -> Result<()> {
        if player >= self.num_players() {
            return Err(Error::InvalidPlayer { index: player, players: self.num_players() });
        }
        Ok(())
    }

    /// |S_1| x ... x |S_N|.
    pub fn profile_count(&self) -> u128 {
        self.strategy_sets.iter().map(|s| s.len() as u128).product()
    }

    pub fn check_enumerable(&self) -> Result<u128> {
        let size = self.profile_count();
        if size > self.profile_cap {
            return Err(Error::ProfileSpaceTooLarge { size, cap: self.profile_cap });
        }
        Ok(size)
    }

    /// Index of the all-zero-acceleration strategy for `player`, if present.
    pub fn zero_strategy(&self, player: usize) -> Option<usize> {
        self.strategy_sets[player].iter().position(Strategy::is_all_zero)
    }
}

/// Solver output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquilibriumResult {
    pub profile: StrategyProfile,
    pub indices: Vec<usize>,
    pub costs: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
    /// Per player, the strategies that were equally optimal at the solution.
    pub tie_sets: Option<Vec<Vec<usize>>>,
    /// Number of follower reply sets in which strong and weak tie-breaking
    /// would have picked replies with different leader costs.
    pub contested_ties: usize,
}

impl EquilibriumResult {
    pub fn from_indices<C: CostFn>(
        game: &GameSpec<C>,
        indices: Vec<usize>,
        iterations: usize,
        converged: bool,
    ) -> Self {
        Self {
            profile: game.profile_of(&indices),
            costs: game.costs(&indices),
            indices,
            iterations,
            converged,
            tie_sets: None,
            contested_ties: 0,
        }
    }
}

/// All strategies of `player` among `candidates` minimising its cost with the
/// other entries of `profile` held fixed. `profile[player]` is ignored.
pub(crate) fn best_responses_among<C: CostFn>(
    game: &GameSpec<C>,
    player: usize,
    profile: &[usize],
    candidates: &[usize],
) -> Vec<usize> {
    let mut scratch = profile.to_vec();
    let costs: Vec<f64> = candidates
        .iter()
        .map(|&s| {
            scratch[player] = s;
            game.cost(&scratch, player)
        })
        .collect();
    let min = costs.iter().copied().fold(f64::INFINITY, f64::min);
    candidates
        .iter()
        .zip(&costs)
        .filter(|(_, &c)| game.at_most(c, min))
        .map(|(&s, _)| s)
        .collect()
}

/// Every best response of `player` to the other players' strategies in
/// `profile` (the entry at `player` is ignored). Never empty.
pub fn best_response_set<C: CostFn>(
    game: &GameSpec<C>,
    player: usize,
    profile: &[usize],
) -> Result<Vec<usize>> {
    game.check_player(player)?;
    let mut probe = profile.to_vec();
    if probe.len() == game.num_players() {
        probe[player] = 0;
    }
    game.check_profile(&probe)?;
    let all: Vec<usize> = (0..game.strategy_count(player)).collect();
    Ok(best_responses_among(game, player, profile, &all))
}

/// Exhaustive unilateral-deviation check.
pub fn verify_nash<C: CostFn>(game: &GameSpec<C>, profile: &[usize]) -> Result<bool> {
    game.check_profile(profile)?;
    Ok(is_nash_unchecked(game, profile))
}

fn is_nash_unchecked<C: CostFn>(game: &GameSpec<C>, profile: &[usize]) -> bool {
    let mut scratch = profile.to_vec();
    (0..game.num_players()).all(|p| {
        let current = game.cost(profile, p);
        let ok = (0..game.strategy_count(p)).all(|s| {
            scratch[p] = s;
            game.at_most(current, game.cost(&scratch, p))
        });
        scratch[p] = profile[p];
        ok
    })
}

/// A player's best unilateral deviation from a profile.
#[derive(Debug, Clone, PartialEq)]
pub struct Deviation {
    pub player: usize,
    pub current_cost: f64,
    pub best_cost: f64,
    pub best_strategy: usize,
}

impl Deviation {
    /// Cost reduction available by deviating; zero or negative at a best
    /// response.
    pub fn gain(&self) -> f64 {
        self.current_cost - self.best_cost
    }
}

/// Per-player best deviations (lowest index among the minimisers).
pub fn deviation_report<C: CostFn>(game: &GameSpec<C>, profile: &[usize]) -> Result<Vec<Deviation>> {
    game.check_profile(profile)?;
    let mut scratch = profile.to_vec();
    let mut out = Vec::with_capacity(game.num_players());
    for p in 0..game.num_players() {
        let current_cost = game.cost(profile, p);
        let mut best = (profile[p], current_cost);
        for s in 0..game.strategy_count(p) {
            scratch[p] = s;
            let c = game.cost(&scratch, p);
            if c < best.1 {
                best = (s, c);
            }
        }
        scratch[p] = profile[p];
        out.push(Deviation {
            player: p,
            current_cost,
            best_cost: best.1,
            best_strategy: best.0,
        });
    }
    Ok(out)
}

/// Lexicographic iterator over the product strategy space.
#[derive(Debug, Clone)]
pub struct Profiles {
    dims: Vec<usize>,
    next: Option<Vec<usize>>,
}

impl Profiles {
    pub(crate) fn new(dims: Vec<usize>) -> Self {
        let next = if dims.iter().all(|&d| d > 0) {
            Some(vec![0; dims.len()])
        } else {
            None
        };
        Self { dims, next }
    }
}

impl Iterator for Profiles {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.next.take()?;
        let mut following = current.clone();
        if advance(&mut following, &self.dims) {
            self.next = Some(following);
        }
        Some(current)
    }
}

/// Every profile exactly once, player 0 most significant.
pub fn enumerate_profiles<C: CostFn>(game: &GameSpec<C>) -> Result<Profiles> {
    game.check_enumerable()?;
    Ok(Profiles::new(
        (0..game.num_players()).map(|p| game.strategy_count(p)).collect(),
    ))
}

/// Ground truth: all pure Nash equilibria, in enumeration order.
pub fn brute_force_nash<C: CostFn>(game: &GameSpec<C>) -> Result<Vec<Vec<usize>>> {
    game.check_enumerable()?;
    let n = game.num_players();
    let tail_dims: Vec<usize> = (1..n).map(|p| game.strategy_count(p)).collect();
    // Split on player 0's strategy; chunks are concatenated in order.
    let chunks: Vec<Vec<Vec<usize>>> = (0..game.strategy_count(0))
        .into_par_iter()
        .map(|s0| {
            Profiles::new(tail_dims.clone())
                .map(|tail| {
                    let mut profile = Vec::with_capacity(n);
                    profile.push(s0);
                    profile.extend(tail);
                    profile
                })
                .filter(|profile| is_nash_unchecked(game, profile))
                .collect()
        })
        .collect();
    Ok(chunks.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn matrix(costs: &[[(f64, f64); 3]; 3]) -> GameSpec<TabularCost> {
        let actions = [-1.0, 0.0, 1.0];
        let set: Vec<Strategy> = actions
            .iter()
            .map(|&a| Strategy::constant(a, 1).unwrap())
            .collect();
        let table = *costs;
        let cost = TabularCost::from_fn(vec![3, 3], move |p, who| {
            let (l, f) = table[p[0]][p[1]];
            if who == 0 {
                l
            } else {
                f
            }
        });
        GameSpec::new(vec![set.clone(), set], cost).unwrap()
    }

    fn study_table() -> GameSpec<TabularCost> {
        matrix(&[
            [(5.0, 10.0), (5.0, 5.0), (5.0, 0.0)],
            [(0.0, 10.0), (0.0, 5.0), (5.0, 5.0)],
            [(5.0, 10.0), (10.0, 10.0), (15.0, 10.0)],
        ])
    }

    #[test]
    fn follower_tie_sets_match_table_rows() {
        let g = study_table();
        // Leader action 0 is index 1; follower costs 10/5/5.
        assert_eq!(best_response_set(&g, 1, &[1, 0]).unwrap(), vec![1, 2]);
        // Leader action 1: all-tie row.
        assert_eq!(best_response_set(&g, 1, &[2, 0]).unwrap(), vec![0, 1, 2]);
    }

    #[test]
    fn single_strategy_player_is_its_own_best_response() {
        let set = vec![Strategy::constant(0.0, 1).unwrap()];
        let other = vec![
            Strategy::constant(-1.0, 1).unwrap(),
            Strategy::constant(1.0, 1).unwrap(),
        ];
        let cost = TabularCost::from_fn(vec![1, 2], |p, _| p[1] as f64);
        let g = GameSpec::new(vec![set, other], cost).unwrap();
        for s in 0..2 {
            assert_eq!(best_response_set(&g, 0, &[0, s]).unwrap(), vec![0]);
        }
    }

    #[test]
    fn empty_strategy_set_is_rejected() {
        let err = GameSpec::new(vec![vec![]], TabularCost::from_fn(vec![0], |_, _| 0.0)).unwrap_err();
        assert_eq!(err, Error::EmptyStrategySet(0));
    }

    #[test]
    fn verify_nash_on_study_table() {
        let g = study_table();
        assert!(verify_nash(&g, &[1, 1]).unwrap());
        // (1,1) lets the leader drop from 15 to 5.
        assert!(!verify_nash(&g, &[2, 2]).unwrap());
    }

    #[test]
    fn dominated_strategy_is_not_nash() {
        // Player 0 strategy 1 is strictly dominated by strategy 0.
        let cost = TabularCost::from_fn(vec![2, 2], |p, who| {
            if who == 0 {
                p[0] as f64 * 3.0 + p[1] as f64
            } else {
                (p[0] + p[1]) as f64
            }
        });
        let set = vec![
            Strategy::constant(0.0, 1).unwrap(),
            Strategy::constant(1.0, 1).unwrap(),
        ];
        let g = GameSpec::new(vec![set.clone(), set], cost).unwrap();
        assert!(!verify_nash(&g, &[1, 0]).unwrap());
        assert!(verify_nash(&g, &[0, 0]).unwrap());
    }

    #[test]
    fn one_player_argmin_is_nash() {
        let set: Vec<Strategy> = (0..4).map(|a| Strategy::constant(a as f64, 1).unwrap()).collect();
        let cost = TabularCost::from_fn(vec![4], |p, _| [3.0, 1.0, 2.0, 5.0][p[0]]);
        let g = GameSpec::new(vec![set], cost).unwrap();
        assert!(verify_nash(&g, &[1]).unwrap());
        assert!(!verify_nash(&g, &[0]).unwrap());
    }

    #[test]
    fn enumeration_counts() {
        let g = study_table();
        let all: Vec<_> = enumerate_profiles(&g).unwrap().collect();
        assert_eq!(all.len(), 9);
        assert_eq!(all[0], vec![0, 0]);
        assert_eq!(all[1], vec![0, 1]);
        assert_eq!(all[8], vec![2, 2]);

        let set = two_segment_strategies(&DEFAULT_ACTIONS, 8).unwrap();
        assert_eq!(set.len(), 25);
        let g2 = GameSpec::new(vec![set.clone(); 2], TabularCost::from_fn(vec![25, 25], |_, _| 0.0)).unwrap();
        assert_eq!(enumerate_profiles(&g2).unwrap().count(), 625);

        // 25^4 without materialising a 4-D table.
        struct Zero;
        impl CostFn for Zero {
            fn cost(&self, _: &[usize], _: usize) -> f64 {
                0.0
            }
        }
        let g4 = GameSpec::new(vec![set; 4], Zero).unwrap();
        assert_eq!(g4.profile_count(), 390_625);
        assert_eq!(enumerate_profiles(&g4).unwrap().count(), 390_625);
    }

    #[test]
    fn enumeration_cap_is_enforced() {
        let g = study_table().with_profile_cap(8);
        assert!(matches!(
            enumerate_profiles(&g),
            Err(Error::ProfileSpaceTooLarge { size: 9, cap: 8 })
        ));
        assert!(brute_force_nash(&g).is_err());
    }

    #[test]
    fn brute_force_on_study_table() {
        let g = study_table();
        let eq = brute_force_nash(&g).unwrap();
        assert!(eq.contains(&vec![1, 1]));
        for p in &eq {
            assert!(verify_nash(&g, p).unwrap());
        }
    }

    #[test]
    fn dominant_strategies_give_unique_equilibrium() {
        let cost = TabularCost::from_fn(vec![3, 3], |p, who| p[who] as f64 * 2.0 + p[1 - who] as f64 * 0.5);
        let set: Vec<Strategy> = (0..3).map(|a| Strategy::constant(a as f64, 1).unwrap()).collect();
        let g = GameSpec::new(vec![set.clone(), set], cost).unwrap();
        assert_eq!(brute_force_nash(&g).unwrap(), vec![vec![0, 0]]);
    }

    #[test]
    fn matching_pennies_has_no_pure_equilibrium() {
        // Player 0 wants to match, player 1 wants to mismatch.
        let cost = TabularCost::from_fn(vec![2, 2], |p, who| {
            let matched = p[0] == p[1];
            match (who, matched) {
                (0, true) | (1, false) => 0.0,
                _ => 1.0,
            }
        });
        let set = vec![
            Strategy::constant(0.0, 1).unwrap(),
            Strategy::constant(1.0, 1).unwrap(),
        ];
        let g = GameSpec::new(vec![set.clone(), set], cost).unwrap();
        assert!(brute_force_nash(&g).unwrap().is_empty());
    }

    #[test]
    fn tie_tolerance_widens_best_response_set() {
        let set: Vec<Strategy> = (0..3).map(|a| Strategy::constant(a as f64, 1).unwrap()).collect();
        let cost = TabularCost::from_fn(vec![3], |p, _| [1.0, 1.05, 2.0][p[0]]);
        let g = GameSpec::new(vec![set], cost).unwrap();
        assert_eq!(best_response_set(&g, 0, &[0]).unwrap(), vec![0]);
        let g = g.with_tie_tolerance(0.1);
        assert_eq!(best_response_set(&g, 0, &[0]).unwrap(), vec![0, 1]);
    }

    #[test]
    fn strategy_expansion() {
        let s = Strategy::two_segment(1.0, -2.0, 8).unwrap();
        assert_eq!(s.steps(), 8);
        let acts: Vec<f64> = s.actions().map(Action::accel).collect();
        assert_eq!(acts, vec![1.0, 1.0, 1.0, 1.0, -2.0, -2.0, -2.0, -2.0]);
        assert_eq!(s.action_at(3).0, 1.0);
        assert_eq!(s.action_at(4).0, -2.0);
        assert_eq!(s.to_string(), "[1,-2]");
        assert!(Strategy::new(vec![Segment { action: Action(0.0), steps: 0 }]).is_err());
        assert!(Strategy::two_segment(0.0, 0.0, 1).is_err());
    }

    #[test]
    fn default_strategy_ordering() {
        let set = two_segment_strategies(&DEFAULT_ACTIONS, 8).unwrap();
        assert_eq!(set[0].to_string(), "[-2,-2]");
        assert_eq!(set[12].to_string(), "[0,0]");
        assert!(set[12].is_all_zero());
        assert_eq!(set[24].to_string(), "[2,2]");
    }
}
