//! Pure-strategy Nash solvers: best-response dynamics, the pairwise
//! decomposition around an ego player, and global potential minimisation.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::decomposed::{PairDecomposed, PairSubgame, Potential};
use crate::error::{Error, Result};
use crate::game::{best_responses_among, CostFn, EquilibriumResult, GameSpec, Strategy};

/// Starting profile for best-response dynamics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum BrdInit {
    /// Each player's all-zero-acceleration strategy, or its first strategy
    /// when the set has none.
    ZeroAcceleration,
    FirstStrategy,
    Profile(Vec<usize>),
}

/// How one strategy is chosen from a best-response set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TieBreak {
    LowestIndex,
    /// Stay put if the current strategy is still a best response.
    KeepCurrent,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BrdConfig {
    pub init: BrdInit,
    pub max_sweeps: usize,
    pub tie_break: TieBreak,
}

impl Default for BrdConfig {
    fn default() -> Self {
        Self {
            init: BrdInit::ZeroAcceleration,
            max_sweeps: 100,
            tie_break: TieBreak::LowestIndex,
        }
    }
}

impl BrdConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_sweeps == 0 {
            return Err(Error::InvalidConfig("max_sweeps must be at least 1".into()));
        }
        Ok(())
    }
}

pub(crate) fn full_domain<C: CostFn>(game: &GameSpec<C>) -> Vec<Vec<usize>> {
    (0..game.num_players())
        .map(|p| (0..game.strategy_count(p)).collect())
        .collect()
}

fn initial_profile<C: CostFn>(
    game: &GameSpec<C>,
    domain: &[Vec<usize>],
    init: &BrdInit,
) -> Result<Vec<usize>> {
    let n = game.num_players();
    let mut profile = Vec::with_capacity(n);
    for (p, allowed) in domain.iter().enumerate() {
        let pick = match init {
            _ if allowed.len() == 1 => allowed[0],
            BrdInit::ZeroAcceleration => game
                .zero_strategy(p)
                .filter(|s| allowed.contains(s))
                .unwrap_or(allowed[0]),
            BrdInit::FirstStrategy => allowed[0],
            BrdInit::Profile(v) => {
                let s = *v.get(p).ok_or_else(|| {
                    Error::InvalidProfile(format!("initial profile has no entry for player {p}"))
                })?;
                if !allowed.contains(&s) {
                    return Err(Error::InvalidProfile(format!(
                        "initial strategy {s} not available to player {p}"
                    )));
                }
                s
            }
        };
        profile.push(pick);
    }
    Ok(profile)
}

/// Best-response dynamics with each player restricted to `domain[p]`.
pub(crate) fn brd_within<C: CostFn>(
    game: &GameSpec<C>,
    domain: &[Vec<usize>],
    cfg: &BrdConfig,
) -> Result<EquilibriumResult> {
    cfg.validate()?;
    let mut profile = initial_profile(game, domain, &cfg.init)?;
    let mut sweeps = 0;
    let converged = loop {
        if sweeps == cfg.max_sweeps {
            break false;
        }
        sweeps += 1;
        let prev = profile.clone();
        for (p, allowed) in domain.iter().enumerate() {
            let br = best_responses_among(game, p, &profile, allowed);
            profile[p] = match cfg.tie_break {
                TieBreak::KeepCurrent if br.contains(&profile[p]) => profile[p],
                _ => br[0],
            };
        }
        if profile == prev {
            break true;
        }
    };
    let tie_sets = converged.then(|| {
        domain
            .iter()
            .enumerate()
            .map(|(p, allowed)| best_responses_among(game, p, &profile, allowed))
            .collect()
    });
    let mut result = EquilibriumResult::from_indices(game, profile, sweeps, converged);
    result.tie_sets = tie_sets;
    Ok(result)
}

/// Sweeps players in index order, replacing each strategy with a tie-broken
/// best response, until a full sweep changes nothing or `max_sweeps` is hit.
/// Non-convergence is reported through `converged`, not as an error.
pub fn nash_brd<C: CostFn>(game: &GameSpec<C>, cfg: &BrdConfig) -> Result<EquilibriumResult> {
    brd_within(game, &full_domain(game), cfg)
}

/// Ordering used by [`most_conservative`]: hardest initial braking first.
fn conservative_order(a: &Strategy, b: &Strategy) -> Ordering {
    let key = |s: &Strategy| {
        let segs = s.segments();
        let first = segs[0].action.0;
        let second = segs.get(1).map_or(first, |g| g.action.0);
        (first, second)
    };
    let (ka, kb) = (key(a), key(b));
    ka.0.total_cmp(&kb.0).then(ka.1.total_cmp(&kb.1))
}

/// Position of the most conservative strategy: smallest first-segment
/// acceleration, then smallest second-segment acceleration, then earliest.
pub fn most_conservative_index(strategies: &[&Strategy]) -> Result<usize> {
    let mut best: Option<usize> = None;
    for (i, s) in strategies.iter().enumerate() {
        match best {
            Some(b) if conservative_order(s, strategies[b]) != Ordering::Less => {}
            _ => best = Some(i),
        }
    }
    best.ok_or(Error::EmptyCandidates)
}

pub fn most_conservative(strategies: &[Strategy]) -> Result<Strategy> {
    let refs: Vec<&Strategy> = strategies.iter().collect();
    let i = most_conservative_index(&refs)?;
    Ok(strategies[i].clone())
}

/// Solves one two-player game per other player (each containing the ego),
/// then gives the ego the most conservative of its per-pair strategies.
/// Other players keep the strategy from their own pair game.
pub(crate) fn combine_pairwise<'g, C, F>(
    game: &'g GameSpec<C>,
    ego: usize,
    mut solve_pair: F,
) -> Result<EquilibriumResult>
where
    C: CostFn + PairDecomposed,
    F: FnMut(&GameSpec<PairSubgame<'g, C>>, usize) -> Result<EquilibriumResult>,
{
    let n = game.num_players();
    if n < 2 {
        return Err(Error::PlayerCount { expected: ">= 2", actual: n });
    }
    game.check_player(ego)?;
    let mut indices = vec![0; n];
    let mut ego_picks = Vec::with_capacity(n - 1);
    let mut iterations = 0;
    let mut converged = true;
    let mut contested = 0;
    for other in (0..n).filter(|&p| p != ego) {
        // Keep index order inside the pair so sweeps match the full game.
        let players = if ego < other { [ego, other] } else { [other, ego] };
        let ego_pos = usize::from(ego > other);
        let sub = game.subgame(&players)?;
        let r = solve_pair(&sub, ego_pos)?;
        iterations += r.iterations;
        converged &= r.converged;
        contested += r.contested_ties;
        ego_picks.push(r.indices[ego_pos]);
        indices[other] = r.indices[1 - ego_pos];
    }
    let refs: Vec<&Strategy> = ego_picks.iter().map(|&s| &game.strategies(ego)[s]).collect();
    indices[ego] = ego_picks[most_conservative_index(&refs)?];
    let mut result = EquilibriumResult::from_indices(game, indices, iterations, converged);
    result.contested_ties = contested;
    Ok(result)
}

pub fn nash_pairwise<C: CostFn + PairDecomposed>(
    game: &GameSpec<C>,
    ego: usize,
    cfg: &BrdConfig,
) -> Result<EquilibriumResult> {
    combine_pairwise(game, ego, |sub, _| nash_brd(sub, cfg))
}

/// Exact potential of a pair-decomposed game: every self term plus every
/// pair term counted once.
pub fn potential_value<C: CostFn + Potential>(game: &GameSpec<C>, profile: &[usize]) -> f64 {
    game.cost_fn().potential(profile)
}

/// Global potential minimiser over the full profile space; ties go to the
/// first profile in enumeration order.
pub fn nash_potential<C: CostFn + Potential>(game: &GameSpec<C>) -> Result<EquilibriumResult> {
    game.check_enumerable()?;
    let dims: Vec<usize> = (0..game.num_players()).map(|p| game.strategy_count(p)).collect();
    let mut best: Option<(f64, Vec<usize>)> = None;
    for profile in crate::game::Profiles::new(dims) {
        let value = potential_value(game, &profile);
        if best.as_ref().is_none_or(|(b, _)| value < *b) {
            best = Some((value, profile));
        }
    }
    let (_, indices) = best.expect("non-empty strategy sets give at least one profile");
    Ok(EquilibriumResult::from_indices(game, indices, 1, true))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposed::PairTableCost;
    use crate::game::{brute_force_nash, verify_nash, TabularCost};

    fn actions(acts: &[f64]) -> Vec<Strategy> {
        acts.iter().map(|&a| Strategy::constant(a, 1).unwrap()).collect()
    }

    fn study_table() -> GameSpec<TabularCost> {
        let t = [
            [(5.0, 10.0), (5.0, 5.0), (5.0, 0.0)],
            [(0.0, 10.0), (0.0, 5.0), (5.0, 5.0)],
            [(5.0, 10.0), (10.0, 10.0), (15.0, 10.0)],
        ];
        let cost = TabularCost::from_fn(vec![3, 3], move |p, who| {
            let (l, f) = t[p[0]][p[1]];
            [l, f][who]
        });
        let set = actions(&[-1.0, 0.0, 1.0]);
        GameSpec::new(vec![set.clone(), set], cost).unwrap()
    }

    #[test]
    fn brd_on_study_table_lands_in_brute_force_set() {
        let g = study_table();
        let r = nash_brd(&g, &BrdConfig::default()).unwrap();
        assert!(r.converged);
        assert!(brute_force_nash(&g).unwrap().contains(&r.indices));
        // Zero init is already (0,0), which is an equilibrium.
        assert_eq!(r.indices, vec![1, 1]);
        assert_eq!(r.iterations, 1);
    }

    #[test]
    fn single_player_takes_two_sweeps() {
        let set = actions(&[-1.0, 0.0, 1.0]);
        let cost = TabularCost::from_fn(vec![3], |p, _| [0.5, 2.0, 1.0][p[0]]);
        let g = GameSpec::new(vec![set], cost).unwrap();
        let r = nash_brd(&g, &BrdConfig::default()).unwrap();
        assert_eq!(r.indices, vec![0]);
        assert_eq!(r.iterations, 2);
        assert!(r.converged);
    }

    #[test]
    fn symmetric_pair_costs_converge() {
        let t = PairTableCost::from_fn(
            vec![4, 4],
            |i, s| ((i + 1) * s) as f64 % 3.0,
            |_, si, _, sj| if si == sj { 4.0 } else { (si + sj) as f64 * 0.25 },
        );
        let set = actions(&[-1.0, 0.0, 1.0, 2.0]);
        let g = GameSpec::new(vec![set.clone(), set], t).unwrap();
        let r = nash_brd(&g, &BrdConfig::default()).unwrap();
        assert!(r.converged);
        assert!(verify_nash(&g, &r.indices).unwrap());
    }

    #[test]
    fn cycling_game_reports_non_convergence() {
        // Matching pennies: BRD cycles forever.
        let cost = TabularCost::from_fn(vec![2, 2], |p, who| {
            let matched = p[0] == p[1];
            if (who == 0) == matched {
                0.0
            } else {
                1.0
            }
        });
        let set = actions(&[0.0, 1.0]);
        let g = GameSpec::new(vec![set.clone(), set], cost).unwrap();
        let cfg = BrdConfig { max_sweeps: 7, ..BrdConfig::default() };
        let r = nash_brd(&g, &cfg).unwrap();
        assert!(!r.converged);
        assert_eq!(r.iterations, 7);
        assert!(r.tie_sets.is_none());
    }

    #[test]
    fn zero_sweeps_is_a_config_error() {
        let cfg = BrdConfig { max_sweeps: 0, ..BrdConfig::default() };
        assert!(nash_brd(&study_table(), &cfg).is_err());
    }

    #[test]
    fn keep_current_tie_break() {
        // Follower indifferent between strategies 1 and 2 against leader 1.
        let g = study_table();
        let cfg = BrdConfig {
            init: BrdInit::Profile(vec![1, 2]),
            tie_break: TieBreak::KeepCurrent,
            ..BrdConfig::default()
        };
        let r = nash_brd(&g, &cfg).unwrap();
        assert_eq!(r.indices, vec![1, 2]);
        let cfg = BrdConfig { tie_break: TieBreak::LowestIndex, ..cfg };
        // Leader drops to the lowest of its tied replies, the follower follows.
        assert_eq!(nash_brd(&g, &cfg).unwrap().indices, vec![0, 2]);
    }

    #[test]
    fn most_conservative_rule() {
        let s = |a, b| Strategy::two_segment(a, b, 8).unwrap();
        assert_eq!(most_conservative(&[s(1.0, 1.0), s(-2.0, 0.0)]).unwrap(), s(-2.0, 0.0));
        assert_eq!(most_conservative(&[s(0.0, 2.0)]).unwrap(), s(0.0, 2.0));
        assert_eq!(most_conservative(&[s(-1.0, 2.0), s(-1.0, -2.0)]).unwrap(), s(-1.0, -2.0));
        assert_eq!(most_conservative(&[]).unwrap_err(), Error::EmptyCandidates);
        let picks = [s(0.0, 0.0), s(-1.0, 1.0), s(-1.0, 1.0)];
        let refs: Vec<&Strategy> = picks.iter().collect();
        assert_eq!(most_conservative_index(&refs).unwrap(), 1);
    }

    /// Three players whose pair games with the ego (player 0) are decoupled:
    /// pair (0,1) pushes the ego to +1, pair (0,2) to -2.
    fn three_player_pairs() -> GameSpec<PairTableCost> {
        let acts = [-2.0, -1.0, 0.0, 1.0, 2.0];
        let target_for = |j: usize| if j == 1 { 3 } else { 0 };
        let t = PairTableCost::from_fn(
            vec![5, 2, 2],
            |_, _| 0.0,
            move |i, si, j, sj| {
                if i != 0 {
                    return 0.0;
                }
                let miss = (si as f64 - target_for(j) as f64).abs();
                miss + sj as f64 * 0.1
            },
        );
        let set = actions(&acts);
        let small = actions(&[0.0, 1.0]);
        GameSpec::new(vec![set, small.clone(), small], t).unwrap()
    }

    #[test]
    fn pairwise_takes_most_conservative_ego_choice() {
        let g = three_player_pairs();
        let r = nash_pairwise(&g, 0, &BrdConfig::default()).unwrap();
        assert_eq!(r.profile.get(0).first_action().0, -2.0);
        assert!(r.converged);
    }

    #[test]
    fn pairwise_with_two_players_matches_full_brd() {
        let t = PairTableCost::from_fn(
            vec![5, 5],
            |i, s| ((s * 7 + i * 3) % 5) as f64,
            |_, si, _, sj| ((si * 3 + sj * 2) % 4) as f64,
        );
        let set = actions(&[-2.0, -1.0, 0.0, 1.0, 2.0]);
        let g = GameSpec::new(vec![set.clone(), set], t).unwrap();
        let cfg = BrdConfig::default();
        let pair = nash_pairwise(&g, 0, &cfg).unwrap();
        let full = nash_brd(&g, &cfg).unwrap();
        assert_eq!(pair.indices, full.indices);
        assert_eq!(pair.costs, full.costs);
        assert_eq!(pair.iterations, full.iterations);
        assert_eq!(pair.converged, full.converged);
    }

    #[test]
    fn pairwise_unanimous_choice() {
        let t = PairTableCost::from_fn(
            vec![3, 2, 2],
            |_, s| (s as f64 - 1.0).abs(),
            |_, _, _, _| 0.0,
        );
        let set = actions(&[-1.0, 0.0, 1.0]);
        let small = actions(&[0.0, 1.0]);
        let g = GameSpec::new(vec![set, small.clone(), small], t).unwrap();
        let r = nash_pairwise(&g, 0, &BrdConfig::default()).unwrap();
        assert_eq!(r.indices[0], 1);
    }

    #[test]
    fn pairwise_needs_two_players() {
        let t = PairTableCost::from_fn(vec![2], |_, s| s as f64, |_, _, _, _| 0.0);
        let g = GameSpec::new(vec![actions(&[0.0, 1.0])], t).unwrap();
        assert!(matches!(
            nash_pairwise(&g, 0, &BrdConfig::default()),
            Err(Error::PlayerCount { .. })
        ));
    }

    #[test]
    fn potential_values() {
        let zero = PairTableCost::from_fn(vec![2, 2], |_, _| 0.0, |_, _, _, _| 0.0);
        let set = actions(&[0.0, 1.0]);
        let g = GameSpec::new(vec![set.clone(), set.clone()], zero).unwrap();
        assert_eq!(potential_value(&g, &[1, 0]), 0.0);

        // J_1 = 1.21 from tracking alone, J_2 = 0, no interaction.
        let t = PairTableCost::from_fn(vec![2, 2], |i, _| if i == 0 { 1.21 } else { 0.0 }, |_, _, _, _| 0.0);
        let g = GameSpec::new(vec![set.clone(), set], t).unwrap();
        assert_eq!(potential_value(&g, &[0, 0]), 1.21);
    }

    #[test]
    fn potential_minimiser_is_unique_argmin() {
        let t = PairTableCost::from_fn(
            vec![3, 3],
            |_, s| s as f64,
            |_, si, _, sj| if si == 0 && sj == 0 { 10.0 } else { 0.0 },
        );
        let set = actions(&[-1.0, 0.0, 1.0]);
        let g = GameSpec::new(vec![set.clone(), set], t).unwrap();
        let r = nash_potential(&g).unwrap();
        // (0,1) and (1,0) both give potential 1; enumeration order picks (0,1).
        assert_eq!(r.indices, vec![0, 1]);
        assert!(r.converged);
        assert!(verify_nash(&g, &r.indices).unwrap());
    }

    #[test]
    fn potential_tie_goes_to_first_in_enumeration() {
        // Both (ego +1, target -1) and (0, 0) reach the same potential; the
        // earlier profile in lexicographic order wins.
        let t = PairTableCost::from_fn(
            vec![3, 3],
            |i, s| match (i, s) {
                (0, 0) => 4.015,
                (0, 1) => 1.21,
                (0, 2) => 0.275,
                (1, 1) => 0.0,
                _ => 0.935,
            },
            |_, si, _, sj| if si == 2 && sj >= 1 { 4.0 } else { 0.0 },
        );
        let set = actions(&[-1.0, 0.0, 1.0]);
        let g = GameSpec::new(vec![set.clone(), set], t).unwrap();
        let p = |a: usize, b: usize| potential_value(&g, &[a, b]);
        assert_eq!(p(1, 1), 1.21);
        assert!((p(2, 0) - 1.21).abs() < 1e-12);
        let r = nash_potential(&g).unwrap();
        let eqs = brute_force_nash(&g).unwrap();
        assert!(eqs.contains(&vec![1, 1]));
        assert!(eqs.contains(&vec![2, 0]));
        // (1,1) precedes (2,0) lexicographically; 0.275 + 0.935 rounds
        // differently from 1.21, so compare against the true minimum.
        let min = (0..3).flat_map(|a| (0..3).map(move |b| (a, b))).map(|(a, b)| p(a, b)).fold(f64::INFINITY, f64::min);
        assert_eq!(potential_value(&g, &r.indices), min);
        assert!(eqs.contains(&r.indices));
    }
}
