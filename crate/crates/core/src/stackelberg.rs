//! Stackelberg solvers.
//!
//! Strong and weak equilibria differ only in how a follower's tied best
//! responses are resolved: strong picks the reply cheapest for the leader,
//! weak the most expensive. Leader-side ties always go to the lowest
//! strategy index.

use serde::{Deserialize, Serialize};

use crate::decomposed::PairDecomposed;
use crate::error::{Error, Result};
use crate::game::{best_responses_among, CostFn, EquilibriumResult, GameSpec};
use crate::nash::{brd_within, combine_pairwise, BrdConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StackelbergMode {
    Strong,
    Weak,
}

impl StackelbergMode {
    /// Whether `candidate` should replace `current` as the anticipated reply,
    /// judged by the leader's cost. Earlier replies win exact ties.
    fn prefers(self, candidate: f64, current: f64) -> bool {
        match self {
            StackelbergMode::Strong => candidate < current,
            StackelbergMode::Weak => candidate > current,
        }
    }
}

/// Leadership order: `order[0]` leads everyone, `order[1]` leads all but
/// the first, and so on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hierarchy {
    order: Vec<usize>,
}

impl Hierarchy {
    pub fn new(order: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; order.len()];
        for &p in &order {
            if p >= order.len() || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidHierarchy(order));
            }
        }
        Ok(Self { order })
    }

    pub fn identity(n: usize) -> Self {
        Self { order: (0..n).collect() }
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }
}

/// Picks the anticipated reply among `replies` by the leader's cost.
/// Returns `(index into replies, leader cost, contested)` where contested
/// means the leader's cost is not constant over the reply set.
fn anticipate(
    mode: StackelbergMode,
    tol: f64,
    leader_costs: impl Iterator<Item = f64>,
) -> (usize, f64, bool) {
    let mut pick = (0, f64::NAN);
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for (i, c) in leader_costs.enumerate() {
        if i == 0 || mode.prefers(c, pick.1) {
            pick = (i, c);
        }
        lo = lo.min(c);
        hi = hi.max(c);
    }
    (pick.0, pick.1, hi - lo > tol)
}

/// Strategies (ascending) whose value is within the tie tolerance of the
/// minimum.
fn minimisers<C: CostFn>(game: &GameSpec<C>, values: &[f64]) -> Vec<usize> {
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    (0..values.len()).filter(|&s| game.at_most(values[s], min)).collect()
}

/// Two-player Stackelberg equilibrium with `leader` committing first.
pub fn stackelberg_2p<C: CostFn>(
    game: &GameSpec<C>,
    leader: usize,
    mode: StackelbergMode,
) -> Result<EquilibriumResult> {
    if game.num_players() != 2 {
        return Err(Error::PlayerCount { expected: "2", actual: game.num_players() });
    }
    game.check_player(leader)?;
    let follower = 1 - leader;
    let follower_all: Vec<usize> = (0..game.strategy_count(follower)).collect();
    let n_leader = game.strategy_count(leader);

    let mut profile = vec![0; 2];
    let mut values = Vec::with_capacity(n_leader);
    let mut replies = Vec::with_capacity(n_leader);
    let mut reply_sets = Vec::with_capacity(n_leader);
    let mut contested = 0;
    for s_l in 0..n_leader {
        profile[leader] = s_l;
        let br = best_responses_among(game, follower, &profile, &follower_all);
        let (pick, value, split) = anticipate(
            mode,
            game.tie_tolerance(),
            br.iter().map(|&s_f| {
                profile[follower] = s_f;
                game.cost(&profile, leader)
            }),
        );
        contested += usize::from(split);
        values.push(value);
        replies.push(br[pick]);
        reply_sets.push(br);
    }

    let leader_ties = minimisers(game, &values);
    let s_l = leader_ties[0];
    let mut indices = vec![0; 2];
    indices[leader] = s_l;
    indices[follower] = replies[s_l];

    let mut tie_sets = vec![Vec::new(); 2];
    tie_sets[leader] = leader_ties;
    tie_sets[follower] = std::mem::take(&mut reply_sets[s_l]);

    let mut result = EquilibriumResult::from_indices(game, indices, 1, true);
    result.tie_sets = Some(tie_sets);
    result.contested_ties = contested;
    Ok(result)
}

/// Every profile satisfying the strong or weak equilibrium definition: each
/// leader strategy with optimal anticipated cost, paired with each follower
/// best response attaining the mode's extreme leader cost.
pub fn stackelberg_2p_all<C: CostFn>(
    game: &GameSpec<C>,
    leader: usize,
    mode: StackelbergMode,
) -> Result<Vec<Vec<usize>>> {
    let best = stackelberg_2p(game, leader, mode)?;
    let follower = 1 - leader;
    let follower_all: Vec<usize> = (0..game.strategy_count(follower)).collect();
    let target = best.costs[leader];
    let mut out = Vec::new();
    let mut profile = vec![0; 2];
    for s_l in 0..game.strategy_count(leader) {
        profile[leader] = s_l;
        let br = best_responses_among(game, follower, &profile, &follower_all);
        let costs: Vec<f64> = br
            .iter()
            .map(|&s_f| {
                profile[follower] = s_f;
                game.cost(&profile, leader)
            })
            .collect();
        let extreme = match mode {
            StackelbergMode::Strong => costs.iter().copied().fold(f64::INFINITY, f64::min),
            StackelbergMode::Weak => costs.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        };
        if !game.at_most(extreme, target) {
            continue;
        }
        for (&s_f, &c) in br.iter().zip(&costs) {
            if (c - extreme).abs() <= game.tie_tolerance() {
                let mut p = vec![0; 2];
                p[leader] = s_l;
                p[follower] = s_f;
                out.push(p);
            }
        }
    }
    Ok(out)
}

/// Checks a two-player profile against the strong or weak definition.
pub fn verify_stackelberg_2p<C: CostFn>(
    game: &GameSpec<C>,
    leader: usize,
    mode: StackelbergMode,
    profile: &[usize],
) -> Result<bool> {
    game.check_profile(profile)?;
    Ok(stackelberg_2p_all(game, leader, mode)?.iter().any(|p| p == profile))
}

struct HierarchySearch<'a, C> {
    game: &'a GameSpec<C>,
    order: &'a [usize],
    mode: StackelbergMode,
    nodes: usize,
    contested: usize,
}

impl<C: CostFn> HierarchySearch<'_, C> {
    /// Reply set of the subgame rooted at hierarchy position `k`, given the
    /// strategies of positions `< k` in `profile`. Each reply lists the
    /// strategies of positions `k..`, and every reply in the set is equally
    /// good for the player at position `k`.
    fn solve(&mut self, k: usize, profile: &mut [usize]) -> Vec<Vec<usize>> {
        self.nodes += 1;
        let player = self.order[k];
        let n = self.game.strategy_count(player);
        if k + 1 == self.order.len() {
            let all: Vec<usize> = (0..n).collect();
            return best_responses_among(self.game, player, profile, &all)
                .into_iter()
                .map(|s| vec![s])
                .collect();
        }
        let below = &self.order[k + 1..];
        let mut values = Vec::with_capacity(n);
        let mut picks = Vec::with_capacity(n);
        for s in 0..n {
            profile[player] = s;
            let mut replies = self.solve(k + 1, profile);
            let game = self.game;
            let (pick, value, split) = anticipate(
                self.mode,
                game.tie_tolerance(),
                replies.iter().map(|r| {
                    for (&p, &rs) in below.iter().zip(r) {
                        profile[p] = rs;
                    }
                    game.cost(profile, player)
                }),
            );
            self.contested += usize::from(split);
            values.push(value);
            let mut chosen = Vec::with_capacity(below.len() + 1);
            chosen.push(s);
            chosen.append(&mut replies[pick]);
            picks.push(chosen);
        }
        minimisers(self.game, &values)
            .into_iter()
            .map(|s| std::mem::take(&mut picks[s]))
            .collect()
    }
}

/// Recursive Stackelberg solution over a full leadership order. Each level
/// anticipates the equilibrium replies of every level below it, resolving a
/// follower's ties by `mode` with respect to its immediate leader.
pub fn stackelberg_hierarchy<C: CostFn>(
    game: &GameSpec<C>,
    hierarchy: &Hierarchy,
    mode: StackelbergMode,
) -> Result<EquilibriumResult> {
    if hierarchy.len() != game.num_players() {
        return Err(Error::InvalidHierarchy(hierarchy.order().to_vec()));
    }
    game.check_enumerable()?;
    let order = hierarchy.order();
    let mut search = HierarchySearch { game, order, mode, nodes: 0, contested: 0 };
    let mut scratch = vec![0; game.num_players()];
    let top = search.solve(0, &mut scratch);

    let mut indices = vec![0; game.num_players()];
    for (&p, &s) in order.iter().zip(&top[0]) {
        indices[p] = s;
    }

    let mut tie_sets: Vec<Vec<usize>> = indices.iter().map(|&s| vec![s]).collect();
    tie_sets[order[0]] = top.iter().map(|r| r[0]).collect();
    if order.len() > 1 {
        // Immediate follower's reply set at the chosen leader strategy.
        let mut probe = indices.clone();
        let (nodes, contested) = (search.nodes, search.contested);
        let replies = search.solve(1, &mut probe);
        tie_sets[order[1]] = replies.iter().map(|r| r[0]).collect();
        search.nodes = nodes;
        search.contested = contested;
    }

    let mut result = EquilibriumResult::from_indices(game, indices, search.nodes, true);
    result.tie_sets = Some(tie_sets);
    result.contested_ties = search.contested;
    Ok(result)
}

/// Two-player Stackelberg games between the ego (as leader) and each other
/// player; the ego plays the most conservative of its per-pair strategies.
pub fn stackelberg_pairwise<C: CostFn + PairDecomposed>(
    game: &GameSpec<C>,
    ego: usize,
    mode: StackelbergMode,
) -> Result<EquilibriumResult> {
    combine_pairwise(game, ego, |sub, ego_pos| stackelberg_2p(sub, ego_pos, mode))
}

/// The leader anticipates that all followers settle on a best-response
/// dynamics equilibrium of the game induced by its commitment.
pub fn stackelberg_nash_followers<C: CostFn>(
    game: &GameSpec<C>,
    leader: usize,
    brd: &BrdConfig,
) -> Result<EquilibriumResult> {
    let n = game.num_players();
    if n < 2 {
        return Err(Error::PlayerCount { expected: ">= 2", actual: n });
    }
    game.check_player(leader)?;
    let mut domain: Vec<Vec<usize>> = (0..n)
        .map(|p| (0..game.strategy_count(p)).collect())
        .collect();
    let mut iterations = 0;
    let mut converged = true;
    let mut best: Option<(f64, EquilibriumResult)> = None;
    for s_l in 0..game.strategy_count(leader) {
        domain[leader] = vec![s_l];
        let reply = brd_within(game, &domain, brd)?;
        iterations += reply.iterations;
        converged &= reply.converged;
        let value = reply.costs[leader];
        if best.as_ref().is_none_or(|(b, _)| !game.at_most(*b, value)) {
            best = Some((value, reply));
        }
    }
    let (_, reply) = best.expect("leader has at least one strategy");
    let mut result = EquilibriumResult::from_indices(game, reply.indices, iterations, converged);
    result.tie_sets = reply.tie_sets;
    Ok(result)
}
