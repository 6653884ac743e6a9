//! Costs of the form `J_i(s) = self_i(s_i) + Σ_{j≠i} pair_ij(s_i, s_j)` with
//! symmetric pair terms.
//!
//! This structure is what makes pairwise decomposition meaningful (a pair
//! game simply drops the absent players' terms) and what gives the game an
//! exact potential.

use crate::error::{Error, Result};
use crate::game::{CostFn, GameSpec};

pub trait PairDecomposed: Sync {
    fn num_players(&self) -> usize;

    fn self_cost(&self, player: usize, strategy: usize) -> f64;

    /// Interaction cost between `i` playing `si` and `j` playing `sj`. Must
    /// equal `pair_cost(j, sj, i, si)`.
    fn pair_cost(&self, i: usize, si: usize, j: usize, sj: usize) -> f64;
}

impl<T: PairDecomposed + ?Sized> PairDecomposed for &T {
    fn num_players(&self) -> usize {
        (**self).num_players()
    }
    fn self_cost(&self, player: usize, strategy: usize) -> f64 {
        (**self).self_cost(player, strategy)
    }
    fn pair_cost(&self, i: usize, si: usize, j: usize, sj: usize) -> f64 {
        (**self).pair_cost(i, si, j, sj)
    }
}

/// A function whose change under any unilateral deviation equals the
/// deviator's change in cost.
pub trait Potential {
    fn potential(&self, profile: &[usize]) -> f64;
}

/// `self_i + Σ_{j≠i} pair_ij`, summed in ascending `j`.
pub fn decomposed_cost<D: PairDecomposed + ?Sized>(d: &D, profile: &[usize], player: usize) -> f64 {
    let si = profile[player];
    let mut total = d.self_cost(player, si);
    for (j, &sj) in profile.iter().enumerate() {
        if j != player {
            total += d.pair_cost(player, si, j, sj);
        }
    }
    total
}

/// `Σ_i self_i + Σ_{i<j} pair_ij`: each interaction counted once.
pub fn decomposed_potential<D: PairDecomposed + ?Sized>(d: &D, profile: &[usize]) -> f64 {
    let mut total = 0.0;
    for (i, &si) in profile.iter().enumerate() {
        total += d.self_cost(i, si);
        for (j, &sj) in profile.iter().enumerate().skip(i + 1) {
            total += d.pair_cost(i, si, j, sj);
        }
    }
    total
}

/// Explicit self and pair tables.
#[derive(Debug, Clone, PartialEq)]
pub struct PairTableCost {
    counts: Vec<usize>,
    self_costs: Vec<Vec<f64>>,
    // Upper triangle only: pairs[i][j - i - 1] is the n_i x n_j table for i < j.
    pairs: Vec<Vec<Vec<f64>>>,
}

impl PairTableCost {
    /// Builds the tables from closures; `pair` is only called with `i < j`.
    pub fn from_fn(
        counts: Vec<usize>,
        mut self_cost: impl FnMut(usize, usize) -> f64,
        mut pair: impl FnMut(usize, usize, usize, usize) -> f64,
    ) -> Self {
        let n = counts.len();
        let self_costs = (0..n)
            .map(|i| (0..counts[i]).map(|s| self_cost(i, s)).collect())
            .collect();
        let pairs = (0..n)
            .map(|i| {
                ((i + 1)..n)
                    .map(|j| {
                        let mut t = Vec::with_capacity(counts[i] * counts[j]);
                        for si in 0..counts[i] {
                            for sj in 0..counts[j] {
                                t.push(pair(i, si, j, sj));
                            }
                        }
                        t
                    })
                    .collect()
            })
            .collect();
        Self { counts, self_costs, pairs }
    }
}

impl PairDecomposed for PairTableCost {
    fn num_players(&self) -> usize {
        self.counts.len()
    }

    fn self_cost(&self, player: usize, strategy: usize) -> f64 {
        self.self_costs[player][strategy]
    }

    fn pair_cost(&self, i: usize, si: usize, j: usize, sj: usize) -> f64 {
        if i < j {
            self.pairs[i][j - i - 1][si * self.counts[j] + sj]
        } else {
            self.pairs[j][i - j - 1][sj * self.counts[i] + si]
        }
    }
}

impl CostFn for PairTableCost {
    fn cost(&self, profile: &[usize], player: usize) -> f64 {
        decomposed_cost(self, profile, player)
    }
}

impl Potential for PairTableCost {
    fn potential(&self, profile: &[usize]) -> f64 {
        decomposed_potential(self, profile)
    }
}

/// The game restricted to a subset of players; terms involving absent
/// players are dropped. Sub-player `k` is parent player `players[k]`.
#[derive(Debug, Clone)]
pub struct PairSubgame<'a, D: ?Sized> {
    parent: &'a D,
    players: Vec<usize>,
}

impl<'a, D: PairDecomposed + ?Sized> PairSubgame<'a, D> {
    pub fn players(&self) -> &[usize] {
        &self.players
    }
}

impl<D: PairDecomposed + ?Sized> PairDecomposed for PairSubgame<'_, D> {
    fn num_players(&self) -> usize {
        self.players.len()
    }
    fn self_cost(&self, player: usize, strategy: usize) -> f64 {
        self.parent.self_cost(self.players[player], strategy)
    }
    fn pair_cost(&self, i: usize, si: usize, j: usize, sj: usize) -> f64 {
        self.parent.pair_cost(self.players[i], si, self.players[j], sj)
    }
}

impl<D: PairDecomposed + ?Sized> CostFn for PairSubgame<'_, D> {
    fn cost(&self, profile: &[usize], player: usize) -> f64 {
        decomposed_cost(self, profile, player)
    }
}

impl<D: PairDecomposed + ?Sized> Potential for PairSubgame<'_, D> {
    fn potential(&self, profile: &[usize]) -> f64 {
        decomposed_potential(self, profile)
    }
}

impl<C: CostFn + PairDecomposed> GameSpec<C> {
    /// The game among `players` only (kept in the given order), with the
    /// same strategy sets, tie tolerance and cap.
    pub fn subgame(&self, players: &[usize]) -> Result<GameSpec<PairSubgame<'_, C>>> {
        let mut seen = vec![false; self.num_players()];
        for &p in players {
            self.check_player(p)?;
            if std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidConfig(format!("player {p} listed twice in subgame")));
            }
        }
        let sets = players.iter().map(|&p| self.strategies(p).to_vec()).collect();
        let sub = PairSubgame { parent: self.cost_fn(), players: players.to_vec() };
        Ok(GameSpec::new(sets, sub)?
            .with_tie_tolerance(self.tie_tolerance())
            .with_profile_cap(self.profile_cap()))
    }
}
