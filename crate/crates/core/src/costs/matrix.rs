use std::fmt::{self, Write as _};

use crate::error::{Error, Result};
use crate::game::{GameSpec, Strategy, TabularCost};

/// Action values of the discriminating leader/follower table.
pub const STUDY_ACTIONS: [f64; 3] = [-1.0, 0.0, 1.0];

/// Leader and follower costs of the discriminating two-player game.
pub fn matrix_cost_from_formula(s_l: f64, s_f: f64) -> Result<(f64, f64)> {
    for a in [s_l, s_f] {
        if !STUDY_ACTIONS.contains(&a) {
            return Err(Error::ActionOutOfDomain(a));
        }
    }
    let shared = f64::max(10.0, (s_l + s_f) * 5.0 + 10.0);
    Ok((shared + 5.0 * s_l.abs() - 10.0, shared - 5.0 * (s_f + 1.0)))
}

/// A two-player game given as cost tables. Player 0 is the leader (rows),
/// player 1 the follower (columns); each action is a one-step strategy.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixGame {
    pub leader_actions: Vec<f64>,
    pub follower_actions: Vec<f64>,
    pub leader_costs: Vec<Vec<f64>>,
    pub follower_costs: Vec<Vec<f64>>,
}

impl MatrixGame {
    pub fn new(
        leader_actions: Vec<f64>,
        follower_actions: Vec<f64>,
        leader_costs: Vec<Vec<f64>>,
        follower_costs: Vec<Vec<f64>>,
    ) -> Result<Self> {
        if leader_actions.is_empty() || follower_actions.is_empty() {
            return Err(Error::InvalidConfig("matrix game needs at least one action per player".into()));
        }
        for table in [&leader_costs, &follower_costs] {
            if table.len() != leader_actions.len()
                || table.iter().any(|row| row.len() != follower_actions.len())
            {
                return Err(Error::InvalidConfig(format!(
                    "cost tables must be {}x{}",
                    leader_actions.len(),
                    follower_actions.len()
                )));
            }
            if table.iter().flatten().any(|c| !c.is_finite()) {
                return Err(Error::InvalidConfig("cost tables must be finite".into()));
            }
        }
        Ok(Self { leader_actions, follower_actions, leader_costs, follower_costs })
    }

    /// The 3x3 table regenerated from [`matrix_cost_from_formula`].
    pub fn study2() -> Self {
        let n = STUDY_ACTIONS.len();
        let mut leader = vec![vec![0.0; n]; n];
        let mut follower = vec![vec![0.0; n]; n];
        for (r, &l) in STUDY_ACTIONS.iter().enumerate() {
            for (c, &f) in STUDY_ACTIONS.iter().enumerate() {
                let (cl, cf) = matrix_cost_from_formula(l, f).expect("study actions are in domain");
                leader[r][c] = cl;
                follower[r][c] = cf;
            }
        }
        Self {
            leader_actions: STUDY_ACTIONS.to_vec(),
            follower_actions: STUDY_ACTIONS.to_vec(),
            leader_costs: leader,
            follower_costs: follower,
        }
    }

    pub fn to_game(&self) -> Result<GameSpec<TabularCost>> {
        let set = |actions: &[f64]| -> Result<Vec<Strategy>> {
            actions.iter().map(|&a| Strategy::constant(a, 1)).collect()
        };
        let dims = vec![self.leader_actions.len(), self.follower_actions.len()];
        let cost = TabularCost::from_fn(dims, |p, player| {
            let table = if player == 0 { &self.leader_costs } else { &self.follower_costs };
            table[p[0]][p[1]]
        });
        GameSpec::new(vec![set(&self.leader_actions)?, set(&self.follower_actions)?], cost)
    }

    /// Parses the text table format: a header row of follower actions
    /// (optionally preceded by a non-numeric label), then one row per leader
    /// action holding the action and `l,f` cells. Blank lines and `#`
    /// comments are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());

        let (hline, header) = lines.next().ok_or(Error::Parse { line: 0, message: "empty input".into() })?;
        let mut tokens: Vec<&str> = header.split_whitespace().collect();
        if tokens.first().is_some_and(|t| t.parse::<f64>().is_err()) {
            tokens.remove(0);
        }
        let follower_actions = tokens
            .iter()
            .map(|t| parse_num(t, hline))
            .collect::<Result<Vec<_>>>()?;
        if follower_actions.is_empty() {
            return Err(Error::Parse { line: hline, message: "header lists no follower actions".into() });
        }

        let mut leader_actions = Vec::new();
        let mut leader_costs = Vec::new();
        let mut follower_costs = Vec::new();
        for (line, row) in lines {
            let mut tokens = row.split_whitespace();
            let action = parse_num(tokens.next().unwrap_or_default(), line)?;
            let cells: Vec<&str> = tokens.collect();
            if cells.len() != follower_actions.len() {
                return Err(Error::Parse {
                    line,
                    message: format!("expected {} cells, found {}", follower_actions.len(), cells.len()),
                });
            }
            let mut lrow = Vec::with_capacity(cells.len());
            let mut frow = Vec::with_capacity(cells.len());
            for cell in cells {
                let (l, f) = cell.split_once(',').ok_or_else(|| Error::Parse {
                    line,
                    message: format!("cell {cell:?} is not of the form l,f"),
                })?;
                lrow.push(parse_num(l, line)?);
                frow.push(parse_num(f, line)?);
            }
            leader_actions.push(action);
            leader_costs.push(lrow);
            follower_costs.push(frow);
        }
        if leader_actions.is_empty() {
            return Err(Error::Parse { line: hline, message: "no leader rows".into() });
        }
        Self::new(leader_actions, follower_actions, leader_costs, follower_costs)
            .map_err(|e| Error::Parse { line: hline, message: e.to_string() })
    }
}

fn parse_num(token: &str, line: usize) -> Result<f64> {
    token
        .trim()
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| Error::Parse { line, message: format!("{token:?} is not a finite number") })
}

impl fmt::Display for MatrixGame {
    /// Writes the text table format accepted by [`MatrixGame::parse`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut header = String::from("L\\F");
        for a in &self.follower_actions {
            write!(header, " {a:>7}")?;
        }
        writeln!(f, "{header}")?;
        for (r, a) in self.leader_actions.iter().enumerate() {
            write!(f, "{a:>3}")?;
            for c in 0..self.follower_actions.len() {
                let cell = format!("{},{}", self.leader_costs[r][c], self.follower_costs[r][c]);
                write!(f, " {cell:>7}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
