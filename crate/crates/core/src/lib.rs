//! Pure-strategy equilibrium solvers for finite games (Nash and Stackelberg
//! families) and a receding-horizon intersection-crossing simulator built on
//! them.

pub mod costs;
pub mod decomposed;
pub mod error;
pub mod game;
pub mod nash;
pub mod sim;
pub mod stackelberg;
pub mod vehicle;

pub use error::{Error, Result};
pub use game::{
    best_response_set, brute_force_nash, deviation_report, enumerate_profiles, verify_nash, Action,
    CostFn, Deviation, EquilibriumResult, GameSpec, Strategy, StrategyProfile, TabularCost,
};
