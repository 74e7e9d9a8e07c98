//! Exact decision procedures for off-equilibrium play in subgame-perfect
//! equilibria of finitely repeated two-player games.
#![allow(clippy::needless_range_loop)]

pub mod cli;
pub mod decide;
pub mod document;
pub mod ensemble;
pub mod error;
pub mod game;
pub mod games;
pub mod linalg;
pub mod lp;
pub mod machine;
pub mod nash;
pub mod rational;
pub mod report;
pub mod verify;
pub mod witness;

pub use decide::{classify_all, decide, DeltaLabel, Evidence, Verdict};
pub use error::{Error, Result};
pub use game::{MixedStrategy, Player, Profile, Regime, StageGame};
pub use machine::StrategyMachine;
pub use rational::Rational;
