//! Explicit-state solvers over the product arena.
//!
//! These are the reference implementations: every relation is materialized
//! as a table indexed by arena state and goal-set mask.

mod multi;
mod relation;
mod single;
mod strategy;

pub use multi::{pre_mc, pre_mmc, win_m, win_m0, win_m_naive, win_mm, ExplicitOptions};
pub use relation::{
    downward_close, max_op, maximal_sets, sort_lex, MaxRelation, PairSet, WinRelation,
};
pub use single::{pre_c, solve_single, Game, SingleSolution};
pub use strategy::{extract_strategy, oracle_realizable};
