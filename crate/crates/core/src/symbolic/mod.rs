//! Symbolic multi-property synthesis.
//!
//! Every goal automaton gets a block of Boolean state variables `Z_i` and a
//! goal variable `k_i`. A single fixed point computes `w(Z, K)`, which holds
//! iff the goals set to true in `K` can be jointly enforced from the state
//! encoded by `Z`, together with the move relation `t(Z, Y, K)`.

mod encode;
mod extract;
mod fixpoint;

use std::time::Instant;

pub use encode::{state_bits, SymbolicArena, VarOrder};
pub use extract::{
    maximal_assignments, maximum_assignment, pick_maximum, query_realizable, symbolic_strategy,
    winning_at,
};
pub use fixpoint::{
    conjunction_fixpoint, fixpoint_from, initial_winning, iteration_bound, symbolic_fixpoint,
    IterationStats, WinningFormulas,
};

use crate::bdd::Engine;
use crate::error::Result;
use crate::pipeline::Compiled;

/// Default bound on allocated decision-diagram nodes.
pub const DEFAULT_NODE_CEILING: usize = 1 << 24;

#[derive(Clone, Debug)]
pub struct SymbolicOptions {
    pub order: VarOrder,
    pub node_ceiling: usize,
    pub deadline: Option<Instant>,
}

impl Default for SymbolicOptions {
    fn default() -> Self {
        SymbolicOptions {
            order: VarOrder::Clustered,
            node_ceiling: DEFAULT_NODE_CEILING,
            deadline: None,
        }
    }
}

/// Encodes a compiled instance and runs the fixed point.
pub fn solve(
    compiled: &Compiled,
    opts: &SymbolicOptions,
) -> Result<(SymbolicArena, WinningFormulas)> {
    let engine = Engine::with_ceiling(opts.node_ceiling);
    let mut arena = SymbolicArena::encode(
        compiled.dfas.clone(),
        compiled.alphabet.clone(),
        engine,
        opts.order,
    )?;
    let wf = symbolic_fixpoint(&mut arena, opts.deadline)?;
    Ok((arena, wf))
}
