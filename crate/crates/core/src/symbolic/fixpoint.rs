//! The goal-parameterized winning fixed point.

use std::time::Instant;

use super::encode::SymbolicArena;
use crate::bdd::{BddError, BoolFn};
use crate::error::{Error, Result};

/// Result of the fixed point: `w` over `Z ∪ K`, `t` over `Z ∪ Y ∪ K`.
#[derive(Clone, Debug)]
pub struct WinningFormulas {
    pub w0: BoolFn,
    pub w: BoolFn,
    pub t: BoolFn,
    /// `w_0, w_1, …` up to and including the stable iterate.
    pub history: Vec<BoolFn>,
    /// Number of predecessor computations performed.
    pub iterations: usize,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct IterationStats {
    pub iteration: usize,
    pub w_nodes: usize,
    pub t_nodes: usize,
    pub engine_nodes: usize,
}

fn at_iteration(i: usize) -> impl Fn(BddError) -> Error {
    move |e| match e {
        BddError::NodeCeiling { ceiling } => {
            Error::resource(format!("decision diagram nodes at iteration {i}"), ceiling as u64)
        }
        other => Error::Bdd(other),
    }
}

/// `w_0 = ∧_i (¬k_i ∨ f_i)`.
pub fn initial_winning(a: &mut SymbolicArena) -> Result<BoolFn> {
    let mut w0 = a.engine.tt();
    for i in 0..a.num_goals() {
        let nk = a.engine.literal(a.k[i], false)?;
        let clause = a.engine.or(nk, a.finals[i])?;
        w0 = a.engine.and(w0, clause)?;
    }
    Ok(w0)
}

/// `Π|S_i| · 2^n`, saturating.
pub fn iteration_bound(a: &SymbolicArena) -> u128 {
    let states = a
        .components()
        .iter()
        .fold(1u128, |acc, d| acc.saturating_mul(d.num_states() as u128));
    states.saturating_mul(1u128 << a.num_goals())
}

/// Runs `t_{i+1} = t_i ∨ (¬w_i ∧ ∀X. w_i[Z := η])`, `w_{i+1} = ∃Y. t_{i+1}`
/// from `t_0 = w_0 = start` until `w` stops changing.
pub fn fixpoint_from(
    a: &mut SymbolicArena,
    start: BoolFn,
    deadline: Option<Instant>,
    mut observe: impl FnMut(IterationStats),
) -> Result<WinningFormulas> {
    let bound = iteration_bound(a);
    let (x, y) = (a.x.clone(), a.y.clone());
    let mut w = start;
    let mut t = start;
    let mut history = vec![w];
    let mut iterations = 0usize;
    loop {
        if deadline.is_some_and(|d| Instant::now() >= d) {
            return Err(Error::Timeout);
        }
        iterations += 1;
        if iterations as u128 > bound {
            return Err(Error::Invariant(format!(
                "symbolic fixed point exceeded {bound} iterations"
            )));
        }
        let e = &mut a.engine;
        let err = at_iteration(iterations);
        let next = e.vector_compose(w, &a.eta).map_err(&err)?;
        let forced = e.forall(next, &x).map_err(&err)?;
        let nw = e.not(w).map_err(&err)?;
        let fresh = e.and(nw, forced).map_err(&err)?;
        t = e.or(t, fresh).map_err(&err)?;
        let w_next = e.exists(t, &y).map_err(&err)?;
        observe(IterationStats {
            iteration: iterations,
            w_nodes: e.node_count(w_next),
            t_nodes: e.node_count(t),
            engine_nodes: e.stats().nodes,
        });
        if w_next == w {
            break;
        }
        w = w_next;
        history.push(w);
    }
    Ok(WinningFormulas {
        w0: start,
        w,
        t,
        history,
        iterations,
    })
}

/// The multi-property fixed point starting from [`initial_winning`].
pub fn symbolic_fixpoint(
    a: &mut SymbolicArena,
    deadline: Option<Instant>,
) -> Result<WinningFormulas> {
    let w0 = initial_winning(a)?;
    fixpoint_from(a, w0, deadline, |_| {})
}

/// Single-objective fixed point for the conjunction of the components
/// selected by `goals`, with no goal variables involved.
pub fn conjunction_fixpoint(
    a: &mut SymbolicArena,
    goals: &[usize],
    deadline: Option<Instant>,
) -> Result<WinningFormulas> {
    let finals: Vec<BoolFn> = goals.iter().map(|&i| a.finals[i]).collect();
    let w0 = a.engine.and_all(finals)?;
    fixpoint_from(a, w0, deadline, |_| {})
}
