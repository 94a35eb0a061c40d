//! Reading goal sets and strategies off the winning formulas.

use std::collections::{BTreeMap, HashMap};

use super::encode::SymbolicArena;
use super::fixpoint::WinningFormulas;
use crate::arena::GoalSet;
use crate::bdd::{BoolFn, VarId};
use crate::error::{Error, Result};
use crate::explicit::sort_lex;
use crate::transducer::{Action, Transducer, TransducerState};

/// `w` with the state variables fixed to the encoding of `tuple`; a function
/// of the goal variables only.
pub fn winning_at(a: &mut SymbolicArena, wf: &WinningFormulas, tuple: &[u32]) -> Result<BoolFn> {
    let enc = a.encode_state(tuple);
    Ok(a.engine.restrict(wf.w, &enc)?)
}

pub fn query_realizable(
    a: &SymbolicArena,
    wf: &WinningFormulas,
    tuple: &[u32],
    c: GoalSet,
) -> Result<bool> {
    let asg: BTreeMap<VarId, bool> = a
        .encode_state(tuple)
        .into_iter()
        .chain(a.encode_goals(c))
        .collect();
    Ok(a.engine.evaluate(wf.w, &asg)?)
}

fn goals_of(a: &SymbolicArena, asg: &BTreeMap<VarId, bool>) -> GoalSet {
    GoalSet::from_indices(
        a.k.iter()
            .enumerate()
            .filter(|(_, v)| asg.get(v) == Some(&true))
            .map(|(i, _)| i),
    )
}

/// All ⊆-maximal goal sets realizable from `tuple`, sorted by goal indices.
pub fn maximal_assignments(
    a: &mut SymbolicArena,
    wf: &WinningFormulas,
    tuple: &[u32],
) -> Result<Vec<GoalSet>> {
    let mut g = winning_at(a, wf, tuple)?;
    let k = a.k.clone();
    let n = k.len();
    let mut found = Vec::new();
    while let Some(asg) = a.engine.pick_over(g, &k) {
        let mut m = goals_of(a, &asg);
        for i in 0..n {
            if m.contains(i) {
                continue;
            }
            let candidate = m.insert(i);
            let trial: BTreeMap<VarId, bool> = a.encode_goals(candidate).into_iter().collect();
            if a.engine.evaluate(g, &trial)? {
                m = candidate;
            }
        }
        found.push(m);
        // Exclude every subset of `m`.
        let outside: Vec<BoolFn> = (0..n).filter(|&i| !m.contains(i)).map(|i| a.engine.var(k[i])).collect();
        let block = a.engine.or_all(outside)?;
        g = a.engine.and(g, block)?;
    }
    sort_lex(&mut found);
    Ok(found)
}

/// Largest realizable set; ties go to the lexicographically least index list.
pub fn maximum_assignment(
    a: &mut SymbolicArena,
    wf: &WinningFormulas,
    tuple: &[u32],
) -> Result<GoalSet> {
    let sets = maximal_assignments(a, wf, tuple)?;
    Ok(pick_maximum(&sets))
}

pub fn pick_maximum(sets: &[GoalSet]) -> GoalSet {
    let best = sets.iter().map(|c| c.len()).max().unwrap_or(0);
    sets.iter()
        .copied()
        .filter(|c| c.len() == best)
        .min_by_key(|c| c.lex_key())
        .unwrap_or(GoalSet::EMPTY)
}

/// Fixes outputs one at a time in declaration order, keeping `false` while
/// the cofactor stays satisfiable.
fn determinize(a: &mut SymbolicArena, mut g: BoolFn) -> Result<Option<u32>> {
    if a.engine.is_false(g) {
        return Ok(None);
    }
    let mut y = 0u32;
    for (j, &v) in a.y.clone().iter().enumerate() {
        let low = a.engine.restrict(g, &[(v, false)])?;
        if !a.engine.is_false(low) {
            g = low;
        } else {
            g = a.engine.restrict(g, &[(v, true)])?;
            y |= 1 << j;
        }
    }
    Ok(Some(y))
}

/// Strategy for `c` read from `t`: stop where `w_0` holds under `c`,
/// otherwise play the output chosen by [`determinize`].
pub fn symbolic_strategy(
    a: &mut SymbolicArena,
    wf: &WinningFormulas,
    c: GoalSet,
) -> Result<Transducer> {
    let initial = a.initial();
    if !query_realizable(a, wf, &initial, c)? {
        return Err(Error::Unrealizable(
            c.indices().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(","),
        ));
    }
    let goals = a.encode_goals(c);
    let t_c = a.engine.restrict(wf.t, &goals)?;
    let w0_c = a.engine.restrict(wf.w0, &goals)?;
    let nx = 1u32 << a.alphabet().num_inputs();

    let mut ids: HashMap<Vec<u32>, usize> = HashMap::from([(initial.clone(), 0)]);
    let mut order = vec![initial];
    let mut states = Vec::new();
    let mut i = 0;
    while i < order.len() {
        let s = order[i].clone();
        let enc = a.encode_state(&s);
        let done = a.engine.restrict(w0_c, &enc)?;
        let state = if a.engine.is_true(done) {
            TransducerState {
                action: Action::Done,
                next: Vec::new(),
                origin: Some(s),
            }
        } else {
            let moves = a.engine.restrict(t_c, &enc)?;
            let y = determinize(a, moves)?.ok_or_else(|| {
                Error::Invariant(format!("no winning output at state {s:?}"))
            })?;
            let next = (0..nx)
                .map(|x| {
                    let succ = a.step(&s, y, x);
                    let len = order.len();
                    *ids.entry(succ.clone()).or_insert_with(|| {
                        order.push(succ);
                        len
                    })
                })
                .collect();
            TransducerState {
                action: Action::Output(y),
                next,
                origin: Some(s),
            }
        };
        states.push(state);
        i += 1;
    }
    Ok(Transducer {
        alphabet: a.alphabet().clone(),
        initial: 0,
        states,
    })
}
