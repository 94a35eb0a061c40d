//! Strategy extraction from ranks, and a minimax oracle.

use std::collections::HashMap;

use super::relation::WinRelation;
use crate::arena::{GoalSet, ProductArena};
use crate::error::{Error, Result};
use crate::transducer::{Action, Transducer, TransducerState};

/// Materializes the states reachable under a positional strategy. `choose`
/// returns `None` where the strategy stops.
pub(crate) fn materialize(
    a: &ProductArena,
    mut choose: impl FnMut(usize) -> Result<Option<u32>>,
) -> Result<Transducer> {
    let k = 1u32 << a.alphabet().num_inputs();
    let mut ids: HashMap<usize, usize> = HashMap::from([(a.initial(), 0)]);
    let mut order = vec![a.initial()];
    let mut states = Vec::new();
    let mut i = 0;
    while i < order.len() {
        let s = order[i];
        let state = match choose(s)? {
            None => TransducerState {
                action: Action::Done,
                next: Vec::new(),
                origin: Some(a.tuple(s).to_vec()),
            },
            Some(y) => {
                let next = (0..k)
                    .map(|x| {
                        let t = a.play(s, y, x);
                        *ids.entry(t).or_insert_with(|| {
                            order.push(t);
                            order.len() - 1
                        })
                    })
                    .collect();
                TransducerState {
                    action: Action::Output(y),
                    next,
                    origin: Some(a.tuple(s).to_vec()),
                }
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

/// Strategy for `c`: at rank `r > 0` play the lexicographically least output
/// that sends every successor to a rank below `r`; stop at rank 0.
pub fn extract_strategy(a: &ProductArena, w: &WinRelation, c: GoalSet) -> Result<Transducer> {
    if !w.contains(a.initial(), c) {
        return Err(Error::Unrealizable(c.lex_key().iter().map(|i| format!("{}", i + 1)).collect::<Vec<_>>().join(",")));
    }
    materialize(a, |s| {
        let r = w.rank(s, c).ok_or_else(|| {
            Error::Invariant(format!("strategy reached losing state {s}"))
        })?;
        if r == 0 {
            return Ok(None);
        }
        a.alphabet()
            .outputs_lex()
            .find(|&y| {
                (0u32..1 << a.alphabet().num_inputs())
                    .all(|x| matches!(w.rank(a.play(s, y, x), c), Some(rt) if rt < r))
            })
            .map(Some)
            .ok_or_else(|| Error::Invariant(format!("no rank-decreasing move at state {s}")))
    })
}

/// Exhaustive minimax: can the agent force `c` from `from` within `horizon`
/// rounds? Memoized on `(state, remaining rounds)`.
pub fn oracle_realizable(a: &ProductArena, from: usize, c: GoalSet, horizon: usize) -> bool {
    fn go(
        a: &ProductArena,
        s: usize,
        c: GoalSet,
        h: usize,
        memo: &mut HashMap<(usize, usize), bool>,
    ) -> bool {
        if a.satisfies(s, c) {
            return true;
        }
        if h == 0 {
            return false;
        }
        if let Some(&v) = memo.get(&(s, h)) {
            return v;
        }
        let k = 1u32 << a.alphabet().num_inputs();
        let v = a
            .alphabet()
            .outputs_lex()
            .any(|y| (0..k).all(|x| go(a, a.play(s, y, x), c, h - 1, memo)));
        memo.insert((s, h), v);
        v
    }
    go(a, from, c, horizon, &mut HashMap::new())
}
