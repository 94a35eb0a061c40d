//! Fixed points over state/goal-set pairs.

use super::relation::{maximal_sets, MaxRelation, PairSet, WinRelation};
use crate::arena::{GoalSet, ProductArena};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct ExplicitOptions {
    pub max_goals: usize,
    /// Bound on `|states| · 2^n`.
    pub max_pairs: usize,
}

impl Default for ExplicitOptions {
    fn default() -> Self {
        ExplicitOptions {
            max_goals: 12,
            max_pairs: 1 << 26,
        }
    }
}

fn check_budget(a: &ProductArena, opts: &ExplicitOptions) -> Result<()> {
    if a.num_goals() > opts.max_goals {
        return Err(Error::resource("explicit solver goal count", opts.max_goals as u64));
    }
    if a.num_states().saturating_mul(1 << a.num_goals()) > opts.max_pairs {
        return Err(Error::resource("explicit state/goal-set pairs", opts.max_pairs as u64));
    }
    Ok(())
}

/// Whether output `y` at `s` sends every successor to a state accepted by `ok`.
fn forces(a: &ProductArena, s: usize, y: u32, ok: impl Fn(usize) -> bool) -> bool {
    (0u32..1 << a.alphabet().num_inputs()).all(|x| ok(a.play(s, y, x)))
}

/// `WinM_0`: pairs whose goal set already holds.
pub fn win_m0(a: &ProductArena) -> PairSet {
    let mut rel = PairSet::empty(a.num_states(), a.num_goals());
    for s in 0..a.num_states() {
        for c in a.sat_goals(s).subsets() {
            rel.insert(s, c);
        }
    }
    rel
}

/// Controllable multi-property predecessor.
pub fn pre_mc(a: &ProductArena, rel: &PairSet) -> PairSet {
    let n = a.num_goals();
    let mut out = PairSet::empty(a.num_states(), n);
    for s in 0..a.num_states() {
        for c in (0u32..1 << n).map(GoalSet) {
            if a
                .alphabet()
                .outputs_lex()
                .any(|y| forces(a, s, y, |t| rel.contains(t, c)))
            {
                out.insert(s, c);
            }
        }
    }
    out
}

/// Least fixed point of `WinM_{i+1} = WinM_i ∪ PreMC(WinM_i)` with ranks.
///
/// Worklist form: a pair can enter at iteration `i + 1` only if one of its
/// successors entered at iteration `i`, so only predecessors of the previous
/// layer are re-examined.
pub fn win_m(a: &ProductArena, opts: &ExplicitOptions) -> Result<WinRelation> {
    check_budget(a, opts)?;
    let n = a.num_goals();
    let mut rel = WinRelation::new(a.num_states(), n);
    let pred = a.predecessors();
    let mut layer: Vec<(usize, GoalSet)> = Vec::new();
    for s in 0..a.num_states() {
        for c in a.sat_goals(s).subsets() {
            rel.set_rank(s, c, 0);
            layer.push((s, c));
        }
    }
    let mut iterations = 0usize;
    let mut stamp = vec![u32::MAX; a.num_states() << n];
    while !layer.is_empty() {
        iterations += 1;
        let i = iterations as u32;
        let mut next = Vec::new();
        for &(t, c) in &layer {
            for &s in &pred[t] {
                let s = s as usize;
                let key = s << n | c.0 as usize;
                if rel.contains(s, c) || stamp[key] == i {
                    continue;
                }
                stamp[key] = i;
                let wins = a.alphabet().outputs_lex().any(|y| {
                    forces(a, s, y, |u| matches!(rel.rank(u, c), Some(r) if r < i))
                });
                if wins {
                    next.push((s, c));
                }
            }
        }
        for &(s, c) in &next {
            rel.set_rank(s, c, i);
        }
        layer = next;
    }
    rel.iterations = iterations;
    Ok(rel)
}

/// Batched iteration recomputing the full predecessor every round.
pub fn win_m_naive(a: &ProductArena, opts: &ExplicitOptions) -> Result<WinRelation> {
    check_budget(a, opts)?;
    let mut rel = WinRelation::new(a.num_states(), a.num_goals());
    let mut current = win_m0(a);
    for (s, c) in current.iter() {
        rel.set_rank(s, c, 0);
    }
    let mut iterations = 0usize;
    loop {
        iterations += 1;
        let next = current.union(&pre_mc(a, &current));
        if next == current {
            break;
        }
        for (s, c) in next.iter() {
            if !rel.contains(s, c) {
                rel.set_rank(s, c, iterations as u32);
            }
        }
        current = next;
    }
    rel.iterations = iterations;
    Ok(rel)
}

/// Maximal multi-property predecessor: `∃Y ∀X ∃D ⊇ C` stored at the successor.
pub fn pre_mmc(a: &ProductArena, m: &MaxRelation) -> PairSet {
    let n = a.num_goals();
    let mut out = PairSet::empty(a.num_states(), n);
    for s in 0..a.num_states() {
        for c in (0u32..1 << n).map(GoalSet) {
            let covered = |t: usize| m.at(t).iter().any(|d| c.is_subset(*d));
            if a.alphabet().outputs_lex().any(|y| forces(a, s, y, covered)) {
                out.insert(s, c);
            }
        }
    }
    out
}

/// Maximal elements of the sets forced by output `y` at `s`: every choice of
/// one stored set per successor, intersected.
fn forced_antichain(a: &ProductArena, m: &MaxRelation, s: usize, y: u32) -> Vec<GoalSet> {
    let mut acc: Vec<GoalSet> = vec![GoalSet::full(a.num_goals())];
    for x in 0u32..1 << a.alphabet().num_inputs() {
        let succ = m.at(a.play(s, y, x));
        let meets = acc
            .iter()
            .flat_map(|c| succ.iter().map(move |d| c.intersect(*d)))
            .collect();
        acc = maximal_sets(meets);
    }
    acc
}

/// Fixed point of `WinMM_{i+1} = Max(WinMM_i ∪ PreMMC(WinMM_i))`.
pub fn win_mm(a: &ProductArena, opts: &ExplicitOptions) -> Result<MaxRelation> {
    check_budget(a, opts)?;
    let n = a.num_goals();
    let bound = a.num_states().saturating_mul(1 << n);
    let mut m = MaxRelation {
        num_goals: n,
        sets: (0..a.num_states()).map(|s| vec![a.sat_goals(s)]).collect(),
        iterations: 0,
    };
    loop {
        m.iterations += 1;
        if m.iterations > bound + 1 {
            return Err(Error::Invariant(format!(
                "maximal fixed point exceeded {bound} iterations"
            )));
        }
        let next: Vec<Vec<GoalSet>> = (0..a.num_states())
            .map(|s| {
                let mut sets = m.sets[s].clone();
                for y in a.alphabet().outputs_lex() {
                    sets.extend(forced_antichain(a, &m, s, y));
                }
                maximal_sets(sets)
            })
            .collect();
        if next == m.sets {
            break;
        }
        m.sets = next;
    }
    Ok(m)
}
