#![allow(dead_code)]

use std::collections::BTreeSet;

use mpsynth::explicit::PairSet;
use mpsynth::{GoalSet, Trace};
use rand::Rng;

pub fn atoms(k: usize) -> Vec<String> {
    ["a", "b", "c", "d"][..k].iter().map(|s| s.to_string()).collect()
}

pub fn g(ix: &[usize]) -> GoalSet {
    GoalSet::from_indices(ix.iter().copied())
}

/// Every non-empty trace over `atoms` of length at most `max_len`.
pub fn traces(atoms: &[String], max_len: usize) -> Vec<Trace> {
    let letters: Vec<BTreeSet<String>> = (0u32..1 << atoms.len())
        .map(|m| {
            atoms
                .iter()
                .enumerate()
                .filter(|(i, _)| m >> i & 1 == 1)
                .map(|(_, a)| a.clone())
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut layer = vec![Trace::default()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for t in &layer {
            for l in &letters {
                let mut u = t.clone();
                u.push(l.clone());
                next.push(u);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Adds every subset of every stored set.
pub fn close_down(rel: &PairSet) -> PairSet {
    let mut out = PairSet::empty(rel.num_states(), rel.num_goals());
    for (s, c) in rel.iter() {
        for d in c.subsets() {
            out.insert(s, d);
        }
    }
    out
}

pub fn random_pairs(rng: &mut impl Rng, states: usize, goals: usize, density: f64) -> PairSet {
    let mut out = PairSet::empty(states, goals);
    for s in 0..states {
        for c in 0u32..1 << goals {
            if rng.gen_bool(density) {
                out.insert(s, GoalSet(c));
            }
        }
    }
    out
}

pub mod strategies {
    use std::collections::BTreeSet;

    use mpsynth::{Formula, Trace};
    use proptest::prelude::*;
    use proptest::sample::select;

    /// Formulas over `atoms` using every surface operator, depth at most 4.
    pub fn formula(atoms: Vec<String>) -> impl Strategy<Value = Formula> {
        let leaf = prop_oneof![
            1 => Just(Formula::tt()),
            1 => Just(Formula::ff()),
            4 => select(atoms).prop_map(|a| Formula::atom(&a)),
        ];
        leaf.prop_recursive(4, 24, 2, |inner| {
            let pair = (inner.clone(), inner.clone());
            prop_oneof![
                inner.clone().prop_map(Formula::not),
                inner.clone().prop_map(Formula::next),
                inner.clone().prop_map(Formula::weak_next),
                inner.clone().prop_map(Formula::eventually),
                inner.prop_map(Formula::globally),
                pair.clone().prop_map(|(a, b)| Formula::and(a, b)),
                pair.clone().prop_map(|(a, b)| Formula::or(a, b)),
                pair.clone().prop_map(|(a, b)| Formula::implies(a, b)),
                pair.clone().prop_map(|(a, b)| Formula::iff(a, b)),
                pair.clone().prop_map(|(a, b)| Formula::until(a, b)),
                pair.prop_map(|(a, b)| Formula::release(a, b)),
            ]
        })
    }

    /// Non-empty traces over `atoms` of length at most `max_len`.
    pub fn trace(atoms: Vec<String>, max_len: usize) -> impl Strategy<Value = Trace> {
        let k = atoms.len();
        prop::collection::vec(prop::collection::vec(any::<bool>(), k), 1..=max_len).prop_map(
            move |rows| {
                Trace::new(
                    rows.iter()
                        .map(|bits| {
                            atoms
                                .iter()
                                .zip(bits)
                                .filter(|(_, b)| **b)
                                .map(|(a, _)| a.clone())
                                .collect::<BTreeSet<String>>()
                        })
                        .collect(),
                )
            },
        )
    }
}
