//! Subset-by-subset baseline with superset pruning.
//!
//! Goal sets are visited by ascending size, lexicographically within a size.
//! A set containing a known-unrealizable set is skipped. Every other set is
//! solved as a single reachability game whose target is joint acceptance of
//! its goals.

use std::fmt::Write as _;
use std::time::Instant;

use itertools::Itertools;

use crate::arena::{Alphabet, GoalSet, ProductArena, ProductOptions};
use crate::bdd::Engine;
use crate::dfa::Dfa;
use crate::error::Result;
use crate::explicit::maximal_sets;
use crate::symbolic::{conjunction_fixpoint, SymbolicArena, VarOrder, DEFAULT_NODE_CEILING};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum EnumMode {
    Explicit,
    #[default]
    Symbolic,
}

#[derive(Clone, Debug)]
pub struct EnumOptions {
    pub mode: EnumMode,
    pub order: VarOrder,
    pub node_ceiling: usize,
    pub product: ProductOptions,
    pub deadline: Option<Instant>,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions {
            mode: EnumMode::Symbolic,
            order: VarOrder::default(),
            node_ceiling: DEFAULT_NODE_CEILING,
            product: ProductOptions::default(),
            deadline: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Realizable,
    Unrealizable,
    /// Skipped because it contains the recorded unrealizable set.
    Pruned(GoalSet),
    /// The solver ran out of budget.
    Unknown,
}

#[derive(Clone, Debug)]
pub struct SubsetRecord {
    pub goals: GoalSet,
    pub verdict: Verdict,
    pub time_ms: f64,
}

#[derive(Clone, Debug)]
pub struct EnumReport {
    pub maximal: Vec<GoalSet>,
    pub records: Vec<SubsetRecord>,
    pub complete: bool,
}

impl EnumReport {
    pub fn checked(&self) -> usize {
        self.records
            .iter()
            .filter(|r| !matches!(r.verdict, Verdict::Pruned(_)))
            .count()
    }

    pub fn pruned(&self) -> usize {
        self.records.len() - self.checked()
    }

    pub fn realizable(&self) -> usize {
        self.records
            .iter()
            .filter(|r| r.verdict == Verdict::Realizable)
            .count()
    }

    pub fn verdict(&self, c: GoalSet) -> Option<Verdict> {
        self.records.iter().find(|r| r.goals == c).map(|r| r.verdict)
    }

    /// One row per visited subset: `label-set,verdict,time-ms,pruned-by`.
    pub fn to_csv(&self, labels: &[&str]) -> String {
        let set = |c: GoalSet| format!("{{{}}}", c.labels(labels).join(";"));
        let mut out = String::from("label-set,verdict,time-ms,pruned-by\n");
        for r in &self.records {
            let (verdict, by) = match r.verdict {
                Verdict::Realizable => ("realizable", String::new()),
                Verdict::Unrealizable => ("unrealizable", String::new()),
                Verdict::Pruned(by) => ("pruned", set(by)),
                Verdict::Unknown => ("unknown", String::new()),
            };
            let _ = writeln!(out, "{},{verdict},{:.3},{by}", set(r.goals), r.time_ms);
        }
        out
    }
}

/// Decides one conjunction of goals.
pub fn solve_conjunction(
    dfas: &[Dfa],
    alphabet: &Alphabet,
    goals: GoalSet,
    opts: &EnumOptions,
) -> Result<bool> {
    let parts: Vec<Dfa> = goals.indices().map(|i| dfas[i].clone()).collect();
    match opts.mode {
        EnumMode::Explicit => {
            let arena = ProductArena::build(parts, alphabet.clone(), &opts.product)?;
            Ok(attractor(&arena)[arena.initial()])
        }
        EnumMode::Symbolic => {
            let mut a = SymbolicArena::encode(
                parts,
                alphabet.clone(),
                Engine::with_ceiling(opts.node_ceiling),
                opts.order,
            )?;
            let all: Vec<usize> = (0..a.num_goals()).collect();
            let wf = conjunction_fixpoint(&mut a, &all, opts.deadline)?;
            let init = a.encode_state(&a.initial());
            let at = a.engine.restrict(wf.w, &init)?;
            Ok(a.engine.is_true(at))
        }
    }
}

/// States from which joint acceptance of every component can be forced.
fn attractor(a: &ProductArena) -> Vec<bool> {
    let full = GoalSet::full(a.num_goals());
    let mut win: Vec<bool> = (0..a.num_states()).map(|s| a.sat_goals(s) == full).collect();
    let nx = 1u32 << a.alphabet().num_inputs();
    loop {
        let next: Vec<bool> = (0..a.num_states())
            .map(|s| {
                win[s]
                    || a.alphabet()
                        .outputs_lex()
                        .any(|y| (0..nx).all(|x| win[a.play(s, y, x)]))
            })
            .collect();
        if next == win {
            return win;
        }
        win = next;
    }
}

/// Runs the baseline over all non-empty goal sets.
pub fn enumerate_maximal(dfas: &[Dfa], alphabet: &Alphabet, opts: &EnumOptions) -> Result<EnumReport> {
    let n = dfas.len();
    let mut records: Vec<SubsetRecord> = Vec::new();
    let mut unrealizable: Vec<GoalSet> = Vec::new();
    let mut realizable: Vec<GoalSet> = Vec::new();
    let mut complete = true;
    for size in 1..=n {
        for combo in (0..n).combinations(size) {
            let c = GoalSet::from_indices(combo);
            if let Some(&by) = unrealizable.iter().find(|u| u.is_subset(c)) {
                records.push(SubsetRecord {
                    goals: c,
                    verdict: Verdict::Pruned(by),
                    time_ms: 0.0,
                });
                continue;
            }
            let start = Instant::now();
            let verdict = if opts.deadline.is_some_and(|d| start >= d) {
                Verdict::Unknown
            } else {
                match solve_conjunction(dfas, alphabet, c, opts) {
                    Ok(true) => Verdict::Realizable,
                    Ok(false) => Verdict::Unrealizable,
                    Err(e) if e.is_resource() => Verdict::Unknown,
                    Err(e) => return Err(e),
                }
            };
            match verdict {
                Verdict::Realizable => realizable.push(c),
                Verdict::Unrealizable => unrealizable.push(c),
                _ => complete = false,
            }
            records.push(SubsetRecord {
                goals: c,
                verdict,
                time_ms: start.elapsed().as_secs_f64() * 1e3,
            });
        }
    }
    realizable.push(GoalSet::EMPTY);
    Ok(EnumReport {
        maximal: maximal_sets(realizable),
        records,
        complete,
    })
}
