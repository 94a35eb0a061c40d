//! Relations between arena states and goal sets.

use serde::Serialize;

use crate::arena::GoalSet;

/// A set of `(state, C)` pairs stored as a dense bitmap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairSet {
    num_goals: usize,
    num_states: usize,
    bits: Vec<bool>,
}

impl PairSet {
    pub fn empty(num_states: usize, num_goals: usize) -> Self {
        PairSet {
            num_goals,
            num_states,
            bits: vec![false; num_states << num_goals],
        }
    }

    pub fn full(num_states: usize, num_goals: usize) -> Self {
        PairSet {
            num_goals,
            num_states,
            bits: vec![true; num_states << num_goals],
        }
    }

    pub fn num_goals(&self) -> usize {
        self.num_goals
    }

    pub fn num_states(&self) -> usize {
        self.num_states
    }

    fn idx(&self, s: usize, c: GoalSet) -> usize {
        s << self.num_goals | c.0 as usize
    }

    pub fn contains(&self, s: usize, c: GoalSet) -> bool {
        self.bits[self.idx(s, c)]
    }

    pub fn insert(&mut self, s: usize, c: GoalSet) -> bool {
        let i = self.idx(s, c);
        !std::mem::replace(&mut self.bits[i], true)
    }

    pub fn remove(&mut self, s: usize, c: GoalSet) {
        let i = self.idx(s, c);
        self.bits[i] = false;
    }

    pub fn len(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.bits.contains(&true)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, GoalSet)> + '_ {
        self.bits
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| (i >> self.num_goals, GoalSet((i & ((1 << self.num_goals) - 1)) as u32)))
    }

    /// Goal sets paired with `s`, in mask order.
    pub fn sets_at(&self, s: usize) -> Vec<GoalSet> {
        (0u32..1 << self.num_goals)
            .map(GoalSet)
            .filter(|&c| self.contains(s, c))
            .collect()
    }

    pub fn is_subset(&self, other: &PairSet) -> bool {
        self.bits.iter().zip(&other.bits).all(|(&a, &b)| !a || b)
    }

    pub fn union(&self, other: &PairSet) -> PairSet {
        PairSet {
            bits: self.bits.iter().zip(&other.bits).map(|(&a, &b)| a || b).collect(),
            ..self.clone()
        }
    }

    pub fn is_downward_closed(&self) -> bool {
        self.iter()
            .all(|(s, c)| c.subsets().all(|d| self.contains(s, d)))
    }
}

/// `WinM` with the rank of every pair: the first iteration that adds it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WinRelation {
    num_goals: usize,
    num_states: usize,
    ranks: Vec<u32>,
    /// Number of iterations performed until the relation stopped growing.
    pub iterations: usize,
}

const ABSENT: u32 = u32::MAX;

impl WinRelation {
    pub(crate) fn new(num_states: usize, num_goals: usize) -> Self {
        WinRelation {
            num_goals,
            num_states,
            ranks: vec![ABSENT; num_states << num_goals],
            iterations: 0,
        }
    }

    pub fn num_goals(&self) -> usize {
        self.num_goals
    }

    pub fn num_states(&self) -> usize {
        self.num_states
    }

    fn idx(&self, s: usize, c: GoalSet) -> usize {
        s << self.num_goals | c.0 as usize
    }

    pub fn rank(&self, s: usize, c: GoalSet) -> Option<u32> {
        match self.ranks[self.idx(s, c)] {
            ABSENT => None,
            r => Some(r),
        }
    }

    pub(crate) fn set_rank(&mut self, s: usize, c: GoalSet, r: u32) {
        let i = self.idx(s, c);
        self.ranks[i] = r;
    }

    pub fn contains(&self, s: usize, c: GoalSet) -> bool {
        self.rank(s, c).is_some()
    }

    pub fn max_rank(&self) -> Option<u32> {
        self.ranks.iter().copied().filter(|&r| r != ABSENT).max()
    }

    pub fn to_pairs(&self) -> PairSet {
        PairSet {
            num_goals: self.num_goals,
            num_states: self.num_states,
            bits: self.ranks.iter().map(|&r| r != ABSENT).collect(),
        }
    }

    /// Pairs with rank at most `i`, i.e. the `i`-th iterate.
    pub fn layer(&self, i: u32) -> PairSet {
        PairSet {
            num_goals: self.num_goals,
            num_states: self.num_states,
            bits: self.ranks.iter().map(|&r| r <= i).collect(),
        }
    }

    /// JSON with states in index order and goal sets as label lists.
    pub fn to_json(&self, labels: &[&str]) -> String {
        #[derive(Serialize)]
        struct Entry<'a> {
            goals: Vec<&'a str>,
            rank: u32,
        }
        #[derive(Serialize)]
        struct State<'a> {
            state: usize,
            sets: Vec<Entry<'a>>,
        }
        let states: Vec<State> = (0..self.num_states)
            .map(|s| {
                let mut sets: Vec<(Vec<usize>, Entry)> = (0u32..1 << self.num_goals)
                    .map(GoalSet)
                    .filter_map(|c| {
                        self.rank(s, c).map(|rank| {
                            (c.lex_key(), Entry {
                                goals: c.labels(labels),
                                rank,
                            })
                        })
                    })
                    .collect();
                sets.sort_by(|a, b| a.0.cmp(&b.0));
                State {
                    state: s,
                    sets: sets.into_iter().map(|(_, e)| e).collect(),
                }
            })
            .collect();
        serde_json::to_string_pretty(&states).expect("relation serializes")
    }
}

/// Per-state antichains of goal sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaxRelation {
    pub num_goals: usize,
    pub sets: Vec<Vec<GoalSet>>,
    pub iterations: usize,
}

impl MaxRelation {
    pub fn at(&self, s: usize) -> &[GoalSet] {
        &self.sets[s]
    }

    pub fn is_antichain(&self) -> bool {
        self.sets.iter().all(|sets| {
            sets.iter().enumerate().all(|(i, a)| {
                sets.iter()
                    .enumerate()
                    .all(|(j, b)| i == j || !a.is_subset(*b))
            })
        })
    }

    pub fn to_json(&self, labels: &[&str]) -> String {
        #[derive(Serialize)]
        struct State<'a> {
            state: usize,
            sets: Vec<Vec<&'a str>>,
        }
        let states: Vec<State> = self
            .sets
            .iter()
            .enumerate()
            .map(|(s, sets)| State {
                state: s,
                sets: sets.iter().map(|c| c.labels(labels)).collect(),
            })
            .collect();
        serde_json::to_string_pretty(&states).expect("relation serializes")
    }
}

/// Keeps the ⊆-maximal sets, sorted by their index lists.
pub fn maximal_sets(mut sets: Vec<GoalSet>) -> Vec<GoalSet> {
    sets.sort_by_key(|c| std::cmp::Reverse(c.len()));
    sets.dedup();
    let mut kept: Vec<GoalSet> = Vec::new();
    for c in sets {
        if !kept.iter().any(|k| c.is_subset(*k)) {
            kept.push(c);
        }
    }
    sort_lex(&mut kept);
    kept
}

/// Sorts goal sets lexicographically by their sorted goal indices.
pub fn sort_lex(sets: &mut [GoalSet]) {
    sets.sort_by_key(|c| c.lex_key());
}

/// The `Max` operator: per state, the ⊆-maximal sets of `rel`.
pub fn max_op(rel: &PairSet) -> MaxRelation {
    MaxRelation {
        num_goals: rel.num_goals(),
        sets: (0..rel.num_states())
            .map(|s| maximal_sets(rel.sets_at(s)))
            .collect(),
        iterations: 0,
    }
}

/// Every subset of every stored set.
pub fn downward_close(m: &MaxRelation) -> PairSet {
    let mut out = PairSet::empty(m.sets.len(), m.num_goals);
    for (s, sets) in m.sets.iter().enumerate() {
        for c in sets {
            for d in c.subsets() {
                out.insert(s, d);
            }
        }
    }
    out
}
