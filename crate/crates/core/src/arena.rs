//! The explicit multi-property product arena.
//!
//! Global symbols are bitmasks over `inputs ++ outputs`: input `j` is bit `j`,
//! output `j` is bit `|inputs| + j`. Each component automaton may use any
//! subset of the global atoms as its own alphabet; the product projects global
//! symbols onto each component.

use std::collections::{BTreeMap, HashMap};
use std::fmt::{self, Write};

use serde::{Deserialize, Serialize};

use crate::dfa::{Dfa, MAX_ALPHABET};
use crate::error::{Error, Result};

/// The partitioned atom set `X ∪ Y`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Alphabet {
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
}

/// Masks over `m` bits, first bit most significant, false before true.
fn lex_masks(m: usize) -> impl Iterator<Item = u32> {
    (0u32..1 << m).map(move |v| (0..m).fold(0, |acc, j| acc | ((v >> (m - 1 - j)) & 1) << j))
}

impl Alphabet {
    pub fn new(inputs: Vec<String>, outputs: Vec<String>) -> Self {
        Alphabet { inputs, outputs }
    }

    pub fn num_inputs(&self) -> usize {
        self.inputs.len()
    }

    pub fn num_outputs(&self) -> usize {
        self.outputs.len()
    }

    pub fn num_atoms(&self) -> usize {
        self.inputs.len() + self.outputs.len()
    }

    /// All atoms in global symbol-bit order.
    pub fn atoms(&self) -> Vec<String> {
        self.inputs.iter().chain(&self.outputs).cloned().collect()
    }

    pub fn position(&self, atom: &str) -> Option<usize> {
        self.atoms().iter().position(|a| a == atom)
    }

    pub fn symbol(&self, inputs: u32, outputs: u32) -> u32 {
        inputs | outputs << self.inputs.len()
    }

    /// Output valuations in lexicographic order over the declared outputs,
    /// `false < true`, first output most significant.
    pub fn outputs_lex(&self) -> impl Iterator<Item = u32> {
        lex_masks(self.outputs.len())
    }

    /// Input masks in the same order as [`Alphabet::outputs_lex`].
    pub fn inputs_lex(&self) -> impl Iterator<Item = u32> {
        lex_masks(self.inputs.len())
    }

    /// Names of the outputs set in `y`.
    pub fn output_names(&self, y: u32) -> Vec<&str> {
        self.outputs
            .iter()
            .enumerate()
            .filter(|(j, _)| y >> j & 1 == 1)
            .map(|(_, a)| a.as_str())
            .collect()
    }

    pub fn input_names(&self, x: u32) -> Vec<&str> {
        self.inputs
            .iter()
            .enumerate()
            .filter(|(j, _)| x >> j & 1 == 1)
            .map(|(_, a)| a.as_str())
            .collect()
    }
}

/// A set of goals as a bitmask; bit `i` is goal `i` in declaration order.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GoalSet(pub u32);

impl GoalSet {
    pub const EMPTY: GoalSet = GoalSet(0);
    pub const MAX_GOALS: usize = 30;

    pub fn full(n: usize) -> Self {
        GoalSet(((1u64 << n) - 1) as u32)
    }

    pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> Self {
        GoalSet(indices.into_iter().fold(0, |acc, i| acc | 1 << i))
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn insert(self, i: usize) -> Self {
        GoalSet(self.0 | 1 << i)
    }

    pub fn is_subset(self, other: GoalSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn intersect(self, other: GoalSet) -> GoalSet {
        GoalSet(self.0 & other.0)
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |&i| self.contains(i))
    }

    /// Every subset of `self`, including `∅` and `self`.
    pub fn subsets(self) -> impl Iterator<Item = GoalSet> {
        let full = self.0;
        let mut next = Some(full);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == 0 { None } else { Some((cur - 1) & full) };
            Some(GoalSet(cur))
        })
    }

    /// Labels in goal order.
    pub fn labels<'a>(self, labels: &[&'a str]) -> Vec<&'a str> {
        self.indices().map(|i| labels[i]).collect()
    }

    /// Key for sorting goal sets lexicographically by their sorted index
    /// lists.
    pub fn lex_key(self) -> Vec<usize> {
        self.indices().collect()
    }
}

impl fmt::Display for GoalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.indices().map(|i| format!("{}", i + 1)).collect();
        write!(f, "{{{}}}", items.join(","))
    }
}

#[derive(Clone, Debug)]
pub struct ProductOptions {
    pub max_states: usize,
    /// Bound on `states × 2^|AP|` transition-table entries.
    pub max_transitions: usize,
}

impl Default for ProductOptions {
    fn default() -> Self {
        ProductOptions {
            max_states: 1 << 22,
            max_transitions: 1 << 27,
        }
    }
}

/// Reachable component-wise product of the goal automata.
#[derive(Clone, Debug)]
pub struct ProductArena {
    alphabet: Alphabet,
    components: Vec<Dfa>,
    tuples: Vec<Vec<u32>>,
    delta: Vec<u32>,
    sat: Vec<GoalSet>,
}

/// Global bit position of each atom of the component's alphabet.
pub(crate) fn atom_positions(dfa: &Dfa, alphabet: &Alphabet) -> Result<Vec<usize>> {
    let global = alphabet.atoms();
    dfa.alphabet()
        .iter()
        .map(|a| {
            global.iter().position(|g| g == a).ok_or_else(|| {
                Error::AlphabetMismatch(format!("component atom `{a}` is not declared"))
            })
        })
        .collect()
}

/// Local symbol read by a component whose atoms sit at `positions`.
pub(crate) fn project(positions: &[usize], sym: u32) -> u32 {
    positions
        .iter()
        .enumerate()
        .fold(0, |acc, (j, &p)| acc | ((sym >> p) & 1) << j)
}

/// `proj[global_symbol]` is the symbol of the component's local alphabet.
pub(crate) fn projection(dfa: &Dfa, alphabet: &Alphabet) -> Result<Vec<u32>> {
    let positions = atom_positions(dfa, alphabet)?;
    Ok((0u32..1 << alphabet.num_atoms())
        .map(|sym| project(&positions, sym))
        .collect())
}

impl ProductArena {
    /// Builds the reachable product, interning tuples in BFS order (successors
    /// by increasing global symbol).
    pub fn build(dfas: Vec<Dfa>, alphabet: Alphabet, opts: &ProductOptions) -> Result<Self> {
        if dfas.is_empty() || dfas.len() > GoalSet::MAX_GOALS {
            return Err(Error::InvalidArgument(format!(
                "product needs between 1 and {} components",
                GoalSet::MAX_GOALS
            )));
        }
        if alphabet.num_atoms() > MAX_ALPHABET {
            return Err(Error::resource("explicit alphabet size", MAX_ALPHABET as u64));
        }
        let k = 1usize << alphabet.num_atoms();
        let projections = dfas
            .iter()
            .map(|d| projection(d, &alphabet))
            .collect::<Result<Vec<_>>>()?;

        let initial: Vec<u32> = dfas.iter().map(|d| d.initial() as u32).collect();
        let mut index: HashMap<Vec<u32>, u32> = HashMap::from([(initial.clone(), 0)]);
        let mut tuples = vec![initial];
        let mut delta: Vec<u32> = Vec::new();
        let mut i = 0;
        while i < tuples.len() {
            if tuples.len().saturating_mul(k) > opts.max_transitions {
                return Err(Error::resource(
                    "product transition entries",
                    opts.max_transitions as u64,
                ));
            }
            for sym in 0..k {
                let next: Vec<u32> = tuples[i]
                    .iter()
                    .zip(&dfas)
                    .zip(&projections)
                    .map(|((&q, d), proj)| d.step(q as usize, proj[sym]) as u32)
                    .collect();
                let id = match index.get(&next) {
                    Some(&id) => id,
                    None => {
                        if tuples.len() >= opts.max_states {
                            return Err(Error::resource(
                                "product states",
                                opts.max_states as u64,
                            ));
                        }
                        let id = tuples.len() as u32;
                        index.insert(next.clone(), id);
                        tuples.push(next);
                        id
                    }
                };
                delta.push(id);
            }
            i += 1;
        }
        let sat = tuples
            .iter()
            .map(|t| {
                GoalSet::from_indices(
                    t.iter()
                        .zip(&dfas)
                        .enumerate()
                        .filter(|(_, (&q, d))| d.is_final(q as usize))
                        .map(|(i, _)| i),
                )
            })
            .collect();
        Ok(ProductArena {
            alphabet,
            components: dfas,
            tuples,
            delta,
            sat,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn components(&self) -> &[Dfa] {
        &self.components
    }

    pub fn num_goals(&self) -> usize {
        self.components.len()
    }

    pub fn num_states(&self) -> usize {
        self.tuples.len()
    }

    pub fn num_symbols(&self) -> usize {
        1 << self.alphabet.num_atoms()
    }

    pub fn initial(&self) -> usize {
        0
    }

    /// Component states of product state `s`.
    pub fn tuple(&self, s: usize) -> &[u32] {
        &self.tuples[s]
    }

    pub fn state_of(&self, tuple: &[u32]) -> Option<usize> {
        self.tuples.iter().position(|t| t == tuple)
    }

    pub fn succ(&self, s: usize, symbol: u32) -> usize {
        self.delta[s * self.num_symbols() + symbol as usize] as usize
    }

    /// Successor when the agent plays outputs `y` and the environment inputs `x`.
    pub fn play(&self, s: usize, y: u32, x: u32) -> usize {
        self.succ(s, self.alphabet.symbol(x, y))
    }

    /// The largest goal set satisfied at `s`; `s ⊨ C` iff `C ⊆ sat_goals(s)`.
    pub fn sat_goals(&self, s: usize) -> GoalSet {
        self.sat[s]
    }

    pub fn satisfies(&self, s: usize, c: GoalSet) -> bool {
        c.is_subset(self.sat[s])
    }

    /// Distinct predecessors of every state.
    pub fn predecessors(&self) -> Vec<Vec<u32>> {
        let mut pred: Vec<Vec<u32>> = vec![Vec::new(); self.num_states()];
        for s in 0..self.num_states() {
            for sym in 0..self.num_symbols() as u32 {
                let t = self.succ(s, sym);
                if pred[t].last() != Some(&(s as u32)) {
                    pred[t].push(s as u32);
                }
            }
        }
        pred
    }

    /// Graphviz rendering with each state annotated by its satisfied goals.
    pub fn to_dot(&self, labels: &[&str]) -> String {
        let atoms = self.alphabet.atoms();
        let mut out = String::from("digraph arena {\n  rankdir=LR;\n  init [shape=point];\n");
        let _ = writeln!(out, "  init -> 0;");
        for s in 0..self.num_states() {
            let goals = self.sat[s].labels(labels).join(",");
            let _ = writeln!(out, "  {s} [label=\"s{s}\\n{{{goals}}}\"];");
        }
        for s in 0..self.num_states() {
            let mut edges: BTreeMap<usize, Vec<u32>> = BTreeMap::new();
            for sym in 0..self.num_symbols() as u32 {
                edges.entry(self.succ(s, sym)).or_default().push(sym);
            }
            for (t, syms) in edges {
                let label = crate::cubes::label(&syms, &atoms);
                let _ = writeln!(out, "  {s} -> {t} [label=\"{label}\"];");
            }
        }
        out.push_str("}\n");
        out
    }
}
