//! Explicit deterministic automata over `2^AP`.
//!
//! A symbol is a bitmask over the automaton's ordered alphabet: bit `i` is set
//! iff `alphabet[i]` holds. Transition tables are dense, one column per symbol,
//! so alphabets are limited to [`MAX_ALPHABET`] atoms.

mod build;
mod minimize;

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Write;

pub use build::{build_dfa, build_dfa_unminimized, derive, eps_accept, instantiate, BuildOptions};
pub use minimize::{is_isomorphic, minimize};

use crate::error::{Error, Result};
use crate::ltlf::Trace;

pub const MAX_ALPHABET: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Vec<String>,
    initial: usize,
    delta: Vec<u32>,
    finals: Vec<bool>,
}

impl Dfa {
    /// Builds an automaton from a dense table `delta[state * 2^|alphabet| + symbol]`.
    ///
    /// Rejects tables that are not total, states that are unreachable from
    /// `initial`, and an accepting initial state.
    pub fn new(
        alphabet: Vec<String>,
        initial: usize,
        delta: Vec<u32>,
        finals: Vec<bool>,
    ) -> Result<Self> {
        if alphabet.len() > MAX_ALPHABET {
            return Err(Error::resource("automaton alphabet size", MAX_ALPHABET as u64));
        }
        let n = finals.len();
        let k = 1usize << alphabet.len();
        if n == 0 || initial >= n {
            return Err(Error::InvalidArgument("initial state out of range".into()));
        }
        if delta.len() != n * k || delta.iter().any(|&t| t as usize >= n) {
            return Err(Error::InvalidArgument("transition table is not total".into()));
        }
        if finals[initial] {
            return Err(Error::InvalidArgument("initial state must be non-accepting".into()));
        }
        let dfa = Dfa {
            alphabet,
            initial,
            delta,
            finals,
        };
        if dfa.reachable().iter().any(|r| !r) {
            return Err(Error::InvalidArgument("automaton has unreachable states".into()));
        }
        Ok(dfa)
    }

    /// Like [`Dfa::new`] but without the reachability check; used internally
    /// before minimization.
    pub(crate) fn new_unchecked(
        alphabet: Vec<String>,
        initial: usize,
        delta: Vec<u32>,
        finals: Vec<bool>,
    ) -> Self {
        Dfa {
            alphabet,
            initial,
            delta,
            finals,
        }
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.finals.len()
    }

    pub fn num_symbols(&self) -> usize {
        1 << self.alphabet.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_final(&self, q: usize) -> bool {
        self.finals[q]
    }

    pub fn finals(&self) -> &[bool] {
        &self.finals
    }

    pub fn step(&self, q: usize, symbol: u32) -> usize {
        self.delta[q * self.num_symbols() + symbol as usize] as usize
    }

    fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.num_states()];
        let mut queue = VecDeque::from([self.initial]);
        seen[self.initial] = true;
        while let Some(q) = queue.pop_front() {
            for s in 0..self.num_symbols() as u32 {
                let t = self.step(q, s);
                if !seen[t] {
                    seen[t] = true;
                    queue.push_back(t);
                }
            }
        }
        seen
    }

    /// Symbol for a valuation; errors on atoms outside the alphabet.
    pub fn symbol_of(&self, valuation: &BTreeSet<String>) -> Result<u32> {
        let mut sym = 0;
        for atom in valuation {
            let i = self
                .alphabet
                .iter()
                .position(|a| a == atom)
                .ok_or_else(|| Error::SymbolOutsideAlphabet(atom.clone()))?;
            sym |= 1 << i;
        }
        Ok(sym)
    }

    pub fn run(&self, symbols: impl IntoIterator<Item = u32>) -> usize {
        symbols.into_iter().fold(self.initial, |q, s| self.step(q, s))
    }

    /// True iff the automaton ends in an accepting state after reading
    /// `trace`. The empty trace is rejected since the initial state is
    /// non-accepting.
    pub fn accepts(&self, trace: &Trace) -> Result<bool> {
        let symbols = trace
            .0
            .iter()
            .map(|v| self.symbol_of(v))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.finals[self.run(symbols)])
    }

    /// Graphviz rendering; edge labels are symbol sets compressed into cubes.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph dfa {\n  rankdir=LR;\n  init [shape=point];\n");
        let _ = writeln!(out, "  init -> {};", self.initial);
        for q in 0..self.num_states() {
            let shape = if self.finals[q] { "doublecircle" } else { "circle" };
            let _ = writeln!(out, "  {q} [shape={shape}];");
        }
        for q in 0..self.num_states() {
            let mut edges: BTreeMap<usize, Vec<u32>> = BTreeMap::new();
            for s in 0..self.num_symbols() as u32 {
                edges.entry(self.step(q, s)).or_default().push(s);
            }
            for (t, syms) in edges {
                let label = crate::cubes::label(&syms, &self.alphabet);
                let _ = writeln!(out, "  {q} -> {t} [label=\"{label}\"];");
            }
        }
        out.push_str("}\n");
        out
    }
}
