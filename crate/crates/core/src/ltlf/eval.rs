use std::collections::BTreeSet;

use super::formula::{Formula, Kind};
use crate::error::{Error, Result};

/// A finite trace; each position is the set of atoms true at that instant.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Trace(pub Vec<BTreeSet<String>>);

impl Trace {
    pub fn new(positions: Vec<BTreeSet<String>>) -> Self {
        Trace(positions)
    }

    /// Builds a trace from per-position atom lists.
    pub fn from_atoms<S: AsRef<str>>(positions: &[&[S]]) -> Self {
        Trace(
            positions
                .iter()
                .map(|p| p.iter().map(|a| a.as_ref().to_string()).collect())
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, position: BTreeSet<String>) {
        self.0.push(position);
    }
}

/// Truth value of `f` at every position of a non-empty trace.
fn eval_all(trace: &Trace, f: &Formula) -> Vec<bool> {
    let n = trace.len();
    match f.kind() {
        Kind::True => vec![true; n],
        Kind::False => vec![false; n],
        Kind::Atom(a) => trace.0.iter().map(|p| p.contains(&**a)).collect(),
        Kind::Not(g) => eval_all(trace, g).into_iter().map(|v| !v).collect(),
        Kind::And(gs) => gs.iter().fold(vec![true; n], |acc, g| {
            acc.iter().zip(eval_all(trace, g)).map(|(x, y)| *x && y).collect()
        }),
        Kind::Or(gs) => gs.iter().fold(vec![false; n], |acc, g| {
            acc.iter().zip(eval_all(trace, g)).map(|(x, y)| *x || y).collect()
        }),
        Kind::Implies(a, b) => {
            let (a, b) = (eval_all(trace, a), eval_all(trace, b));
            a.iter().zip(b).map(|(x, y)| !*x || y).collect()
        }
        Kind::Iff(a, b) => {
            let (a, b) = (eval_all(trace, a), eval_all(trace, b));
            a.iter().zip(b).map(|(x, y)| *x == y).collect()
        }
        Kind::Next(g) => {
            let g = eval_all(trace, g);
            (0..n).map(|i| i + 1 < n && g[i + 1]).collect()
        }
        Kind::WeakNext(g) => {
            let g = eval_all(trace, g);
            (0..n).map(|i| i + 1 >= n || g[i + 1]).collect()
        }
        Kind::Until(a, b) => {
            let (a, b) = (eval_all(trace, a), eval_all(trace, b));
            let mut out = vec![false; n];
            let mut later = false;
            for i in (0..n).rev() {
                later = b[i] || (a[i] && later);
                out[i] = later;
            }
            out
        }
        Kind::Release(a, b) => {
            let (a, b) = (eval_all(trace, a), eval_all(trace, b));
            let mut out = vec![false; n];
            let mut later = true;
            for i in (0..n).rev() {
                later = b[i] && (a[i] || later);
                out[i] = later;
            }
            out
        }
        Kind::Eventually(g) => {
            let g = eval_all(trace, g);
            let mut out = vec![false; n];
            let mut later = false;
            for i in (0..n).rev() {
                later = later || g[i];
                out[i] = later;
            }
            out
        }
        Kind::Globally(g) => {
            let g = eval_all(trace, g);
            let mut out = vec![false; n];
            let mut later = true;
            for i in (0..n).rev() {
                later = later && g[i];
                out[i] = later;
            }
            out
        }
    }
}

/// Finite-trace satisfaction `trace, pos ⊨ f`.
pub fn evaluate(trace: &Trace, f: &Formula, pos: usize) -> Result<bool> {
    if pos >= trace.len() {
        return Err(Error::PositionOutOfRange {
            pos,
            len: trace.len(),
        });
    }
    Ok(eval_all(trace, f)[pos])
}

/// `trace ⊨ f`. The empty trace satisfies no formula.
pub fn satisfies(trace: &Trace, f: &Formula) -> bool {
    !trace.is_empty() && eval_all(trace, f)[0]
}
