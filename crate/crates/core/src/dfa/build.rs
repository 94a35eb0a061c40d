//! Derivative-based translation from LTLf to automata.
//!
//! A state is a pair `(obligation, accepting)`. Reading symbol `σ` from
//! obligation `ψ` moves to `(derive(ψ, σ), eps_accept(instantiate(ψ, σ)))`:
//! the residual obligation for the rest of the trace, and whether the trace
//! may end right after `σ`. Both maps are Boolean homomorphisms, so they are
//! applied to the atoms and temporal subformulas of a residual and the results
//! combined on decision diagrams. Pairs are deduplicated by diagram identity
//! and the result is minimized.

use std::collections::{HashMap, VecDeque};

use super::{minimize, Dfa, MAX_ALPHABET};
use crate::bdd::{BoolFn, Engine, VarId};
use crate::error::{Error, Result};
use crate::ltlf::{desugar, Formula, Kind};

#[derive(Clone, Debug)]
pub struct BuildOptions {
    pub max_states: usize,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions { max_states: 1 << 20 }
    }
}

/// Acceptance of the empty remainder for a core formula.
pub fn eps_accept(f: &Formula) -> Result<bool> {
    Ok(match f.kind() {
        Kind::True => true,
        Kind::False | Kind::Atom(_) | Kind::Next(_) => false,
        Kind::WeakNext(_) => true,
        Kind::Not(g) => !eps_accept(g)?,
        Kind::And(gs) => {
            let mut all = true;
            for g in gs {
                all &= eps_accept(g)?;
            }
            all
        }
        Kind::Or(gs) => {
            let mut any = false;
            for g in gs {
                any |= eps_accept(g)?;
            }
            any
        }
        Kind::Until(_, b) => eps_accept(b)?,
        Kind::Implies(..) => return Err(Error::NonCoreOperator("->")),
        Kind::Iff(..) => return Err(Error::NonCoreOperator("<->")),
        Kind::Release(..) => return Err(Error::NonCoreOperator("R")),
        Kind::Eventually(_) => return Err(Error::NonCoreOperator("F")),
        Kind::Globally(_) => return Err(Error::NonCoreOperator("G")),
    })
}

/// Replaces the atoms evaluated at the current position by their value under
/// `holds`; operands of `X`/`WX` refer to later positions and are kept.
pub fn instantiate(f: &Formula, holds: &dyn Fn(&str) -> bool) -> Formula {
    match f.kind() {
        Kind::True | Kind::False | Kind::Next(_) | Kind::WeakNext(_) => f.clone(),
        Kind::Atom(a) => Formula::constant(holds(a)),
        Kind::Not(g) => Formula::not(instantiate(g, holds)),
        Kind::And(gs) => Formula::and_all(gs.iter().map(|g| instantiate(g, holds))),
        Kind::Or(gs) => Formula::or_all(gs.iter().map(|g| instantiate(g, holds))),
        Kind::Until(a, b) => Formula::until(instantiate(a, holds), instantiate(b, holds)),
        _ => instantiate(&desugar(f), holds),
    }
}

/// One-step derivative of a core formula: the obligation left for the suffix
/// after reading a position where exactly the atoms accepted by `holds` are
/// true.
pub fn derive(f: &Formula, holds: &dyn Fn(&str) -> bool) -> Formula {
    match f.kind() {
        Kind::True | Kind::False => f.clone(),
        Kind::Atom(a) => Formula::constant(holds(a)),
        Kind::Not(g) => Formula::not(derive(g, holds)),
        Kind::And(gs) => Formula::and_all(gs.iter().map(|g| derive(g, holds))),
        Kind::Or(gs) => Formula::or_all(gs.iter().map(|g| derive(g, holds))),
        Kind::Next(g) | Kind::WeakNext(g) => g.clone(),
        Kind::Until(a, b) => Formula::or(
            derive(b, holds),
            Formula::and(derive(a, holds), f.clone()),
        ),
        _ => derive(&desugar(f), holds),
    }
}

/// Residual obligations as decision diagrams whose variables are the atoms
/// and temporal subformulas (`X`, `WX`, `U`) they are built from. Syntactic
/// normalization alone does not identify all equivalent Boolean combinations,
/// and the residuals of nested untils can then grow forever; diagrams are
/// canonical, so the state set is bounded by the Boolean functions over the
/// finite closure.
struct Residuals {
    engine: Engine,
    vars: HashMap<Formula, VarId>,
    formulas: Vec<Formula>,
    /// Encoded derivative and end-of-trace acceptance per (variable, local symbol).
    steps: HashMap<(VarId, usize), (BoolFn, bool)>,
}

impl Residuals {
    fn new() -> Self {
        Residuals {
            engine: Engine::new(),
            vars: HashMap::new(),
            formulas: Vec::new(),
            steps: HashMap::new(),
        }
    }

    fn encode(&mut self, f: &Formula) -> Result<BoolFn> {
        Ok(match f.kind() {
            Kind::True => self.engine.tt(),
            Kind::False => self.engine.ff(),
            Kind::Not(g) => {
                let g = self.encode(g)?;
                self.engine.not(g)?
            }
            Kind::And(gs) | Kind::Or(gs) => {
                let conj = matches!(f.kind(), Kind::And(_));
                let mut acc = self.engine.constant(conj);
                for g in gs {
                    let g = self.encode(g)?;
                    acc = if conj { self.engine.and(acc, g)? } else { self.engine.or(acc, g)? };
                }
                acc
            }
            _ => {
                let v = match self.vars.get(f) {
                    Some(&v) => v,
                    None => {
                        let v = self.engine.new_var(f.to_string());
                        self.vars.insert(f.clone(), v);
                        self.formulas.push(f.clone());
                        v
                    }
                };
                self.engine.var(v)
            }
        })
    }

    fn step(&mut self, v: VarId, lsym: usize, holds: &dyn Fn(&str) -> bool) -> Result<(BoolFn, bool)> {
        if let Some(&r) = self.steps.get(&(v, lsym)) {
            return Ok(r);
        }
        let f = self.formulas[v.0 as usize].clone();
        let next = self.encode(&derive(&f, holds))?;
        let r = (next, eps_accept(&instantiate(&f, holds))?);
        self.steps.insert((v, lsym), r);
        Ok(r)
    }
}

/// Builds the automaton before minimization; states are numbered in BFS order.
pub fn build_dfa_unminimized(f: &Formula, ap: &[String], opts: &BuildOptions) -> Result<Dfa> {
    if ap.len() > MAX_ALPHABET {
        return Err(Error::resource("automaton alphabet size", MAX_ALPHABET as u64));
    }
    for atom in f.atoms() {
        if !ap.contains(&atom) {
            return Err(Error::SymbolOutsideAlphabet(atom));
        }
    }
    let core = desugar(f);
    // Only atoms in the support influence a transition; compute per projected
    // symbol and spread over the full alphabet.
    let used = core.atoms();
    let support: Vec<usize> = (0..ap.len()).filter(|&i| used.contains(&ap[i])).collect();
    let k = 1usize << ap.len();
    let local = 1usize << support.len();
    let project = |sym: usize| -> usize {
        support
            .iter()
            .enumerate()
            .fold(0, |acc, (j, &i)| acc | ((sym >> i) & 1) << j)
    };

    let mut res = Residuals::new();
    let mut index: HashMap<(BoolFn, bool), u32> = HashMap::new();
    let mut states: Vec<(BoolFn, bool)> = Vec::new();
    let mut delta: Vec<u32> = Vec::new();
    let initial = (res.encode(&core)?, false);
    index.insert(initial, 0);
    states.push(initial);
    let mut queue = VecDeque::from([0usize]);
    while let Some(q) = queue.pop_front() {
        let obligation = states[q].0;
        let vars = res.engine.support(obligation);
        let mut row_local = Vec::with_capacity(local);
        for lsym in 0..local {
            let holds = |name: &str| {
                support
                    .iter()
                    .enumerate()
                    .any(|(j, &i)| ap[i] == name && (lsym >> j) & 1 == 1)
            };
            let mut bindings = Vec::with_capacity(vars.len());
            let mut ends = Vec::with_capacity(vars.len());
            for &v in &vars {
                let (d, e) = res.step(v, lsym, &holds)?;
                bindings.push((v, d));
                ends.push((v, e));
            }
            let accepting = res.engine.restrict(obligation, &ends)?;
            let next = (
                res.engine.vector_compose(obligation, &bindings)?,
                res.engine.is_true(accepting),
            );
            let id = match index.get(&next) {
                Some(&id) => id,
                None => {
                    if states.len() >= opts.max_states {
                        return Err(Error::resource("automaton states", opts.max_states as u64));
                    }
                    let id = states.len() as u32;
                    index.insert(next, id);
                    states.push(next);
                    queue.push_back(id as usize);
                    id
                }
            };
            row_local.push(id);
        }
        delta.extend((0..k).map(|sym| row_local[project(sym)]));
    }
    let finals = states.iter().map(|(_, acc)| *acc).collect();
    Ok(Dfa::new_unchecked(ap.to_vec(), 0, delta, finals))
}

/// Minimal automaton accepting exactly the non-empty traces over `2^ap` that
/// satisfy `f`.
pub fn build_dfa(f: &Formula, ap: &[String], opts: &BuildOptions) -> Result<Dfa> {
    Ok(minimize(&build_dfa_unminimized(f, ap, opts)?))
}
