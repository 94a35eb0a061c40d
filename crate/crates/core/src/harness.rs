//! Runs transducers against environments and checks the resulting traces
//! with the formula evaluator.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::ops::ControlFlow;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arena::{Alphabet, GoalSet};
use crate::error::{Error, Result};
use crate::ltlf::{satisfies, Spec, Trace};
use crate::transducer::{Action, Transducer};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EnvPolicy {
    Random { seed: u64 },
    /// Every input sequence up to `depth` rounds; see [`explore`].
    Exhaustive { depth: usize },
    /// Fixed input masks, one per round.
    Scripted(Vec<u32>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// The strategy stopped; the set holds the goals the trace satisfies.
    Satisfied(GoalSet),
    /// The strategy stopped before the first round.
    Vacuous,
    BudgetExceeded,
    StrategyError,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Round {
    pub state: usize,
    pub output: u32,
    pub input: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimResult {
    pub trace: Trace,
    pub rounds: Vec<Round>,
    pub verdict: Verdict,
}

impl SimResult {
    pub fn num_rounds(&self) -> usize {
        self.rounds.len()
    }

    pub fn inputs(&self) -> Vec<u32> {
        self.rounds.iter().map(|r| r.input).collect()
    }

    /// Whether every goal of `c` is guaranteed by this run.
    pub fn achieves(&self, c: GoalSet) -> bool {
        match self.verdict {
            Verdict::Satisfied(s) => c.is_subset(s),
            Verdict::Vacuous => c.is_empty(),
            _ => false,
        }
    }

    /// One line per round: `round i: Y={...} X={...} state=q`.
    pub fn dump(&self, alphabet: &Alphabet) -> String {
        let mut out = String::new();
        for (i, r) in self.rounds.iter().enumerate() {
            let _ = writeln!(
                out,
                "round {i}: Y={{{}}} X={{{}}} state={}",
                alphabet.output_names(r.output).join(","),
                alphabet.input_names(r.input).join(","),
                r.state
            );
        }
        out
    }
}

fn check_alphabet(spec: &Spec, t: &Transducer) -> Result<Alphabet> {
    let alphabet = Alphabet::new(spec.inputs.clone(), spec.outputs.clone());
    if t.alphabet != alphabet {
        return Err(Error::AlphabetMismatch(
            "transducer and goal file declare different atoms".into(),
        ));
    }
    Ok(alphabet)
}

fn position(alphabet: &Alphabet, y: u32, x: u32) -> BTreeSet<String> {
    alphabet
        .output_names(y)
        .into_iter()
        .chain(alphabet.input_names(x))
        .map(str::to_string)
        .collect()
}

fn judge(spec: &Spec, trace: &Trace) -> Verdict {
    if trace.is_empty() {
        return Verdict::Vacuous;
    }
    let held = spec
        .goals
        .iter()
        .enumerate()
        .filter(|(_, g)| satisfies(trace, &g.formula))
        .map(|(i, _)| i);
    Verdict::Satisfied(GoalSet::from_indices(held))
}

/// Plays `t` against inputs drawn from `next_input` for at most `max_rounds`
/// rounds. Each round the transducer outputs first, then the input is read.
fn run(
    spec: &Spec,
    alphabet: &Alphabet,
    t: &Transducer,
    max_rounds: usize,
    mut next_input: impl FnMut(usize) -> Option<u32>,
) -> SimResult {
    let mut q = t.initial;
    let mut trace = Trace::default();
    let mut rounds = Vec::new();
    loop {
        let y = match t.action(q) {
            Action::Done => {
                let verdict = judge(spec, &trace);
                return SimResult { trace, rounds, verdict };
            }
            Action::Output(y) => y,
        };
        let x = match next_input(rounds.len()) {
            Some(x) if rounds.len() < max_rounds => x,
            _ => {
                return SimResult {
                    trace,
                    rounds,
                    verdict: Verdict::BudgetExceeded,
                }
            }
        };
        trace.push(position(alphabet, y, x));
        rounds.push(Round {
            state: q,
            output: y,
            input: x,
        });
        match t.step(q, x) {
            Ok(next) => q = next,
            Err(_) => {
                return SimResult {
                    trace,
                    rounds,
                    verdict: Verdict::StrategyError,
                }
            }
        }
    }
}

/// Simulates one play. Exhaustive policies are handled by [`explore`].
pub fn simulate(spec: &Spec, t: &Transducer, env: &EnvPolicy, max_rounds: usize) -> Result<SimResult> {
    let alphabet = check_alphabet(spec, t)?;
    let k = 1u32 << alphabet.num_inputs();
    match env {
        EnvPolicy::Random { seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            Ok(run(spec, &alphabet, t, max_rounds, |_| Some(rng.gen_range(0..k))))
        }
        EnvPolicy::Scripted(xs) => {
            if let Some(x) = xs.iter().find(|&&x| x >= k) {
                return Err(Error::InvalidArgument(format!("input mask {x} out of range")));
            }
            Ok(run(spec, &alphabet, t, max_rounds, |i| xs.get(i).copied()))
        }
        EnvPolicy::Exhaustive { .. } => Err(Error::InvalidArgument(
            "exhaustive environments enumerate many plays; use explore".into(),
        )),
    }
}

/// Visits the play of every input sequence of at most `depth` rounds, in
/// lexicographic input order, until `visit` breaks.
pub fn explore<B>(
    spec: &Spec,
    t: &Transducer,
    depth: usize,
    mut visit: impl FnMut(&SimResult) -> ControlFlow<B>,
) -> Result<Option<B>> {
    let alphabet = check_alphabet(spec, t)?;
    let order: Vec<u32> = alphabet.inputs_lex().collect();
    let mut prefix: Vec<usize> = Vec::new();
    loop {
        let r = run(spec, &alphabet, t, depth, |i| {
            if i == prefix.len() {
                prefix.push(0);
            }
            Some(order[prefix[i]])
        });
        // Inputs requested but never consumed are dropped.
        prefix.truncate(r.num_rounds());
        if let ControlFlow::Break(b) = visit(&r) {
            return Ok(Some(b));
        }
        // Advance to the next sequence in lexicographic order.
        loop {
            match prefix.last_mut() {
                None => return Ok(None),
                Some(d) if *d + 1 < order.len() => {
                    *d += 1;
                    break;
                }
                Some(_) => {
                    prefix.pop();
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verification {
    Verified,
    /// The lexicographically first failing play.
    Counterexample(SimResult),
}

/// Checks that every environment forces the play to stop within `depth`
/// rounds on a trace satisfying all goals of `c`.
pub fn verify_exhaustive(spec: &Spec, t: &Transducer, c: GoalSet, depth: usize) -> Result<Verification> {
    let failure = explore(spec, t, depth, |r| {
        if r.achieves(c) {
            ControlFlow::Continue(())
        } else {
            ControlFlow::Break(r.clone())
        }
    })?;
    Ok(failure.map_or(Verification::Verified, Verification::Counterexample))
}

/// Goals satisfied on every play of at most `depth` rounds, or the first
/// play that does not stop properly.
pub fn guaranteed_goals(spec: &Spec, t: &Transducer, depth: usize) -> Result<std::result::Result<GoalSet, SimResult>> {
    let mut common = GoalSet::full(spec.num_goals());
    let failure = explore(spec, t, depth, |r| match r.verdict {
        Verdict::Satisfied(s) => {
            common = common.intersect(s);
            ControlFlow::Continue(())
        }
        Verdict::Vacuous => {
            common = GoalSet::EMPTY;
            ControlFlow::Continue(())
        }
        _ => ControlFlow::Break(r.clone()),
    })?;
    Ok(failure.map_or(Ok(common), Err))
}
