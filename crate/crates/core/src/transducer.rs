//! Finite-state strategies in standard form.
//!
//! A state either emits an output valuation and then moves on the
//! environment's input, or emits `done`, meaning the targeted goals already
//! hold on the trace produced so far.
//!
//! JSON form:
//!
//! ```json
//! {"inputs":["x"],"outputs":["y"],"initial":0,
//!  "states":[{"id":0,"output":{"y":true},"next":{"":1,"x":1}},
//!            {"id":1,"output":"done","next":{}}]}
//! ```
//!
//! `next` keys list the inputs that are true, sorted and comma-separated; the
//! empty key is the all-false input. Every input valuation must have a key on
//! non-done states.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::arena::Alphabet;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Action {
    /// Output valuation as a mask over the alphabet's outputs.
    Output(u32),
    Done,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransducerState {
    pub action: Action,
    /// Successor per input mask; empty on done states.
    pub next: Vec<usize>,
    /// Arena state (component tuple) this state was built from, if known.
    pub origin: Option<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transducer {
    pub alphabet: Alphabet,
    pub initial: usize,
    pub states: Vec<TransducerState>,
}

#[derive(Serialize, Deserialize)]
struct JsonTransducer {
    inputs: Vec<String>,
    outputs: Vec<String>,
    initial: usize,
    states: Vec<JsonState>,
}

#[derive(Serialize, Deserialize)]
struct JsonState {
    id: usize,
    output: JsonOutput,
    next: BTreeMap<String, usize>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum JsonOutput {
    Done(DoneTag),
    Valuation(BTreeMap<String, bool>),
}

#[derive(Serialize, Deserialize)]
enum DoneTag {
    #[serde(rename = "done")]
    Done,
}

impl Transducer {
    /// Checks that ids are in range and non-done states are total.
    pub fn validate(&self) -> Result<()> {
        let k = 1usize << self.alphabet.num_inputs();
        if self.initial >= self.states.len() {
            return Err(Error::Transducer("initial state out of range".into()));
        }
        for (i, st) in self.states.iter().enumerate() {
            match st.action {
                Action::Done => {
                    if !st.next.is_empty() {
                        return Err(Error::Transducer(format!("done state {i} has successors")));
                    }
                }
                Action::Output(y) => {
                    if y >> self.alphabet.num_outputs() != 0 {
                        return Err(Error::Transducer(format!("state {i}: output out of range")));
                    }
                    if st.next.len() != k {
                        return Err(Error::Transducer(format!(
                            "state {i} has {} successors, expected {k}",
                            st.next.len()
                        )));
                    }
                    if st.next.iter().any(|&t| t >= self.states.len()) {
                        return Err(Error::Transducer(format!("state {i}: successor out of range")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    /// True when the strategy stops before producing any output.
    pub fn is_vacuous(&self) -> bool {
        self.states[self.initial].action == Action::Done
    }

    pub fn action(&self, q: usize) -> Action {
        self.states[q].action
    }

    pub fn step(&self, q: usize, x: u32) -> Result<usize> {
        self.states
            .get(q)
            .and_then(|st| st.next.get(x as usize))
            .copied()
            .ok_or_else(|| Error::Transducer(format!("no transition from state {q} on input {x}")))
    }

    fn input_key(&self, x: u32) -> String {
        let mut names = self.alphabet.input_names(x);
        names.sort_unstable();
        names.join(",")
    }

    pub fn to_json(&self) -> String {
        let states = self
            .states
            .iter()
            .enumerate()
            .map(|(id, st)| JsonState {
                id,
                output: match st.action {
                    Action::Done => JsonOutput::Done(DoneTag::Done),
                    Action::Output(y) => JsonOutput::Valuation(
                        self.alphabet
                            .outputs
                            .iter()
                            .enumerate()
                            .map(|(j, a)| (a.clone(), y >> j & 1 == 1))
                            .collect(),
                    ),
                },
                next: st
                    .next
                    .iter()
                    .enumerate()
                    .map(|(x, &t)| (self.input_key(x as u32), t))
                    .collect(),
            })
            .collect();
        let doc = JsonTransducer {
            inputs: self.alphabet.inputs.clone(),
            outputs: self.alphabet.outputs.clone(),
            initial: self.initial,
            states,
        };
        serde_json::to_string_pretty(&doc).expect("transducer serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: JsonTransducer = serde_json::from_str(text)?;
        let alphabet = Alphabet::new(doc.inputs, doc.outputs);
        let mut keys: BTreeMap<String, usize> = BTreeMap::new();
        for x in 0u32..1 << alphabet.num_inputs() {
            let mut names = alphabet.input_names(x);
            names.sort_unstable();
            keys.insert(names.join(","), x as usize);
        }
        let mut states = Vec::with_capacity(doc.states.len());
        for (i, st) in doc.states.into_iter().enumerate() {
            if st.id != i {
                return Err(Error::Transducer(format!("state at position {i} has id {}", st.id)));
            }
            let action = match st.output {
                JsonOutput::Done(_) => Action::Done,
                JsonOutput::Valuation(vals) => {
                    let mut y = 0;
                    for (atom, v) in vals {
                        let j = alphabet
                            .outputs
                            .iter()
                            .position(|o| *o == atom)
                            .ok_or_else(|| Error::Transducer(format!("unknown output `{atom}`")))?;
                        if v {
                            y |= 1 << j;
                        }
                    }
                    Action::Output(y)
                }
            };
            let mut next = vec![usize::MAX; if st.next.is_empty() { 0 } else { keys.len() }];
            for (key, t) in st.next {
                let x = *keys
                    .get(&key)
                    .ok_or_else(|| Error::Transducer(format!("unknown input key `{key}`")))?;
                next[x] = t;
            }
            if next.contains(&usize::MAX) {
                return Err(Error::Transducer(format!("state {i} is missing input keys")));
            }
            states.push(TransducerState {
                action,
                next,
                origin: None,
            });
        }
        let t = Transducer {
            alphabet,
            initial: doc.initial,
            states,
        };
        t.validate()?;
        Ok(t)
    }

    /// Same states, actions and successors; origins are ignored.
    pub fn same_behavior_structure(&self, other: &Transducer) -> bool {
        self.alphabet == other.alphabet
            && self.initial == other.initial
            && self.states.len() == other.states.len()
            && self
                .states
                .iter()
                .zip(&other.states)
                .all(|(a, b)| a.action == b.action && a.next == b.next)
    }

    /// Trace-equivalence of the two strategies over all input sequences of
    /// length at most `depth`.
    pub fn equivalent_to_depth(&self, other: &Transducer, depth: usize) -> bool {
        if self.alphabet != other.alphabet {
            return false;
        }
        let k = 1u32 << self.alphabet.num_inputs();
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::from([(self.initial, other.initial, 0usize)]);
        while let Some((p, q, d)) = queue.pop_front() {
            if !seen.insert((p, q)) {
                continue;
            }
            let (a, b) = (self.action(p), other.action(q));
            if a != b {
                return false;
            }
            if a == Action::Done || d == depth {
                continue;
            }
            for x in 0..k {
                queue.push_back((self.states[p].next[x as usize], other.states[q].next[x as usize], d + 1));
            }
        }
        true
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph transducer {\n  rankdir=LR;\n  init [shape=point];\n");
        let _ = writeln!(out, "  init -> {};", self.initial);
        for (i, st) in self.states.iter().enumerate() {
            match st.action {
                Action::Done => {
                    let _ = writeln!(out, "  {i} [shape=doublecircle,label=\"{i}\\ndone\"];");
                }
                Action::Output(y) => {
                    let names = self.alphabet.output_names(y).join(",");
                    let _ = writeln!(out, "  {i} [shape=box,label=\"{i}\\n{{{names}}}\"];");
                }
            }
        }
        let inputs = &self.alphabet.inputs;
        for (i, st) in self.states.iter().enumerate() {
            let mut edges: BTreeMap<usize, Vec<u32>> = BTreeMap::new();
            for (x, &t) in st.next.iter().enumerate() {
                edges.entry(t).or_default().push(x as u32);
            }
            for (t, xs) in edges {
                let label = crate::cubes::label(&xs, inputs);
                let _ = writeln!(out, "  {i} -> {t} [label=\"{label}\"];");
            }
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Transducer {
        Transducer {
            alphabet: Alphabet::new(vec!["x2".into(), "x1".into()], vec!["y".into(), "z".into()]),
            initial: 0,
            states: vec![
                TransducerState {
                    action: Action::Output(0b01),
                    next: vec![1, 1, 0, 1],
                    origin: None,
                },
                TransducerState {
                    action: Action::Done,
                    next: vec![],
                    origin: None,
                },
            ],
        }
    }

    #[test]
    fn json_round_trip() {
        let t = sample();
        let text = t.to_json();
        assert!(text.contains("\"output\": \"done\""));
        assert!(text.contains("\"x1,x2\": 1"));
        assert!(text.contains("\"\": 1"));
        assert!(text.contains("\"z\": false"));
        let back = Transducer::from_json(&text).unwrap();
        assert_eq!(back, t);
        assert!(!t.is_vacuous());
    }

    #[test]
    fn rejects_partial_tables() {
        let text = r#"{"inputs":["x"],"outputs":["y"],"initial":0,
            "states":[{"id":0,"output":{"y":true},"next":{"":0}}]}"#;
        assert!(matches!(Transducer::from_json(text), Err(Error::Transducer(_))));
        let text = r#"{"inputs":["x"],"outputs":["y"],"initial":3,"states":[]}"#;
        assert!(Transducer::from_json(text).is_err());
    }

    #[test]
    fn equivalence() {
        let t = sample();
        let mut u = sample();
        assert!(t.equivalent_to_depth(&u, 4));
        u.states[0].action = Action::Output(0b10);
        assert!(!t.equivalent_to_depth(&u, 1));
        assert!(t.to_dot().contains("done"));
    }
}
