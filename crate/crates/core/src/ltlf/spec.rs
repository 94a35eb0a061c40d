use std::fmt;

use super::formula::Formula;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Goal {
    pub label: String,
    pub formula: Formula,
}

/// A multi-property synthesis problem: a partition of the atoms into
/// environment inputs and agent outputs, plus an ordered list of goals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spec {
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
    pub goals: Vec<Goal>,
}

impl Spec {
    /// Validates the partition, the goal atoms and label uniqueness.
    pub fn new(inputs: Vec<String>, outputs: Vec<String>, goals: Vec<Goal>) -> Result<Self> {
        for (i, a) in inputs.iter().chain(&outputs).enumerate() {
            if inputs.iter().chain(&outputs).skip(i + 1).any(|b| a == b) {
                return if inputs.contains(a) && outputs.contains(a) {
                    Err(Error::Partition(a.clone()))
                } else {
                    Err(Error::DuplicateAtom(a.clone()))
                };
            }
        }
        if goals.is_empty() {
            return Err(Error::NoGoals);
        }
        for (i, g) in goals.iter().enumerate() {
            if goals[..i].iter().any(|h| h.label == g.label) {
                return Err(Error::DuplicateLabel(g.label.clone()));
            }
            for atom in g.formula.atoms() {
                if !inputs.contains(&atom) && !outputs.contains(&atom) {
                    return Err(Error::UndeclaredAtom(atom));
                }
            }
        }
        Ok(Spec {
            inputs,
            outputs,
            goals,
        })
    }

    pub fn num_goals(&self) -> usize {
        self.goals.len()
    }

    pub fn labels(&self) -> Vec<&str> {
        self.goals.iter().map(|g| g.label.as_str()).collect()
    }
}

/// Renders the instance in `.mpl` syntax.
impl fmt::Display for Spec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "INPUTS: {}", self.inputs.join(" "))?;
        writeln!(f, "OUTPUTS: {}", self.outputs.join(" "))?;
        for g in &self.goals {
            writeln!(f, "GOAL {}: {}", g.label, g.formula)?;
        }
        Ok(())
    }
}
