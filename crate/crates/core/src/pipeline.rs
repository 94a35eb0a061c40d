//! `.mpl` front end shared by every solver.

use crate::arena::{Alphabet, ProductArena, ProductOptions};
use crate::dfa::{build_dfa, BuildOptions, Dfa};
use crate::error::Result;
use crate::ltlf::Spec;

/// An `.mpl` instance compiled to one minimal automaton per goal.
///
/// Each automaton reads only the atoms its goal mentions, in global order
/// (inputs, then outputs).
#[derive(Clone, Debug)]
pub struct Compiled {
    pub spec: Spec,
    pub alphabet: Alphabet,
    pub dfas: Vec<Dfa>,
}

impl Compiled {
    pub fn labels(&self) -> Vec<&str> {
        self.spec.goals.iter().map(|g| g.label.as_str()).collect()
    }

    pub fn num_goals(&self) -> usize {
        self.dfas.len()
    }

    pub fn product(&self, opts: &ProductOptions) -> Result<ProductArena> {
        ProductArena::build(self.dfas.clone(), self.alphabet.clone(), opts)
    }
}

pub fn compile(spec: &Spec, opts: &BuildOptions) -> Result<Compiled> {
    let alphabet = Alphabet::new(spec.inputs.clone(), spec.outputs.clone());
    let global = alphabet.atoms();
    let dfas = spec
        .goals
        .iter()
        .map(|g| {
            let used = g.formula.atoms();
            let support: Vec<String> = global.iter().filter(|a| used.contains(*a)).cloned().collect();
            build_dfa(&g.formula, &support, opts)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Compiled {
        spec: spec.clone(),
        alphabet,
        dfas,
    })
}

pub fn compile_text(text: &str, opts: &BuildOptions) -> Result<Compiled> {
    compile(&crate::ltlf::parse_spec(text)?, opts)
}
