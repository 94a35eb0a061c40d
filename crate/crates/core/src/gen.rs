//! Seeded random formulas and `.mpl` instances for differential testing.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arena::{ProductArena, ProductOptions};
use crate::dfa::BuildOptions;
use crate::error::Result;
use crate::ltlf::{Formula, Goal, Spec};
use crate::pipeline::{compile, Compiled};

/// A random formula of depth at most `depth` over `atoms`, using every
/// operator of the surface syntax.
pub fn random_formula(rng: &mut impl Rng, atoms: &[String], depth: usize) -> Formula {
    if depth == 0 || rng.gen_bool(0.2) {
        return match rng.gen_range(0..10) {
            0 => Formula::tt(),
            1 => Formula::ff(),
            _ => Formula::atom(atoms.choose(rng).expect("at least one atom")),
        };
    }
    let d = depth - 1;
    match rng.gen_range(0..13) {
        0 | 1 => Formula::not(random_formula(rng, atoms, d)),
        2 => Formula::and(random_formula(rng, atoms, d), random_formula(rng, atoms, d)),
        3 => Formula::or(random_formula(rng, atoms, d), random_formula(rng, atoms, d)),
        4 => Formula::implies(random_formula(rng, atoms, d), random_formula(rng, atoms, d)),
        5 => Formula::iff(random_formula(rng, atoms, d), random_formula(rng, atoms, d)),
        6 => Formula::next(random_formula(rng, atoms, d)),
        7 => Formula::weak_next(random_formula(rng, atoms, d)),
        8 | 9 => Formula::until(random_formula(rng, atoms, d), random_formula(rng, atoms, d)),
        10 => Formula::release(random_formula(rng, atoms, d), random_formula(rng, atoms, d)),
        11 => Formula::eventually(random_formula(rng, atoms, d)),
        _ => Formula::globally(random_formula(rng, atoms, d)),
    }
}

/// Shape of random multi-goal instances.
#[derive(Clone, Debug)]
pub struct InstanceParams {
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
    pub min_goals: usize,
    pub max_goals: usize,
    pub depth: usize,
    pub max_product: usize,
}

impl Default for InstanceParams {
    fn default() -> Self {
        InstanceParams {
            inputs: vec!["x1".into()],
            outputs: vec!["y1".into(), "y2".into()],
            min_goals: 2,
            max_goals: 4,
            depth: 3,
            max_product: 200,
        }
    }
}

/// A compiled random instance together with its product arena.
pub struct Instance {
    pub seed: u64,
    pub compiled: Compiled,
    pub arena: ProductArena,
}

/// Draws instances from `seed` until one has a product within
/// `max_product` states.
pub fn random_instance(seed: u64, p: &InstanceParams) -> Result<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let atoms: Vec<String> = p.inputs.iter().chain(&p.outputs).cloned().collect();
    let opts = ProductOptions {
        max_states: p.max_product,
        ..ProductOptions::default()
    };
    loop {
        let n = rng.gen_range(p.min_goals..=p.max_goals);
        let goals = (0..n)
            .map(|i| Goal {
                label: format!("g{}", i + 1),
                formula: random_formula(&mut rng, &atoms, p.depth),
            })
            .collect();
        let spec = Spec::new(p.inputs.clone(), p.outputs.clone(), goals)?;
        let compiled = compile(&spec, &BuildOptions::default())?;
        match compiled.product(&opts) {
            Ok(arena) => {
                return Ok(Instance {
                    seed,
                    compiled,
                    arena,
                })
            }
            Err(e) if e.is_resource() => continue,
            Err(e) => return Err(e),
        }
    }
}
