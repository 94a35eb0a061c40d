//! Binary encoding of the goal automata.

use std::collections::BTreeMap;

use crate::arena::{atom_positions, project, Alphabet, GoalSet};
use crate::bdd::{BoolFn, Engine, VarId};
use crate::dfa::Dfa;
use crate::error::{Error, Result};

/// Placement of the variable blocks in the diagram order.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum VarOrder {
    /// `Z_1 … Z_n`, then `K`, then `Y`, then `X`.
    Blocked,
    /// `Z_1, k_1, Z_2, k_2, …`, then `Y`, then `X`.
    Interleaved,
    /// `Z_1, k_1`, then the not yet placed outputs and inputs read by the
    /// first component, then `Z_2, k_2` and its new atoms, and so on.
    #[default]
    Clustered,
}

impl std::str::FromStr for VarOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "blocked" => Ok(VarOrder::Blocked),
            "interleaved" => Ok(VarOrder::Interleaved),
            "clustered" => Ok(VarOrder::Clustered),
            other => Err(Error::InvalidArgument(format!("unknown variable order `{other}`"))),
        }
    }
}

/// Number of bits needed to number `states` states.
pub fn state_bits(states: usize) -> usize {
    (usize::BITS - states.saturating_sub(1).leading_zeros()) as usize
}

pub struct SymbolicArena {
    pub engine: Engine,
    alphabet: Alphabet,
    components: Vec<Dfa>,
    positions: Vec<Vec<usize>>,
    /// State-variable block of each component, least significant bit first.
    pub z: Vec<Vec<VarId>>,
    pub k: Vec<VarId>,
    pub y: Vec<VarId>,
    pub x: Vec<VarId>,
    /// Next-state function of every state variable.
    pub eta: Vec<(VarId, BoolFn)>,
    /// Acceptance of each component over its own block.
    pub finals: Vec<BoolFn>,
}

impl SymbolicArena {
    /// Encodes `dfas` into `engine`, which must not have any variables yet.
    pub fn encode(
        dfas: Vec<Dfa>,
        alphabet: Alphabet,
        mut engine: Engine,
        order: VarOrder,
    ) -> Result<Self> {
        if engine.num_vars() != 0 {
            return Err(Error::InvalidArgument(
                "encoding needs an engine without variables".into(),
            ));
        }
        if dfas.is_empty() || dfas.len() > GoalSet::MAX_GOALS {
            return Err(Error::InvalidArgument(format!(
                "encoding needs between 1 and {} components",
                GoalSet::MAX_GOALS
            )));
        }
        let positions = dfas
            .iter()
            .map(|d| atom_positions(d, &alphabet))
            .collect::<Result<Vec<_>>>()?;
        let n = dfas.len();
        let mut z: Vec<Vec<VarId>> = vec![Vec::new(); n];
        let mut k = Vec::with_capacity(n);
        let block = |engine: &mut Engine, i: usize| {
            (0..state_bits(dfas[i].num_states()))
                .map(|b| engine.new_var(format!("z{}_{}", i + 1, b)))
                .collect::<Vec<_>>()
        };
        let mut y: Vec<Option<VarId>> = vec![None; alphabet.num_outputs()];
        let mut x: Vec<Option<VarId>> = vec![None; alphabet.num_inputs()];
        match order {
            VarOrder::Blocked => {
                for (i, zi) in z.iter_mut().enumerate() {
                    *zi = block(&mut engine, i);
                }
                for i in 0..n {
                    k.push(engine.new_var(format!("k{}", i + 1)));
                }
            }
            VarOrder::Interleaved => {
                for (i, zi) in z.iter_mut().enumerate() {
                    *zi = block(&mut engine, i);
                    k.push(engine.new_var(format!("k{}", i + 1)));
                }
            }
            VarOrder::Clustered => {
                let ni = alphabet.num_inputs();
                for (i, zi) in z.iter_mut().enumerate() {
                    *zi = block(&mut engine, i);
                    k.push(engine.new_var(format!("k{}", i + 1)));
                    let mut own = positions[i].clone();
                    own.sort_by_key(|&p| (p < ni, p));
                    for p in own {
                        let slot = if p < ni { &mut x[p] } else { &mut y[p - ni] };
                        if slot.is_none() {
                            *slot = Some(engine.new_var(alphabet.atoms()[p].clone()));
                        }
                    }
                }
            }
        }
        let y: Vec<VarId> = alphabet
            .outputs
            .iter()
            .zip(y)
            .map(|(a, v)| v.unwrap_or_else(|| engine.new_var(a.clone())))
            .collect();
        let x: Vec<VarId> = alphabet
            .inputs
            .iter()
            .zip(x)
            .map(|(a, v)| v.unwrap_or_else(|| engine.new_var(a.clone())))
            .collect();

        let mut eta = Vec::new();
        let mut finals = Vec::with_capacity(n);
        for (i, d) in dfas.iter().enumerate() {
            let atoms = atom_vars(d, &alphabet, &x, &y);
            let (next, f) = component_functions(&mut engine, d, &z[i], &atoms)?;
            eta.extend(z[i].iter().copied().zip(next));
            finals.push(f);
        }
        Ok(SymbolicArena {
            engine,
            alphabet,
            components: dfas,
            positions,
            z,
            k,
            y,
            x,
            eta,
            finals,
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

    pub fn initial(&self) -> Vec<u32> {
        self.components.iter().map(|d| d.initial() as u32).collect()
    }

    /// Successor tuple computed from the explicit tables.
    pub fn step(&self, tuple: &[u32], y: u32, x: u32) -> Vec<u32> {
        let sym = self.alphabet.symbol(x, y);
        tuple
            .iter()
            .zip(&self.components)
            .zip(&self.positions)
            .map(|((&q, d), p)| d.step(q as usize, project(p, sym)) as u32)
            .collect()
    }

    pub fn sat_goals(&self, tuple: &[u32]) -> GoalSet {
        GoalSet::from_indices(
            tuple
                .iter()
                .zip(&self.components)
                .enumerate()
                .filter(|(_, (&q, d))| d.is_final(q as usize))
                .map(|(i, _)| i),
        )
    }

    pub fn encode_state(&self, tuple: &[u32]) -> Vec<(VarId, bool)> {
        self.z
            .iter()
            .zip(tuple)
            .flat_map(|(block, &q)| block.iter().enumerate().map(move |(b, &v)| (v, q >> b & 1 == 1)))
            .collect()
    }

    pub fn encode_goals(&self, c: GoalSet) -> Vec<(VarId, bool)> {
        self.k.iter().enumerate().map(|(i, &v)| (v, c.contains(i))).collect()
    }

    pub fn encode_io(&self, y: u32, x: u32) -> Vec<(VarId, bool)> {
        let ys = self.y.iter().enumerate().map(|(j, &v)| (v, y >> j & 1 == 1));
        let xs = self.x.iter().enumerate().map(|(j, &v)| (v, x >> j & 1 == 1));
        ys.chain(xs).collect()
    }

    /// Decodes the successor by evaluating every next-state function.
    pub fn eval_successor(&self, tuple: &[u32], y: u32, x: u32) -> Result<Vec<u32>> {
        let asg: BTreeMap<VarId, bool> = self
            .encode_state(tuple)
            .into_iter()
            .chain(self.encode_io(y, x))
            .collect();
        let mut next = vec![0u32; tuple.len()];
        let mut it = self.eta.iter();
        for (i, block) in self.z.iter().enumerate() {
            for b in 0..block.len() {
                let (_, f) = it.next().expect("one function per state variable");
                if self.engine.evaluate(*f, &asg)? {
                    next[i] |= 1 << b;
                }
            }
        }
        Ok(next)
    }

    /// Number of product states reachable from the initial tuple, by
    /// image computation in a separate engine with primed state variables.
    pub fn reachable_states(&self, node_ceiling: usize) -> Result<u128> {
        let mut e = Engine::with_ceiling(node_ceiling);
        let ni = self.alphabet.num_inputs();
        let mut atom: Vec<Option<VarId>> = vec![None; self.alphabet.num_atoms()];
        // The last component reading each atom; the atom is quantified there.
        let mut last_use = vec![usize::MAX; self.alphabet.num_atoms()];
        for (i, pos) in self.positions.iter().enumerate() {
            for &p in pos {
                last_use[p] = i;
            }
        }
        let mut cur: Vec<Vec<VarId>> = Vec::new();
        let mut nxt: Vec<Vec<VarId>> = Vec::new();
        for (i, block) in self.z.iter().enumerate() {
            let (mut c, mut p) = (Vec::new(), Vec::new());
            for b in 0..block.len() {
                c.push(e.new_var(format!("z{}_{}", i + 1, b)));
                p.push(e.new_var(format!("z{}_{}'", i + 1, b)));
            }
            cur.push(c);
            nxt.push(p);
            let mut own = self.positions[i].clone();
            own.sort_by_key(|&p| (p < ni, p));
            for p in own {
                if atom[p].is_none() {
                    atom[p] = Some(e.new_var(self.alphabet.atoms()[p].clone()));
                }
            }
        }
        let atom: Vec<VarId> = atom
            .into_iter()
            .enumerate()
            .map(|(p, v)| v.unwrap_or_else(|| e.new_var(self.alphabet.atoms()[p].clone())))
            .collect();
        let (x, y) = atom.split_at(ni);
        let mut relation = Vec::with_capacity(self.components.len());
        for (i, d) in self.components.iter().enumerate() {
            let atoms = atom_vars(d, &self.alphabet, x, y);
            let (next, _) = component_functions(&mut e, d, &cur[i], &atoms)?;
            let mut t = e.tt();
            for (&p, f) in nxt[i].iter().zip(next) {
                let pv = e.try_var(p)?;
                let bit = e.iff(pv, f)?;
                t = e.and(t, bit)?;
            }
            let mut done = cur[i].clone();
            done.extend((0..atom.len()).filter(|&p| last_use[p] == i).map(|p| atom[p]));
            relation.push((t, done));
        }
        let cur_flat: Vec<VarId> = cur.iter().flatten().copied().collect();
        let rename = nxt
            .iter()
            .flatten()
            .zip(&cur_flat)
            .map(|(&p, &c)| Ok((p, e.try_var(c)?)))
            .collect::<Result<Vec<_>>>()?;
        let init: Vec<(VarId, bool)> = cur
            .iter()
            .zip(self.initial())
            .flat_map(|(block, q)| block.iter().enumerate().map(move |(b, &v)| (v, q >> b & 1 == 1)))
            .collect();
        let mut reached = e.tt();
        for &(v, val) in &init {
            let lit = e.literal(v, val)?;
            reached = e.and(reached, lit)?;
        }
        loop {
            let mut img = reached;
            for (t, done) in &relation {
                img = e.and(img, *t)?;
                img = e.exists(img, done)?;
            }
            let img = e.vector_compose(img, &rename)?;
            let next = e.or(reached, img)?;
            if next == reached {
                break;
            }
            reached = next;
        }
        let free = e.num_vars() - cur_flat.len();
        Ok(e.sat_count(reached) >> free)
    }
}

/// Variables of the atoms a component reads, in its local symbol-bit order.
fn atom_vars(d: &Dfa, alphabet: &Alphabet, x: &[VarId], y: &[VarId]) -> Vec<VarId> {
    d.alphabet()
        .iter()
        .map(|a| match alphabet.inputs.iter().position(|g| g == a) {
            Some(j) => x[j],
            None => y[alphabet.outputs.iter().position(|g| g == a).expect("projected")],
        })
        .collect()
}

/// Next-state function of every bit of `zvars`, and the acceptance function.
/// Codes beyond the last state map to 0 and are rejecting.
fn component_functions(
    engine: &mut Engine,
    d: &Dfa,
    zvars: &[VarId],
    atoms: &[VarId],
) -> Result<(Vec<BoolFn>, BoolFn)> {
    let zb = zvars.len();
    let mut vars = zvars.to_vec();
    vars.extend(atoms);
    let valid = d.num_states() as u64;
    let sym_mask = (1u64 << atoms.len()) - 1;
    let mut next = Vec::with_capacity(zb);
    for b in 0..zb {
        let f = engine.from_truth_table(&vars, &|idx| {
            let q = idx & ((1 << zb) - 1);
            if q >= valid {
                return false;
            }
            let sym = (idx >> zb) & sym_mask;
            d.step(q as usize, sym as u32) >> b & 1 == 1
        })?;
        next.push(f);
    }
    let f = engine.from_truth_table(zvars, &|q| q < valid && d.is_final(q as usize))?;
    Ok((next, f))
}
