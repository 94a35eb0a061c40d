//! Parametric `.mpl` generators.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::symbolic::state_bits;

/// Upper bound on the goal count of generated instances.
pub const MAX_FAMILY_GOALS: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// Sequences of `d` events per goal; mutex goals between neighboring
    /// chains create conflicts.
    Chain,
    /// Nested untils of depth `d`, one input per goal.
    Until,
    /// Input-triggered responses `d` steps later.
    Next,
    /// A `d`-bit counter incremented by the environment; goals ask for
    /// different counter values.
    Counter,
    /// Monotone navigation on a `d`×`d` grid with an environment door.
    Robotnav,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::Chain,
        Family::Until,
        Family::Next,
        Family::Counter,
        Family::Robotnav,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Chain => "chain",
            Family::Until => "until",
            Family::Next => "next",
            Family::Counter => "counter",
            Family::Robotnav => "robotnav",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown family `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FamilyParams {
    pub family: Family,
    pub n: usize,
    pub d: usize,
    pub seed: u64,
}

impl FamilyParams {
    pub fn new(family: Family, n: usize, d: usize) -> Self {
        FamilyParams { family, n, d, seed: 0 }
    }
}

fn out_of_range(p: &FamilyParams, why: &str) -> Error {
    Error::InvalidArgument(format!("{} with n={} d={}: {why}", p.family, p.n, p.d))
}

struct Builder {
    inputs: Vec<String>,
    outputs: Vec<String>,
    goals: Vec<(String, String)>,
}

impl Builder {
    fn new() -> Self {
        Builder {
            inputs: Vec::new(),
            outputs: Vec::new(),
            goals: Vec::new(),
        }
    }

    fn render(&self, p: &FamilyParams) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# {} n={} d={} seed={}", p.family, p.n, p.d, p.seed);
        let _ = writeln!(out, "INPUTS: {}", self.inputs.join(", "));
        let _ = writeln!(out, "OUTPUTS: {}", self.outputs.join(", "));
        for (label, f) in &self.goals {
            let _ = writeln!(out, "GOAL {label}: {f}");
        }
        out
    }
}

/// Generates the `.mpl` text of an instance; a pure function of `p`.
pub fn generate(p: &FamilyParams) -> Result<String> {
    if p.n == 0 || p.d == 0 {
        return Err(out_of_range(p, "n and d must be positive"));
    }
    if p.n > MAX_FAMILY_GOALS {
        return Err(out_of_range(p, "too many goals"));
    }
    let b = match p.family {
        Family::Until => until(p)?,
        Family::Next => next(p),
        Family::Chain => chain(p)?,
        Family::Counter => counter(p)?,
        Family::Robotnav => robotnav(p)?,
    };
    Ok(b.render(p))
}

fn until(p: &FamilyParams) -> Result<Builder> {
    if p.d > 15 {
        return Err(out_of_range(p, "d must be at most 15"));
    }
    let mut b = Builder::new();
    for i in 1..=p.n {
        b.inputs.push(format!("x{i}"));
        let atoms: Vec<String> = (1..=p.d).map(|j| format!("y{i}_{j}")).collect();
        let mut f = atoms[p.d - 1].clone();
        for a in atoms[..p.d - 1].iter().rev() {
            f = format!("{a} U ({f})");
        }
        b.goals.push((format!("g{i}"), format!("!x{i} U ({f})")));
        b.outputs.extend(atoms);
    }
    Ok(b)
}

fn next(p: &FamilyParams) -> Builder {
    let mut b = Builder::new();
    for i in 1..=p.n {
        b.inputs.push(format!("x{i}"));
        b.outputs.push(format!("y{i}"));
        b.goals.push((format!("g{i}"), format!("x{i} -> {}y{i}", "X ".repeat(p.d))));
    }
    b
}

fn chain(p: &FamilyParams) -> Result<Builder> {
    if p.d > 15 {
        return Err(out_of_range(p, "d must be at most 15"));
    }
    let chains = p.n.div_ceil(2);
    let mutexes = p.n / 2;
    let last = |k: usize| format!("a{k}_{}", p.d);
    let mut b = Builder::new();
    for k in 1..=chains {
        let atoms: Vec<String> = (1..=p.d).map(|j| format!("a{k}_{j}")).collect();
        let mut f = atoms[p.d - 1].clone();
        for a in atoms[..p.d - 1].iter().rev() {
            f = format!("{a} & X F({f})");
        }
        b.goals.push((format!("c{k}"), format!("F({f})")));
        b.outputs.extend(atoms);
        if k <= mutexes {
            let other = k % chains + 1;
            b.goals.push((format!("m{k}"), format!("G !{} | G !{}", last(k), last(other))));
        }
    }
    Ok(b)
}

fn value(bits: &[String], v: usize) -> String {
    bits.iter()
        .enumerate()
        .map(|(j, b)| if v >> j & 1 == 1 { b.clone() } else { format!("!{b}") })
        .collect::<Vec<_>>()
        .join(" & ")
}

fn counter(p: &FamilyParams) -> Result<Builder> {
    let k = p.d;
    if k > 8 {
        return Err(out_of_range(p, "at most 8 counter bits"));
    }
    if p.n > 1 << k {
        return Err(out_of_range(p, "more goals than counter values"));
    }
    let bits: Vec<String> = (0..k).map(|j| format!("b{j}")).collect();
    let mut b = Builder::new();
    b.inputs.push("inc".into());
    b.outputs.extend(bits.iter().cloned());
    b.outputs.push("rst".into());

    let mut update = Vec::new();
    for j in 0..k {
        let carry = std::iter::once("inc".to_string())
            .chain(bits[..j].iter().cloned())
            .collect::<Vec<_>>()
            .join(" & ");
        let flip = format!("!({} <-> ({carry}))", bits[j]);
        update.push(format!("({flip} -> WX {b}) & (!{flip} -> WX !{b})", b = bits[j]));
    }
    let policy = format!(
        "G((rst -> WX({})) & (!rst -> ({})))",
        value(&bits, 0),
        update.join(" & ")
    );

    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let mut targets: Vec<usize> = (1..1 << k).collect();
    targets.shuffle(&mut rng);
    targets.insert(0, 0);
    for (i, &v) in targets[..p.n].iter().enumerate() {
        b.goals.push((format!("v{}", i + 1), format!("{policy} & F({})", value(&bits, v))));
    }
    Ok(b)
}

fn robotnav(p: &FamilyParams) -> Result<Builder> {
    let w = p.d;
    if !(2..=8).contains(&w) {
        return Err(out_of_range(p, "grid width must be between 2 and 8"));
    }
    if p.n > w * w - 1 {
        return Err(out_of_range(p, "more goals than target cells"));
    }
    let nb = state_bits(w);
    let rows: Vec<String> = (0..nb).map(|j| format!("r{j}")).collect();
    let cols: Vec<String> = (0..nb).map(|j| format!("c{j}")).collect();
    let at = |r: usize, c: usize| format!("({} & {})", value(&rows, r), value(&cols, c));
    let mut b = Builder::new();
    b.inputs.push("door".into());
    b.outputs.extend(rows.iter().cloned());
    b.outputs.extend(cols.iter().cloned());

    let mut rules = Vec::new();
    for r in 0..w {
        for c in 0..w {
            let mut free = vec![at(r, c)];
            if c + 1 < w {
                free.push(at(r, c + 1));
            }
            let mut moves = format!("WX({})", free.join(" | "));
            if r + 1 < w {
                // The door blocks downward moves out of even columns.
                if c % 2 == 0 {
                    moves = format!("{moves} | (!door & WX {})", at(r + 1, c));
                } else {
                    moves = format!("{moves} | WX {}", at(r + 1, c));
                }
            }
            rules.push(format!("({} -> ({moves}))", at(r, c)));
        }
    }
    let policy = format!("{} & G({})", at(0, 0), rules.join(" & "));

    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let mut cells: Vec<(usize, usize)> = (0..w)
        .flat_map(|r| (0..w).map(move |c| (r, c)))
        .filter(|&cell| cell != (0, 0))
        .collect();
    cells.shuffle(&mut rng);
    for (i, &(r, c)) in cells[..p.n].iter().enumerate() {
        b.goals.push((format!("t{}", i + 1), format!("{policy} & F{}", at(r, c))));
    }
    Ok(b)
}
