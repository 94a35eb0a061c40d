//! Compression of symbol sets into Boolean cubes, used for DOT edge labels.

/// A conjunction of literals: bit `i` of `care` says whether atom `i` occurs,
/// bit `i` of `value` gives its polarity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cube {
    pub care: u32,
    pub value: u32,
}

impl Cube {
    pub fn covers(&self, symbol: u32) -> bool {
        symbol & self.care == self.value
    }

    pub fn render(&self, atoms: &[String]) -> String {
        if self.care == 0 {
            return "true".to_string();
        }
        let lits: Vec<String> = atoms
            .iter()
            .enumerate()
            .filter(|(i, _)| self.care >> i & 1 == 1)
            .map(|(i, a)| {
                if self.value >> i & 1 == 1 {
                    a.clone()
                } else {
                    format!("!{a}")
                }
            })
            .collect();
        lits.join(" & ")
    }
}

/// Covers exactly `symbols` (minterms over `num_atoms` atoms) with prime
/// implicants, chosen greedily. Deterministic.
pub fn cover(symbols: &[u32], num_atoms: usize) -> Vec<Cube> {
    let full = if num_atoms >= 32 { u32::MAX } else { (1u32 << num_atoms) - 1 };
    let mut current: Vec<Cube> = symbols
        .iter()
        .map(|&s| Cube { care: full, value: s })
        .collect();
    current.sort();
    current.dedup();
    let mut primes: Vec<Cube> = Vec::new();
    while !current.is_empty() {
        let present: std::collections::HashSet<Cube> = current.iter().copied().collect();
        let mut merged = vec![false; current.len()];
        let mut next = Vec::new();
        for (i, a) in current.iter().enumerate() {
            let mut care = a.care;
            while care != 0 {
                let bit = care & care.wrapping_neg();
                care &= care - 1;
                let partner = Cube {
                    care: a.care,
                    value: a.value ^ bit,
                };
                if present.contains(&partner) {
                    merged[i] = true;
                    next.push(Cube {
                        care: a.care & !bit,
                        value: a.value & !bit,
                    });
                }
            }
        }
        for (i, c) in current.iter().enumerate() {
            if !merged[i] {
                primes.push(*c);
            }
        }
        next.sort();
        next.dedup();
        current = next;
    }
    // Greedy cover, largest cubes first.
    primes.sort_by_key(|c| (c.care.count_ones(), *c));
    let mut uncovered: Vec<u32> = symbols.to_vec();
    uncovered.sort_unstable();
    uncovered.dedup();
    let mut chosen = Vec::new();
    while !uncovered.is_empty() {
        let best = primes
            .iter()
            .max_by_key(|c| {
                (
                    uncovered.iter().filter(|&&s| c.covers(s)).count(),
                    std::cmp::Reverse(**c),
                )
            })
            .copied()
            .expect("primes cover every minterm");
        uncovered.retain(|&s| !best.covers(s));
        chosen.push(best);
    }
    chosen.sort();
    chosen
}

/// Renders a symbol set as a disjunction of cubes.
pub fn label(symbols: &[u32], atoms: &[String]) -> String {
    cover(symbols, atoms.len())
        .iter()
        .map(|c| c.render(atoms))
        .collect::<Vec<_>>()
        .join(" | ")
}
