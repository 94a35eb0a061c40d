use std::cmp::Ordering;
use std::collections::hash_map::DefaultHasher;
use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

/// An LTLf formula.
///
/// Formulas are hash-consed values: every constructor normalizes its result
/// (flattened, sorted and deduplicated conjunctions/disjunctions, constant
/// folding, double-negation elimination), so structural equality is cheap and
/// the residual obligations produced by the automaton construction stay finite.
#[derive(Clone)]
pub struct Formula(Arc<Node>);

struct Node {
    kind: Kind,
    hash: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    True,
    False,
    Atom(Arc<str>),
    Not(Formula),
    /// Conjunction of at least two operands, sorted and without duplicates.
    And(Vec<Formula>),
    /// Disjunction of at least two operands, sorted and without duplicates.
    Or(Vec<Formula>),
    Implies(Formula, Formula),
    Iff(Formula, Formula),
    /// Strong next: false at the last position.
    Next(Formula),
    /// Weak next: true at the last position.
    WeakNext(Formula),
    Until(Formula, Formula),
    Release(Formula, Formula),
    Eventually(Formula),
    Globally(Formula),
}

impl Formula {
    fn new(kind: Kind) -> Self {
        let mut hasher = DefaultHasher::new();
        kind.hash(&mut hasher);
        Formula(Arc::new(Node {
            hash: hasher.finish(),
            kind,
        }))
    }

    pub fn kind(&self) -> &Kind {
        &self.0.kind
    }

    pub fn tt() -> Self {
        Formula::new(Kind::True)
    }

    pub fn ff() -> Self {
        Formula::new(Kind::False)
    }

    pub fn constant(value: bool) -> Self {
        if value {
            Self::tt()
        } else {
            Self::ff()
        }
    }

    pub fn atom(name: &str) -> Self {
        Formula::new(Kind::Atom(Arc::from(name)))
    }

    pub fn is_true(&self) -> bool {
        matches!(self.kind(), Kind::True)
    }

    pub fn is_false(&self) -> bool {
        matches!(self.kind(), Kind::False)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        match f.kind() {
            Kind::True => Self::ff(),
            Kind::False => Self::tt(),
            Kind::Not(inner) => inner.clone(),
            _ => Formula::new(Kind::Not(f)),
        }
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Self::and_all([a, b])
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Self::or_all([a, b])
    }

    pub fn and_all(operands: impl IntoIterator<Item = Formula>) -> Self {
        Self::junction(operands, true)
    }

    pub fn or_all(operands: impl IntoIterator<Item = Formula>) -> Self {
        Self::junction(operands, false)
    }

    fn junction(operands: impl IntoIterator<Item = Formula>, conj: bool) -> Self {
        // `unit` is the neutral element, `zero` the absorbing one.
        let mut flat = Vec::new();
        for f in operands {
            match (f.kind(), conj) {
                (Kind::True, true) | (Kind::False, false) => {}
                (Kind::False, true) | (Kind::True, false) => return Formula::constant(!conj),
                (Kind::And(children), true) | (Kind::Or(children), false) => {
                    flat.extend(children.iter().cloned())
                }
                _ => flat.push(f),
            }
        }
        flat.sort();
        flat.dedup();
        for f in &flat {
            let neg = Formula::not(f.clone());
            if flat.binary_search(&neg).is_ok() {
                return Formula::constant(!conj);
            }
        }
        match flat.len() {
            0 => Formula::constant(conj),
            1 => flat.pop().unwrap(),
            _ if conj => Formula::new(Kind::And(flat)),
            _ => Formula::new(Kind::Or(flat)),
        }
    }

    pub fn implies(a: Formula, b: Formula) -> Self {
        if a.is_false() || b.is_true() {
            Self::tt()
        } else if a.is_true() {
            b
        } else if b.is_false() {
            Self::not(a)
        } else {
            Formula::new(Kind::Implies(a, b))
        }
    }

    pub fn iff(a: Formula, b: Formula) -> Self {
        match (a.kind(), b.kind()) {
            (Kind::True, _) => b,
            (_, Kind::True) => a,
            (Kind::False, _) => Self::not(b),
            (_, Kind::False) => Self::not(a),
            _ if a == b => Self::tt(),
            _ => Formula::new(Kind::Iff(a, b)),
        }
    }

    pub fn next(f: Formula) -> Self {
        if f.is_false() {
            f
        } else {
            Formula::new(Kind::Next(f))
        }
    }

    pub fn weak_next(f: Formula) -> Self {
        if f.is_true() {
            f
        } else {
            Formula::new(Kind::WeakNext(f))
        }
    }

    pub fn until(a: Formula, b: Formula) -> Self {
        if b.is_true() || b.is_false() || a.is_false() {
            b
        } else {
            Formula::new(Kind::Until(a, b))
        }
    }

    pub fn release(a: Formula, b: Formula) -> Self {
        if b.is_true() || b.is_false() || a.is_true() {
            b
        } else {
            Formula::new(Kind::Release(a, b))
        }
    }

    pub fn eventually(f: Formula) -> Self {
        match f.kind() {
            Kind::True | Kind::False => f,
            _ => Formula::new(Kind::Eventually(f)),
        }
    }

    pub fn globally(f: Formula) -> Self {
        match f.kind() {
            Kind::True | Kind::False => f,
            _ => Formula::new(Kind::Globally(f)),
        }
    }

    /// Immediate sub-formulas, left to right.
    pub fn children(&self) -> Vec<&Formula> {
        match self.kind() {
            Kind::True | Kind::False | Kind::Atom(_) => vec![],
            Kind::Not(f)
            | Kind::Next(f)
            | Kind::WeakNext(f)
            | Kind::Eventually(f)
            | Kind::Globally(f) => vec![f],
            Kind::And(fs) | Kind::Or(fs) => fs.iter().collect(),
            Kind::Implies(a, b) | Kind::Iff(a, b) | Kind::Until(a, b) | Kind::Release(a, b) => {
                vec![a, b]
            }
        }
    }

    /// Names of all atoms occurring in the formula.
    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<String>) {
        if let Kind::Atom(a) = self.kind() {
            out.insert(a.to_string());
        }
        for c in self.children() {
            c.collect_atoms(out);
        }
    }

    /// Number of nodes in the syntax tree.
    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|c| c.size()).sum::<usize>()
    }

    /// Nesting depth; atoms and constants have depth 0.
    pub fn depth(&self) -> usize {
        self.children()
            .iter()
            .map(|c| c.depth() + 1)
            .max()
            .unwrap_or(0)
    }

    /// True when only `True, False, Atom, Not, And, Or, Next, WeakNext, Until`
    /// occur.
    pub fn is_core(&self) -> bool {
        let here = !matches!(
            self.kind(),
            Kind::Implies(..)
                | Kind::Iff(..)
                | Kind::Release(..)
                | Kind::Eventually(_)
                | Kind::Globally(_)
        );
        here && self.children().iter().all(|c| c.is_core())
    }
}

impl PartialEq for Formula {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.hash == other.0.hash && self.0.kind == other.0.kind)
    }
}

impl Eq for Formula {}

impl Hash for Formula {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.0.hash);
    }
}

impl PartialOrd for Formula {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Formula {
    fn cmp(&self, other: &Self) -> Ordering {
        if Arc::ptr_eq(&self.0, &other.0) {
            Ordering::Equal
        } else {
            self.0.kind.cmp(&other.0.kind)
        }
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Prints in the concrete syntax accepted by [`crate::ltlf::parse_formula`].
/// Binary operators are always parenthesized.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |f: &mut fmt::Formatter<'_>, ops: &[Formula], sep: &str| {
            write!(f, "(")?;
            for (i, op) in ops.iter().enumerate() {
                if i > 0 {
                    write!(f, " {sep} ")?;
                }
                write!(f, "{op}")?;
            }
            write!(f, ")")
        };
        match self.kind() {
            Kind::True => write!(f, "true"),
            Kind::False => write!(f, "false"),
            Kind::Atom(a) => write!(f, "{a}"),
            Kind::Not(g) => write!(f, "!{g}"),
            Kind::And(gs) => join(f, gs, "&"),
            Kind::Or(gs) => join(f, gs, "|"),
            Kind::Implies(a, b) => write!(f, "({a} -> {b})"),
            Kind::Iff(a, b) => write!(f, "({a} <-> {b})"),
            Kind::Next(g) => write!(f, "X {g}"),
            Kind::WeakNext(g) => write!(f, "WX {g}"),
            Kind::Until(a, b) => write!(f, "({a} U {b})"),
            Kind::Release(a, b) => write!(f, "({a} R {b})"),
            Kind::Eventually(g) => write!(f, "F {g}"),
            Kind::Globally(g) => write!(f, "G {g}"),
        }
    }
}

/// Rewrites derived operators into the core fragment
/// `{True, False, Atom, Not, And, Or, Next, WeakNext, Until}`.
pub fn desugar(f: &Formula) -> Formula {
    match f.kind() {
        Kind::True | Kind::False | Kind::Atom(_) => f.clone(),
        Kind::Not(g) => Formula::not(desugar(g)),
        Kind::And(gs) => Formula::and_all(gs.iter().map(desugar)),
        Kind::Or(gs) => Formula::or_all(gs.iter().map(desugar)),
        Kind::Implies(a, b) => Formula::or(Formula::not(desugar(a)), desugar(b)),
        Kind::Iff(a, b) => {
            let (a, b) = (desugar(a), desugar(b));
            Formula::or(
                Formula::and(a.clone(), b.clone()),
                Formula::and(Formula::not(a), Formula::not(b)),
            )
        }
        Kind::Next(g) => Formula::next(desugar(g)),
        Kind::WeakNext(g) => Formula::weak_next(desugar(g)),
        Kind::Until(a, b) => Formula::until(desugar(a), desugar(b)),
        Kind::Release(a, b) => Formula::not(Formula::until(
            Formula::not(desugar(a)),
            Formula::not(desugar(b)),
        )),
        Kind::Eventually(g) => Formula::until(Formula::tt(), desugar(g)),
        Kind::Globally(g) => Formula::not(Formula::until(Formula::tt(), Formula::not(desugar(g)))),
    }
}
