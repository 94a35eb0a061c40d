//! Reduced ordered binary decision diagrams.
//!
//! Nodes live in a single arena owned by an [`Engine`]. Node `0` is the false
//! terminal and node `1` the true terminal. Variables are ordered by
//! registration: the first registered variable is the top level. Handles
//! ([`BoolFn`]) remember which engine created them; mixing engines is an error.
//!
//! There is no garbage collection. Instead the engine enforces a ceiling on
//! the number of allocated nodes and reports [`BddError::NodeCeiling`] once an
//! operation would exceed it.

mod dot;

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU32, Ordering};

use rustc_hash::FxHashMap;
use thiserror::Error;

pub type BddResult<T> = std::result::Result<T, BddError>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BddError {
    #[error("decision diagram node ceiling of {ceiling} exceeded")]
    NodeCeiling { ceiling: usize },
    #[error("decision diagram handles belong to different engines")]
    EngineMismatch,
    #[error("variable `{0}` has no value in the assignment")]
    Unassigned(String),
    #[error("unknown variable {0}")]
    UnknownVar(u32),
    #[error("variable {0} is bound twice in one substitution")]
    DuplicateBinding(u32),
}

/// A decision variable; its index is also its level in the order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarId(pub u32);

/// Handle to a function stored in an [`Engine`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BoolFn {
    engine: u32,
    node: u32,
}

impl BoolFn {
    pub fn node(self) -> u32 {
        self.node
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
struct Node {
    var: u32,
    lo: u32,
    hi: u32,
}

const FALSE: u32 = 0;
const TRUE: u32 = 1;
const TERMINAL_VAR: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Op {
    And,
    Or,
    Xor,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Quant {
    Exists,
    Forall,
}

/// Counters reported by [`Engine::stats`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Stats {
    pub nodes: usize,
    pub peak_nodes: usize,
    pub cache_hits: u64,
    pub cache_misses: u64,
    pub cache_clears: u64,
}

/// Cache entries beyond this count trigger a flush of all operation caches.
const CACHE_LIMIT: usize = 1 << 22;

static NEXT_ENGINE: AtomicU32 = AtomicU32::new(1);

pub struct Engine {
    id: u32,
    nodes: Vec<Node>,
    unique: FxHashMap<Node, u32>,
    apply_cache: FxHashMap<(Op, u32, u32), u32>,
    not_cache: FxHashMap<u32, u32>,
    ite_cache: FxHashMap<(u32, u32, u32), u32>,
    quant_cache: FxHashMap<(Quant, u32, u32), u32>,
    names: Vec<String>,
    var_nodes: Vec<u32>,
    ceiling: usize,
    stats: Stats,
}

impl Default for Engine {
    fn default() -> Self {
        Self::new()
    }
}

impl std::fmt::Debug for Engine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Engine")
            .field("id", &self.id)
            .field("vars", &self.names.len())
            .field("nodes", &self.nodes.len())
            .finish()
    }
}

impl Engine {
    pub fn new() -> Self {
        Self::with_ceiling(usize::MAX)
    }

    pub fn with_ceiling(ceiling: usize) -> Self {
        let terminal = |v| Node {
            var: TERMINAL_VAR,
            lo: v,
            hi: v,
        };
        Engine {
            id: NEXT_ENGINE.fetch_add(1, Ordering::Relaxed),
            nodes: vec![terminal(FALSE), terminal(TRUE)],
            unique: FxHashMap::default(),
            apply_cache: FxHashMap::default(),
            not_cache: FxHashMap::default(),
            ite_cache: FxHashMap::default(),
            quant_cache: FxHashMap::default(),
            names: Vec::new(),
            var_nodes: Vec::new(),
            ceiling,
            stats: Stats {
                nodes: 2,
                peak_nodes: 2,
                ..Stats::default()
            },
        }
    }

    pub fn set_ceiling(&mut self, ceiling: usize) {
        self.ceiling = ceiling;
    }

    pub fn ceiling(&self) -> usize {
        self.ceiling
    }

    /// Errors if the arena already holds more nodes than the ceiling allows.
    pub fn check_ceiling(&self) -> BddResult<()> {
        if self.nodes.len() > self.ceiling {
            Err(BddError::NodeCeiling {
                ceiling: self.ceiling,
            })
        } else {
            Ok(())
        }
    }

    pub fn stats(&self) -> Stats {
        Stats {
            nodes: self.nodes.len(),
            ..self.stats
        }
    }

    /// Registers a new variable below all existing ones.
    pub fn new_var(&mut self, name: impl Into<String>) -> VarId {
        let v = self.names.len() as u32;
        self.names.push(name.into());
        // Variable nodes are created unconditionally; the ceiling applies to
        // nodes built by operations.
        let node = self.mk_unchecked(v, FALSE, TRUE);
        self.var_nodes.push(node);
        VarId(v)
    }

    pub fn num_vars(&self) -> usize {
        self.names.len()
    }

    pub fn var_name(&self, v: VarId) -> &str {
        &self.names[v.0 as usize]
    }

    pub fn var_by_name(&self, name: &str) -> Option<VarId> {
        self.names.iter().position(|n| n == name).map(|i| VarId(i as u32))
    }

    fn handle(&self, node: u32) -> BoolFn {
        BoolFn {
            engine: self.id,
            node,
        }
    }

    fn own(&self, f: BoolFn) -> BddResult<u32> {
        if f.engine == self.id {
            Ok(f.node)
        } else {
            Err(BddError::EngineMismatch)
        }
    }

    fn own_panic(&self, f: BoolFn) -> u32 {
        assert_eq!(f.engine, self.id, "handle used with a foreign engine");
        f.node
    }

    pub fn tt(&self) -> BoolFn {
        self.handle(TRUE)
    }

    pub fn ff(&self) -> BoolFn {
        self.handle(FALSE)
    }

    pub fn constant(&self, value: bool) -> BoolFn {
        self.handle(if value { TRUE } else { FALSE })
    }

    /// Projection function of `v`. Panics if `v` was not registered here;
    /// see [`Engine::try_var`].
    pub fn var(&self, v: VarId) -> BoolFn {
        self.handle(self.var_nodes[v.0 as usize])
    }

    pub fn try_var(&self, v: VarId) -> BddResult<BoolFn> {
        self.var_nodes
            .get(v.0 as usize)
            .map(|&n| self.handle(n))
            .ok_or(BddError::UnknownVar(v.0))
    }

    pub fn literal(&mut self, v: VarId, positive: bool) -> BddResult<BoolFn> {
        let f = self.var(v);
        if positive {
            Ok(f)
        } else {
            self.not(f)
        }
    }

    pub fn is_true(&self, f: BoolFn) -> bool {
        self.own_panic(f) == TRUE
    }

    pub fn is_false(&self, f: BoolFn) -> bool {
        self.own_panic(f) == FALSE
    }

    fn level(&self, node: u32) -> u32 {
        self.nodes[node as usize].var
    }

    fn mk_unchecked(&mut self, var: u32, lo: u32, hi: u32) -> u32 {
        if lo == hi {
            return lo;
        }
        let node = Node { var, lo, hi };
        if let Some(&id) = self.unique.get(&node) {
            return id;
        }
        let id = self.nodes.len() as u32;
        self.nodes.push(node);
        self.unique.insert(node, id);
        self.stats.peak_nodes = self.stats.peak_nodes.max(self.nodes.len());
        id
    }

    fn mk(&mut self, var: u32, lo: u32, hi: u32) -> BddResult<u32> {
        if lo == hi {
            return Ok(lo);
        }
        let node = Node { var, lo, hi };
        if let Some(&id) = self.unique.get(&node) {
            return Ok(id);
        }
        if self.nodes.len() >= self.ceiling {
            return Err(BddError::NodeCeiling {
                ceiling: self.ceiling,
            });
        }
        Ok(self.mk_unchecked(var, lo, hi))
    }

    pub fn clear_caches(&mut self) {
        self.apply_cache.clear();
        self.not_cache.clear();
        self.ite_cache.clear();
        self.quant_cache.clear();
        self.stats.cache_clears += 1;
    }

    fn maybe_flush(&mut self) {
        let total = self.apply_cache.len()
            + self.not_cache.len()
            + self.ite_cache.len()
            + self.quant_cache.len();
        if total > CACHE_LIMIT {
            self.clear_caches();
        }
    }

    fn cofactors(&self, node: u32, var: u32) -> (u32, u32) {
        let n = self.nodes[node as usize];
        if n.var == var {
            (n.lo, n.hi)
        } else {
            (node, node)
        }
    }

    fn not_rec(&mut self, f: u32) -> BddResult<u32> {
        match f {
            FALSE => return Ok(TRUE),
            TRUE => return Ok(FALSE),
            _ => {}
        }
        if let Some(&r) = self.not_cache.get(&f) {
            self.stats.cache_hits += 1;
            return Ok(r);
        }
        self.stats.cache_misses += 1;
        let n = self.nodes[f as usize];
        let lo = self.not_rec(n.lo)?;
        let hi = self.not_rec(n.hi)?;
        let r = self.mk(n.var, lo, hi)?;
        self.not_cache.insert(f, r);
        self.not_cache.insert(r, f);
        Ok(r)
    }

    fn apply_rec(&mut self, op: Op, f: u32, g: u32) -> BddResult<u32> {
        match op {
            Op::And => {
                if f == FALSE || g == FALSE {
                    return Ok(FALSE);
                }
                if f == TRUE || f == g {
                    return Ok(g);
                }
                if g == TRUE {
                    return Ok(f);
                }
            }
            Op::Or => {
                if f == TRUE || g == TRUE {
                    return Ok(TRUE);
                }
                if f == FALSE || f == g {
                    return Ok(g);
                }
                if g == FALSE {
                    return Ok(f);
                }
            }
            Op::Xor => {
                if f == g {
                    return Ok(FALSE);
                }
                if f == FALSE {
                    return Ok(g);
                }
                if g == FALSE {
                    return Ok(f);
                }
                if f == TRUE {
                    return self.not_rec(g);
                }
                if g == TRUE {
                    return self.not_rec(f);
                }
            }
        }
        let key = (op, f.min(g), f.max(g));
        if let Some(&r) = self.apply_cache.get(&key) {
            self.stats.cache_hits += 1;
            return Ok(r);
        }
        self.stats.cache_misses += 1;
        let var = self.level(f).min(self.level(g));
        let (f0, f1) = self.cofactors(f, var);
        let (g0, g1) = self.cofactors(g, var);
        let lo = self.apply_rec(op, f0, g0)?;
        let hi = self.apply_rec(op, f1, g1)?;
        let r = self.mk(var, lo, hi)?;
        self.apply_cache.insert(key, r);
        Ok(r)
    }

    fn ite_rec(&mut self, f: u32, g: u32, h: u32) -> BddResult<u32> {
        if f == TRUE {
            return Ok(g);
        }
        if f == FALSE {
            return Ok(h);
        }
        if g == h {
            return Ok(g);
        }
        if g == TRUE && h == FALSE {
            return Ok(f);
        }
        if g == FALSE && h == TRUE {
            return self.not_rec(f);
        }
        if h == FALSE {
            return self.apply_rec(Op::And, f, g);
        }
        if g == TRUE {
            return self.apply_rec(Op::Or, f, h);
        }
        if let Some(&r) = self.ite_cache.get(&(f, g, h)) {
            self.stats.cache_hits += 1;
            return Ok(r);
        }
        self.stats.cache_misses += 1;
        let var = self.level(f).min(self.level(g)).min(self.level(h));
        let (f0, f1) = self.cofactors(f, var);
        let (g0, g1) = self.cofactors(g, var);
        let (h0, h1) = self.cofactors(h, var);
        let lo = self.ite_rec(f0, g0, h0)?;
        let hi = self.ite_rec(f1, g1, h1)?;
        let r = self.mk(var, lo, hi)?;
        self.ite_cache.insert((f, g, h), r);
        Ok(r)
    }

    fn quant_rec(&mut self, q: Quant, f: u32, cube: u32) -> BddResult<u32> {
        if f <= TRUE || cube == TRUE {
            return Ok(f);
        }
        let fv = self.level(f);
        let mut cube = cube;
        while cube != TRUE && self.level(cube) < fv {
            cube = self.nodes[cube as usize].hi;
        }
        if cube == TRUE {
            return Ok(f);
        }
        if let Some(&r) = self.quant_cache.get(&(q, f, cube)) {
            self.stats.cache_hits += 1;
            return Ok(r);
        }
        self.stats.cache_misses += 1;
        let n = self.nodes[f as usize];
        let r = if self.level(cube) == fv {
            let rest = self.nodes[cube as usize].hi;
            let lo = self.quant_rec(q, n.lo, rest)?;
            let hi = self.quant_rec(q, n.hi, rest)?;
            match q {
                Quant::Exists => self.apply_rec(Op::Or, lo, hi)?,
                Quant::Forall => self.apply_rec(Op::And, lo, hi)?,
            }
        } else {
            let lo = self.quant_rec(q, n.lo, cube)?;
            let hi = self.quant_rec(q, n.hi, cube)?;
            self.mk(n.var, lo, hi)?
        };
        self.quant_cache.insert((q, f, cube), r);
        Ok(r)
    }

    fn finish(&mut self, r: BddResult<u32>) -> BddResult<BoolFn> {
        self.maybe_flush();
        r.map(|n| self.handle(n))
    }

    pub fn not(&mut self, f: BoolFn) -> BddResult<BoolFn> {
        let f = self.own(f)?;
        let r = self.not_rec(f);
        self.finish(r)
    }

    pub fn and(&mut self, f: BoolFn, g: BoolFn) -> BddResult<BoolFn> {
        let (f, g) = (self.own(f)?, self.own(g)?);
        let r = self.apply_rec(Op::And, f, g);
        self.finish(r)
    }

    pub fn or(&mut self, f: BoolFn, g: BoolFn) -> BddResult<BoolFn> {
        let (f, g) = (self.own(f)?, self.own(g)?);
        let r = self.apply_rec(Op::Or, f, g);
        self.finish(r)
    }

    pub fn xor(&mut self, f: BoolFn, g: BoolFn) -> BddResult<BoolFn> {
        let (f, g) = (self.own(f)?, self.own(g)?);
        let r = self.apply_rec(Op::Xor, f, g);
        self.finish(r)
    }

    pub fn implies(&mut self, f: BoolFn, g: BoolFn) -> BddResult<BoolFn> {
        let nf = self.not(f)?;
        self.or(nf, g)
    }

    pub fn iff(&mut self, f: BoolFn, g: BoolFn) -> BddResult<BoolFn> {
        let x = self.xor(f, g)?;
        self.not(x)
    }

    pub fn ite(&mut self, f: BoolFn, g: BoolFn, h: BoolFn) -> BddResult<BoolFn> {
        let (f, g, h) = (self.own(f)?, self.own(g)?, self.own(h)?);
        let r = self.ite_rec(f, g, h);
        self.finish(r)
    }

    pub fn and_all(&mut self, fs: impl IntoIterator<Item = BoolFn>) -> BddResult<BoolFn> {
        let mut acc = self.tt();
        for f in fs {
            acc = self.and(acc, f)?;
        }
        Ok(acc)
    }

    pub fn or_all(&mut self, fs: impl IntoIterator<Item = BoolFn>) -> BddResult<BoolFn> {
        let mut acc = self.ff();
        for f in fs {
            acc = self.or(acc, f)?;
        }
        Ok(acc)
    }

    /// Positive conjunction of `vars`, built bottom-up.
    pub fn cube(&mut self, vars: &[VarId]) -> BddResult<BoolFn> {
        let mut levels: Vec<u32> = vars.iter().map(|v| v.0).collect();
        levels.sort_unstable();
        levels.dedup();
        let mut node = TRUE;
        for &v in levels.iter().rev() {
            node = self.mk(v, FALSE, node)?;
        }
        Ok(self.handle(node))
    }

    /// Function over `vars` whose value at the assignment with bit `i` of
    /// `index` giving `vars[i]` is `table(index)`. Built by Shannon expansion
    /// in level order, so the cost is linear in the table size.
    pub fn from_truth_table(
        &mut self,
        vars: &[VarId],
        table: &dyn Fn(u64) -> bool,
    ) -> BddResult<BoolFn> {
        let mut order: Vec<(u32, usize)> = vars.iter().enumerate().map(|(i, v)| (v.0, i)).collect();
        order.sort_unstable();
        if order.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(BddError::DuplicateBinding(order[0].0));
        }
        if let Some(&(v, _)) = order.iter().find(|(v, _)| *v as usize >= self.names.len()) {
            return Err(BddError::UnknownVar(v));
        }
        let r = self.table_rec(&order, 0, table);
        self.finish(r)
    }

    fn table_rec(
        &mut self,
        order: &[(u32, usize)],
        index: u64,
        table: &dyn Fn(u64) -> bool,
    ) -> BddResult<u32> {
        match order.split_first() {
            None => Ok(if table(index) { TRUE } else { FALSE }),
            Some((&(var, bit), rest)) => {
                let lo = self.table_rec(rest, index, table)?;
                let hi = self.table_rec(rest, index | 1 << bit, table)?;
                self.mk(var, lo, hi)
            }
        }
    }

    fn quantify(&mut self, q: Quant, f: BoolFn, vars: &[VarId]) -> BddResult<BoolFn> {
        let f = self.own(f)?;
        let cube = self.cube(vars)?.node;
        let r = self.quant_rec(q, f, cube);
        self.finish(r)
    }

    pub fn exists(&mut self, f: BoolFn, vars: &[VarId]) -> BddResult<BoolFn> {
        self.quantify(Quant::Exists, f, vars)
    }

    pub fn forall(&mut self, f: BoolFn, vars: &[VarId]) -> BddResult<BoolFn> {
        self.quantify(Quant::Forall, f, vars)
    }

    /// Simultaneous substitution of functions for variables.
    pub fn vector_compose(&mut self, f: BoolFn, map: &[(VarId, BoolFn)]) -> BddResult<BoolFn> {
        let f = self.own(f)?;
        let mut subst: Vec<Option<u32>> = vec![None; self.names.len()];
        for &(v, g) in map {
            let g = self.own(g)?;
            let slot = subst
                .get_mut(v.0 as usize)
                .ok_or(BddError::UnknownVar(v.0))?;
            if slot.is_some() {
                return Err(BddError::DuplicateBinding(v.0));
            }
            *slot = Some(g);
        }
        let mut memo = FxHashMap::default();
        let r = self.compose_rec(f, &subst, &mut memo);
        self.finish(r)
    }

    fn compose_rec(
        &mut self,
        f: u32,
        subst: &[Option<u32>],
        memo: &mut FxHashMap<u32, u32>,
    ) -> BddResult<u32> {
        if f <= TRUE {
            return Ok(f);
        }
        if let Some(&r) = memo.get(&f) {
            return Ok(r);
        }
        let n = self.nodes[f as usize];
        let lo = self.compose_rec(n.lo, subst, memo)?;
        let hi = self.compose_rec(n.hi, subst, memo)?;
        let r = match subst[n.var as usize] {
            Some(g) => self.ite_rec(g, hi, lo)?,
            None => {
                let v = self.var_nodes[n.var as usize];
                self.ite_rec(v, hi, lo)?
            }
        };
        memo.insert(f, r);
        Ok(r)
    }

    pub fn compose(&mut self, f: BoolFn, v: VarId, g: BoolFn) -> BddResult<BoolFn> {
        self.vector_compose(f, &[(v, g)])
    }

    /// Cofactor with respect to a partial assignment.
    pub fn restrict(&mut self, f: BoolFn, assignment: &[(VarId, bool)]) -> BddResult<BoolFn> {
        let f = self.own(f)?;
        let mut fixed: Vec<Option<bool>> = vec![None; self.names.len()];
        for &(v, b) in assignment {
            *fixed
                .get_mut(v.0 as usize)
                .ok_or(BddError::UnknownVar(v.0))? = Some(b);
        }
        let mut memo = FxHashMap::default();
        let r = self.restrict_rec(f, &fixed, &mut memo);
        self.finish(r)
    }

    fn restrict_rec(
        &mut self,
        f: u32,
        fixed: &[Option<bool>],
        memo: &mut FxHashMap<u32, u32>,
    ) -> BddResult<u32> {
        if f <= TRUE {
            return Ok(f);
        }
        if let Some(&r) = memo.get(&f) {
            return Ok(r);
        }
        let n = self.nodes[f as usize];
        let r = match fixed[n.var as usize] {
            Some(false) => self.restrict_rec(n.lo, fixed, memo)?,
            Some(true) => self.restrict_rec(n.hi, fixed, memo)?,
            None => {
                let lo = self.restrict_rec(n.lo, fixed, memo)?;
                let hi = self.restrict_rec(n.hi, fixed, memo)?;
                self.mk(n.var, lo, hi)?
            }
        };
        memo.insert(f, r);
        Ok(r)
    }

    /// Evaluates `f` under `assignment`; every variable on the evaluation
    /// path must be assigned.
    pub fn evaluate(&self, f: BoolFn, assignment: &BTreeMap<VarId, bool>) -> BddResult<bool> {
        let mut node = self.own(f)?;
        while node > TRUE {
            let n = self.nodes[node as usize];
            match assignment.get(&VarId(n.var)) {
                Some(true) => node = n.hi,
                Some(false) => node = n.lo,
                None => return Err(BddError::Unassigned(self.names[n.var as usize].clone())),
            }
        }
        Ok(node == TRUE)
    }

    /// Evaluates `f` under a total assignment indexed by variable.
    pub fn eval_total(&self, f: BoolFn, values: &[bool]) -> bool {
        let mut node = self.own_panic(f);
        while node > TRUE {
            let n = self.nodes[node as usize];
            node = if values[n.var as usize] { n.hi } else { n.lo };
        }
        node == TRUE
    }

    /// One satisfying path, preferring the low branch whenever it is
    /// satisfiable. Only variables on the path are assigned.
    pub fn pick_assignment(&self, f: BoolFn) -> Option<Vec<(VarId, bool)>> {
        let mut node = self.own_panic(f);
        if node == FALSE {
            return None;
        }
        let mut path = Vec::new();
        while node > TRUE {
            let n = self.nodes[node as usize];
            if n.lo != FALSE {
                path.push((VarId(n.var), false));
                node = n.lo;
            } else {
                path.push((VarId(n.var), true));
                node = n.hi;
            }
        }
        Some(path)
    }

    /// A satisfying assignment over exactly the variables in `over`, or
    /// `None` if `f` is unsatisfiable. `f` must not depend on variables
    /// outside `over`; variables not on the chosen path are set to false.
    pub fn pick_over(&self, f: BoolFn, over: &[VarId]) -> Option<BTreeMap<VarId, bool>> {
        let path = self.pick_assignment(f)?;
        let mut out: BTreeMap<VarId, bool> = over.iter().map(|&v| (v, false)).collect();
        for (v, b) in path {
            out.insert(v, b);
        }
        Some(out)
    }

    /// Number of satisfying assignments over all registered variables.
    pub fn sat_count(&self, f: BoolFn) -> u128 {
        let f = self.own_panic(f);
        let nvars = self.names.len() as u32;
        let mut memo: FxHashMap<u32, u128> = FxHashMap::default();
        let top = self.level_or(f, nvars);
        self.count_rec(f, nvars, &mut memo) << top
    }

    fn level_or(&self, node: u32, nvars: u32) -> u32 {
        if node <= TRUE {
            nvars
        } else {
            self.level(node)
        }
    }

    /// Models of the sub-diagram over the variables at or below its level.
    fn count_rec(&self, f: u32, nvars: u32, memo: &mut FxHashMap<u32, u128>) -> u128 {
        match f {
            FALSE => return 0,
            TRUE => return 1,
            _ => {}
        }
        if let Some(&c) = memo.get(&f) {
            return c;
        }
        let n = self.nodes[f as usize];
        let lo = self.count_rec(n.lo, nvars, memo) << (self.level_or(n.lo, nvars) - n.var - 1);
        let hi = self.count_rec(n.hi, nvars, memo) << (self.level_or(n.hi, nvars) - n.var - 1);
        let c = lo + hi;
        memo.insert(f, c);
        c
    }

    fn reachable_nodes(&self, f: u32) -> Vec<u32> {
        let mut seen = rustc_hash::FxHashSet::default();
        let mut stack = vec![f];
        let mut out = Vec::new();
        while let Some(n) = stack.pop() {
            if !seen.insert(n) {
                continue;
            }
            out.push(n);
            if n > TRUE {
                let node = self.nodes[n as usize];
                stack.push(node.hi);
                stack.push(node.lo);
            }
        }
        out
    }

    /// Nodes reachable from `f`, terminals included.
    pub fn node_count(&self, f: BoolFn) -> usize {
        self.reachable_nodes(self.own_panic(f)).len()
    }

    /// Variables `f` depends on, in order.
    pub fn support(&self, f: BoolFn) -> Vec<VarId> {
        let mut vars: Vec<u32> = self
            .reachable_nodes(self.own_panic(f))
            .into_iter()
            .filter(|&n| n > TRUE)
            .map(|n| self.level(n))
            .collect();
        vars.sort_unstable();
        vars.dedup();
        vars.into_iter().map(VarId).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn engine(n: usize) -> (Engine, Vec<VarId>) {
        let mut e = Engine::new();
        let vs = (0..n).map(|i| e.new_var(format!("v{i}"))).collect();
        (e, vs)
    }

    #[test]
    fn canonical_forms() {
        let (mut e, v) = engine(3);
        let (a, b) = (e.var(v[0]), e.var(v[1]));
        let ab = e.and(a, b).unwrap();
        let ba = e.and(b, a).unwrap();
        assert_eq!(ab, ba);
        let na = e.not(a).unwrap();
        let taut = e.or(a, na).unwrap();
        assert!(e.is_true(taut));
        let nna = e.not(na).unwrap();
        assert_eq!(nna, a);
        // De Morgan
        let nab = e.not(ab).unwrap();
        let nb = e.not(b).unwrap();
        let dm = e.or(na, nb).unwrap();
        assert_eq!(nab, dm);
    }

    #[test]
    fn quantifiers() {
        let (mut e, v) = engine(3);
        let (a, b, c) = (e.var(v[0]), e.var(v[1]), e.var(v[2]));
        let ab = e.and(a, b).unwrap();
        let f = e.or(ab, c).unwrap();
        let ex = e.exists(f, &[v[0]]).unwrap();
        let bc = e.or(b, c).unwrap();
        assert_eq!(ex, bc);
        let fa = e.forall(f, &[v[0]]).unwrap();
        assert_eq!(fa, c);
        // ∀ = ¬∃¬
        let nf = e.not(f).unwrap();
        let exn = e.exists(nf, &[v[0], v[2]]).unwrap();
        let dual = e.not(exn).unwrap();
        let fa2 = e.forall(f, &[v[0], v[2]]).unwrap();
        assert_eq!(dual, fa2);
    }

    #[test]
    fn compose_and_restrict() {
        let (mut e, v) = engine(3);
        let (a, b, c) = (e.var(v[0]), e.var(v[1]), e.var(v[2]));
        let nb = e.not(b).unwrap();
        let f = e.and(a, nb).unwrap();
        // swap a and b simultaneously
        let g = e.vector_compose(f, &[(v[0], b), (v[1], a)]).unwrap();
        let na = e.not(a).unwrap();
        let expected = e.and(b, na).unwrap();
        assert_eq!(g, expected);
        let h = e.compose(f, v[1], c).unwrap();
        let nc = e.not(c).unwrap();
        let expected = e.and(a, nc).unwrap();
        assert_eq!(h, expected);
        let r = e.restrict(f, &[(v[0], true)]).unwrap();
        assert_eq!(r, nb);
        let r = e.restrict(f, &[(v[0], false)]).unwrap();
        assert!(e.is_false(r));
    }

    #[test]
    fn counting_and_evaluation() {
        let (mut e, v) = engine(4);
        let (a, c) = (e.var(v[0]), e.var(v[2]));
        let f = e.or(a, c).unwrap();
        assert_eq!(e.sat_count(f), 12);
        assert_eq!(e.sat_count(e.tt()), 16);
        assert_eq!(e.sat_count(e.ff()), 0);
        assert_eq!(e.support(f), vec![v[0], v[2]]);
        assert_eq!(e.node_count(f), 4);
        let mut asg = BTreeMap::from([(v[0], false)]);
        assert!(matches!(e.evaluate(f, &asg), Err(BddError::Unassigned(n)) if n == "v2"));
        asg.insert(v[2], true);
        assert!(e.evaluate(f, &asg).unwrap());
        assert_eq!(e.pick_assignment(f), Some(vec![(v[0], false), (v[2], true)]));
        assert_eq!(e.pick_assignment(e.ff()), None);
        let picked = e.pick_over(f, &[v[0], v[1], v[2]]).unwrap();
        assert_eq!(picked.len(), 3);
        assert!(e.evaluate(f, &picked).unwrap());
        assert!(e.try_var(VarId(9)).is_err());
        let dup = e.vector_compose(f, &[(v[0], c), (v[0], a)]);
        assert_eq!(dup, Err(BddError::DuplicateBinding(0)));
    }

    #[test]
    fn ceiling_and_foreign_handles() {
        let (mut e, v) = engine(8);
        e.set_ceiling(e.stats().nodes + 2);
        let mut acc = e.ff();
        let mut result = Ok(());
        for i in 0..4 {
            let x = e.var(v[2 * i]);
            let y = e.var(v[2 * i + 1]);
            match e.xor(x, y).and_then(|t| e.or(acc, t)) {
                Ok(t) => acc = t,
                Err(err) => {
                    result = Err(err);
                    break;
                }
            }
        }
        assert!(matches!(result, Err(BddError::NodeCeiling { .. })));

        let (other, w) = engine(1);
        let foreign = other.var(w[0]);
        assert_eq!(e.and(foreign, acc), Err(BddError::EngineMismatch));
    }
}
