//! Acceptance suite. Runs without the libtest harness so that every
//! criterion prints exactly one line, then exits non-zero if any failed.

mod common;

use std::collections::BTreeMap;
use std::ops::ControlFlow;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::{close_down, g, random_pairs};
use mpsynth::bench::{compare_compiled, generate, CompareOptions, Family, FamilyParams};
use mpsynth::dfa::{build_dfa, BuildOptions};
use mpsynth::enumeration::{enumerate_maximal, EnumMode, EnumOptions};
use mpsynth::explicit::{
    downward_close, extract_strategy, max_op, oracle_realizable, pre_c, pre_mc, pre_mmc, win_m,
    win_m_naive, win_mm, ExplicitOptions, Game, MaxRelation, WinRelation,
};
use mpsynth::fixtures::{fig1_alphabet, fig1_arena, fig1_dfas};
use mpsynth::gen::{random_formula, random_instance, Instance, InstanceParams};
use mpsynth::harness::{explore, verify_exhaustive, Verification};
use mpsynth::ltlf::satisfies;
use mpsynth::pipeline::{compile_text, Compiled};
use mpsynth::symbolic::{
    maximal_assignments, query_realizable, solve, symbolic_fixpoint, symbolic_strategy,
    winning_at, SymbolicArena, SymbolicOptions, WinningFormulas,
};
use mpsynth::{BoolFn, Engine, GoalSet, VarId};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn lib<T>(r: mpsynth::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn bdd<T>(r: Result<T, mpsynth::bdd::BddError>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

struct Solved {
    inst: Instance,
    w: WinRelation,
    mm: MaxRelation,
    sa: SymbolicArena,
    wf: WinningFormulas,
}

impl Solved {
    fn new(inst: Instance) -> Result<Self, String> {
        let w = lib(win_m(&inst.arena, &ExplicitOptions::default()))?;
        let mm = lib(win_mm(&inst.arena, &ExplicitOptions::default()))?;
        let (sa, wf) = lib(solve(&inst.compiled, &SymbolicOptions::default()))?;
        Ok(Solved { inst, w, mm, sa, wf })
    }

    fn bound(&self) -> u128 {
        (self.inst.arena.num_states() as u128) << self.inst.arena.num_goals()
    }
}

/// 100 instances over one input and two outputs, 20 over two inputs and one
/// output.
fn instances() -> Result<Vec<Solved>, String> {
    let wide = InstanceParams {
        inputs: vec!["x1".into(), "x2".into()],
        outputs: vec!["y1".into()],
        ..InstanceParams::default()
    };
    (0..120u64)
        .map(|seed| {
            let p = if seed < 100 { InstanceParams::default() } else { wide.clone() };
            Solved::new(lib(random_instance(seed, &p))?)
        })
        .collect()
}

struct FamilyRun {
    name: String,
    compiled: Compiled,
    sa: SymbolicArena,
    wf: WinningFormulas,
    states: u128,
}

fn family_params() -> Vec<FamilyParams> {
    let mut out = Vec::new();
    for family in Family::ALL {
        let ds: &[usize] = match family {
            Family::Counter | Family::Robotnav => &[2, 3],
            _ => &[1, 2, 3],
        };
        for &d in ds {
            for n in 1..=4 {
                out.push(FamilyParams::new(family, n, d));
            }
        }
    }
    out
}

fn families() -> Result<Vec<FamilyRun>, String> {
    let mut out = Vec::new();
    for p in family_params() {
        // Parameter combinations outside a family's range are skipped.
        let Ok(text) = generate(&p) else { continue };
        let compiled = lib(compile_text(&text, &BuildOptions::default()))?;
        let (sa, wf) = lib(solve(&compiled, &SymbolicOptions::default()))?;
        let states = lib(sa.reachable_states(mpsynth::symbolic::DEFAULT_NODE_CEILING))?;
        out.push(FamilyRun {
            name: format!("{}({},{})", p.family, p.n, p.d),
            compiled,
            sa,
            wf,
            states,
        });
    }
    Ok(out)
}

fn fig1_criterion() -> Outcome {
    let a = lib(fig1_arena())?;
    let w = lib(win_m(&a, &ExplicitOptions::default()))?;
    let s = |t: u32| a.state_of(&[t, t, t]).expect("fixture state");
    let all: Vec<GoalSet> = (0..8).map(GoalSet).collect();
    let expected: [(u32, Vec<GoalSet>); 4] = [
        (0, vec![g(&[0, 1]), g(&[1, 2])]),
        (1, vec![g(&[0, 1, 2])]),
        (2, vec![g(&[0, 1])]),
        (3, vec![g(&[1, 2])]),
    ];
    for (t, maxima) in &expected {
        let annotated: Vec<GoalSet> = all.iter().copied().filter(|&c| w.contains(s(*t), c)).collect();
        let closure: Vec<GoalSet> = all
            .iter()
            .copied()
            .filter(|c| maxima.iter().any(|m| c.is_subset(*m)))
            .collect();
        ensure!(annotated == closure, "win_m at s{t}: {annotated:?}");
    }
    let mm = lib(win_mm(&a, &ExplicitOptions::default()))?;
    for (t, maxima) in &expected {
        ensure!(mm.at(s(*t)) == &maxima[..], "win_mm at s{t}: {:?}", mm.at(s(*t)));
    }

    let mut sa = lib(SymbolicArena::encode(
        fig1_dfas(),
        fig1_alphabet(),
        Engine::new(),
        Default::default(),
    ))?;
    let wf = lib(symbolic_fixpoint(&mut sa, None))?;
    let nk1 = bdd(sa.engine.literal(sa.k[0], false))?;
    let nk3 = bdd(sa.engine.literal(sa.k[2], false))?;
    let either = bdd(sa.engine.or(nk1, nk3))?;
    let at_z0 = lib(winning_at(&mut sa, &wf, &[0, 0, 0]))?;
    ensure!(at_z0 == either, "w(z0, K) is not the diagram of !k1 | !k3");
    let at_z2 = lib(winning_at(&mut sa, &wf, &[2, 2, 2]))?;
    ensure!(at_z2 == nk3, "w(z2, K) is not the diagram of !k3");
    let enc = sa.encode_state(&[2, 2, 2]);
    let w0_z2 = bdd(sa.engine.restrict(wf.w0, &enc))?;
    ensure!(w0_z2 == nk3, "w0(z2, K) is not the diagram of !k3");
    Ok("win_m at s0..s3, win_mm, w(z0), w(z2), w0(z2) exact".into())
}

fn dfa_criterion() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let pools: Vec<_> = (1..=3)
        .map(|k| {
            let atoms = common::atoms(k);
            let traces = common::traces(&atoms, 5);
            (atoms, traces)
        })
        .collect();
    let mut checks = 0usize;
    let formulas = 510;
    for i in 0..formulas {
        let (atoms, traces) = &pools[i % 3];
        let f = random_formula(&mut rng, atoms, 4);
        let d = lib(build_dfa(&f, atoms, &BuildOptions::default()))?;
        for t in traces {
            let want = satisfies(t, &f);
            ensure!(lib(d.accepts(t))? == want, "{f} on {:?}: evaluator says {want}", t.0);
            checks += 1;
        }
    }
    Ok(format!("{formulas} formulas, {checks} traces, 0 mismatches"))
}

fn oracle_criterion(solved: &mut [Solved]) -> Outcome {
    let mut pairs = 0usize;
    for s in solved.iter_mut() {
        let a = &s.inst.arena;
        let n = a.num_goals();
        for st in 0..a.num_states() {
            let tuple = a.tuple(st).to_vec();
            for c in (0u32..1 << n).map(GoalSet) {
                let explicit = s.w.contains(st, c);
                let symbolic = lib(query_realizable(&s.sa, &s.wf, &tuple, c))?;
                ensure!(
                    explicit == symbolic,
                    "seed {}: state {st}, {c:?}: win_m {explicit}, symbolic {symbolic}",
                    s.inst.seed
                );
                if st == a.initial() {
                    let oracle = oracle_realizable(a, st, c, a.num_states());
                    ensure!(
                        explicit == oracle,
                        "seed {}: {c:?} at s0: win_m {explicit}, oracle {oracle}",
                        s.inst.seed
                    );
                }
                pairs += 1;
            }
        }
    }
    Ok(format!("{} instances, {pairs} state/goal-set pairs, 0 mismatches", solved.len()))
}

fn operator_criterion() -> Outcome {
    let p = InstanceParams {
        max_product: 40,
        ..InstanceParams::default()
    };
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let count = 60;
    for seed in 1000..1000 + count {
        let inst = lib(random_instance(seed, &p))?;
        let a = &inst.arena;
        let (states, n) = (a.num_states(), a.num_goals());

        // The predecessors are monotone.
        let e = random_pairs(&mut rng, states, n, 0.4);
        let e2 = e.union(&random_pairs(&mut rng, states, n, 0.3));
        ensure!(pre_mc(a, &e).is_subset(&pre_mc(a, &e2)), "seed {seed}: pre_mc not monotone");
        for d in &inst.compiled.dfas {
            let game = lib(Game::new(d, &inst.compiled.alphabet))?;
            let t: Vec<bool> = (0..d.num_states()).map(|_| rng.gen_bool(0.4)).collect();
            let t2: Vec<bool> = t.iter().map(|&b| b || rng.gen_bool(0.3)).collect();
            let (p1, p2) = (pre_c(&game, &t), pre_c(&game, &t2));
            ensure!(p1.iter().zip(&p2).all(|(x, y)| !x || *y), "seed {seed}: pre_c not monotone");
        }

        // Rank i iff realizable within i rounds but not i - 1.
        let w = lib(win_m(a, &ExplicitOptions::default()))?;
        for s in 0..states {
            for c in (0u32..1 << n).map(GoalSet) {
                match w.rank(s, c) {
                    Some(r) => {
                        let r = r as usize;
                        ensure!(oracle_realizable(a, s, c, r), "seed {seed}: rank {r} too small");
                        ensure!(
                            r == 0 || !oracle_realizable(a, s, c, r - 1),
                            "seed {seed}: rank {r} too large"
                        );
                    }
                    None => ensure!(
                        !oracle_realizable(a, s, c, states),
                        "seed {seed}: missing pair ({s}, {c:?})"
                    ),
                }
            }
        }
        ensure!(w.to_pairs().is_downward_closed(), "seed {seed}: win_m not downward closed");
        ensure!(w == lib(win_m_naive(a, &ExplicitOptions::default()))?, "seed {seed}: worklist and batched differ");

        // Closure identities.
        let r = random_pairs(&mut rng, states, n, 0.2);
        let m = max_op(&r);
        ensure!(m.is_antichain(), "seed {seed}: max_op not an antichain");
        ensure!(downward_close(&m) == close_down(&r), "seed {seed}: closure of Max differs");
        ensure!(
            pre_mmc(a, &m) == pre_mc(a, &downward_close(&m)),
            "seed {seed}: closure of PreMMC differs from PreMC of the closure"
        );
        let mm = lib(win_mm(a, &ExplicitOptions::default()))?;
        ensure!(mm.is_antichain(), "seed {seed}: win_mm not an antichain");
        ensure!(downward_close(&mm) == w.to_pairs(), "seed {seed}: closure of win_mm differs from win_m");
    }
    Ok(format!("{count} instances, monotone predecessors, ranks, closure identities and closure of win_mm, 0 violations"))
}

fn strategy_criterion(solved: &mut [Solved]) -> Outcome {
    let (mut strategies, mut plays) = (0usize, 0usize);
    for s in solved.iter_mut() {
        let a = &s.inst.arena;
        let spec = &s.inst.compiled.spec;
        let depth = a.num_states();
        for c in (0u32..1 << a.num_goals()).map(GoalSet) {
            if !s.w.contains(a.initial(), c) {
                continue;
            }
            let explicit = lib(extract_strategy(a, &s.w, c))?;
            let symbolic = lib(symbolic_strategy(&mut s.sa, &s.wf, c))?;
            for (path, t) in [("explicit", &explicit), ("symbolic", &symbolic)] {
                ensure!(
                    lib(verify_exhaustive(spec, t, c, depth))? == Verification::Verified,
                    "seed {}: {path} strategy for {c:?} fails",
                    s.inst.seed
                );
                let failure = lib(explore(spec, t, depth, |r| {
                    plays += 1;
                    let by_formula = c.indices().all(|i| satisfies(&r.trace, &spec.goals[i].formula));
                    if r.achieves(c) && by_formula {
                        ControlFlow::Continue(())
                    } else {
                        ControlFlow::Break(r.inputs())
                    }
                }))?;
                ensure!(
                    failure.is_none(),
                    "seed {}: {path} strategy for {c:?} fails the evaluator on inputs {failure:?}",
                    s.inst.seed
                );
                strategies += 1;
            }
        }
    }
    Ok(format!("{strategies} strategies, {plays} plays re-checked by the evaluator, 0 failures"))
}

fn agreement_criterion(solved: &mut [Solved], fams: &[FamilyRun]) -> Outcome {
    for s in solved.iter_mut() {
        let a = &s.inst.arena;
        let init = a.initial();
        let tuple = a.tuple(init).to_vec();
        let symbolic = lib(maximal_assignments(&mut s.sa, &s.wf, &tuple))?;
        ensure!(s.mm.at(init) == &symbolic[..], "seed {}: win_mm {:?} vs symbolic {symbolic:?}", s.inst.seed, s.mm.at(init));
        for mode in [EnumMode::Symbolic, EnumMode::Explicit] {
            let opts = EnumOptions {
                mode,
                ..EnumOptions::default()
            };
            let r = lib(enumerate_maximal(&s.inst.compiled.dfas, &s.inst.compiled.alphabet, &opts))?;
            ensure!(r.complete, "seed {}: baseline incomplete", s.inst.seed);
            ensure!(r.maximal == symbolic, "seed {}: {mode:?} baseline {:?} vs {symbolic:?}", s.inst.seed, r.maximal);
        }
    }
    let mut cross = 0;
    for f in fams {
        let report = lib(compare_compiled(&f.compiled, &CompareOptions::default()))?;
        ensure!(report.agree() == Some(true), "{}: solvers disagree: {report:?}", f.name);
        if report.explicit_maximal.is_some() {
            cross += 1;
            let product = lib(f.compiled.product(&Default::default()))?;
            ensure!(
                report.states == Some(product.num_states() as u128),
                "{}: reported {:?} states, explicit product has {}",
                f.name,
                report.states,
                product.num_states()
            );
        }
    }
    Ok(format!(
        "{} random instances and {} family instances ({cross} also explicit), 0 disagreements",
        solved.len(),
        fams.len()
    ))
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    v[v.len() / 2]
}

fn performance_criterion() -> Outcome {
    let mut lines = Vec::new();
    let mut worst: f64 = 0.0;
    for p in [FamilyParams::new(Family::Until, 6, 4), FamilyParams::new(Family::Chain, 6, 3)] {
        let compiled = lib(compile_text(&lib(generate(&p))?, &BuildOptions::default()))?;
        let opts = CompareOptions {
            timeout: Some(Duration::from_secs(120)),
            ..CompareOptions::default()
        };
        let (mut ours, mut theirs) = (Vec::new(), Vec::new());
        for _ in 0..3 {
            let start = Instant::now();
            let r = lib(compare_compiled(&compiled, &opts))?;
            ensure!(r.agree() == Some(true), "{}({},{}): no agreement", p.family, p.n, p.d);
            ensure!(start.elapsed() < Duration::from_secs(120), "{}({},{}): over 120 s", p.family, p.n, p.d);
            ours.push(r.total_mpsynth_ms());
            theirs.push(r.enum_ms.unwrap_or(f64::INFINITY));
        }
        let (m, e) = (median(ours), median(theirs));
        let ratio = m / e;
        worst = worst.max(ratio);
        lines.push(format!("{}({},{}) {m:.2} ms vs {e:.2} ms, ratio {ratio:.2}", p.family, p.n, p.d));
    }
    let within = worst <= 1.0;
    ensure!(within, "{}", lines.join("; "));
    let target = if worst <= 0.5 { "target 0.5 met" } else { "target 0.5 missed" };
    Ok(format!("{} ({target})", lines.join("; ")))
}

/// `w` implies `w[k_i := false]` for every goal variable.
fn k_monotone(sa: &mut SymbolicArena, w: BoolFn) -> Result<bool, String> {
    for &k in &sa.k.clone() {
        let lowered = bdd(sa.engine.restrict(w, &[(k, false)]))?;
        let imp = bdd(sa.engine.implies(w, lowered))?;
        if !sa.engine.is_true(imp) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn monotonicity_criterion(solved: &mut [Solved], fams: &mut [FamilyRun]) -> Outcome {
    let mut evaluated = 0usize;
    for s in solved.iter_mut() {
        let a = &s.inst.arena;
        let n = a.num_goals();
        for &wi in &s.wf.history {
            ensure!(k_monotone(&mut s.sa, wi)?, "seed {}: an iterate is not monotone in K", s.inst.seed);
            for st in 0..a.num_states() {
                let z = s.sa.encode_state(a.tuple(st));
                let table: Vec<bool> = (0u32..1 << n)
                    .map(|c| {
                        let asg: BTreeMap<VarId, bool> =
                            z.iter().copied().chain(s.sa.encode_goals(GoalSet(c))).collect();
                        bdd(s.sa.engine.evaluate(wi, &asg))
                    })
                    .collect::<Result<_, _>>()?;
                evaluated += table.len();
                for c in (0u32..1 << n).filter(|&c| table[c as usize]) {
                    for sub in GoalSet(c).subsets() {
                        ensure!(table[sub.0 as usize], "seed {}: state {st} has {c:#b} but not {sub:?}", s.inst.seed);
                    }
                }
            }
        }
    }
    for f in fams.iter_mut() {
        let history = f.wf.history.clone();
        for wi in history {
            ensure!(k_monotone(&mut f.sa, wi)?, "{}: an iterate is not monotone in K", f.name);
        }
    }
    Ok(format!(
        "every iterate on {} random instances ({evaluated} evaluations) and {} family instances, 0 violations",
        solved.len(),
        fams.len()
    ))
}

fn bound_criterion(solved: &[Solved], fams: &[FamilyRun]) -> Outcome {
    let mut worst: f64 = 0.0;
    let opts = ExplicitOptions::default();
    for s in solved {
        let naive = lib(win_m_naive(&s.inst.arena, &opts))?;
        let bound = s.bound();
        for (what, it) in [
            ("symbolic", s.wf.iterations),
            ("win_m", s.w.iterations),
            ("win_m batched", naive.iterations),
            ("win_mm", s.mm.iterations),
        ] {
            ensure!(it as u128 <= bound, "seed {}: {what} took {it} > {bound}", s.inst.seed);
            worst = worst.max(it as f64 / bound as f64);
        }
    }
    for f in fams {
        let bound = f.states << f.compiled.num_goals();
        ensure!(f.wf.iterations as u128 <= bound, "{}: {} > {bound}", f.name, f.wf.iterations);
        worst = worst.max(f.wf.iterations as f64 / bound as f64);
    }
    Ok(format!("largest iterations/bound ratio {worst:.3}"))
}

fn run(id: usize, name: &str, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        let msg = p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default();
        Err(format!("panicked: {msg}"))
    });
    let secs = start.elapsed().as_secs_f64();
    match outcome {
        Ok(detail) => {
            println!("criterion {id} [{name}]: PASS ({detail}; {secs:.1} s)");
            true
        }
        Err(why) => {
            println!("criterion {id} [{name}]: FAIL ({why}; {secs:.1} s)");
            false
        }
    }
}

fn main() {
    // Listing and filtering flags passed by `cargo test` are ignored; the
    // suite always runs whole.
    if std::env::args().any(|a| a == "--list") {
        return;
    }
    let mut solved = match instances() {
        Ok(s) => s,
        Err(e) => {
            println!("setup failed: {e}");
            std::process::exit(1);
        }
    };
    let mut fams = match families() {
        Ok(f) => f,
        Err(e) => {
            println!("setup failed: {e}");
            std::process::exit(1);
        }
    };
    let results = [
        run(1, "example game", fig1_criterion),
        run(2, "automata vs evaluator", dfa_criterion),
        run(3, "fixed points vs oracle", || oracle_criterion(&mut solved)),
        run(4, "operator properties", operator_criterion),
        run(5, "strategy soundness", || strategy_criterion(&mut solved)),
        run(6, "baseline agreement", || agreement_criterion(&mut solved, &fams)),
        run(7, "directional performance", performance_criterion),
        run(8, "goal-variable monotonicity", || monotonicity_criterion(&mut solved, &mut fams)),
        run(9, "iteration bound", || bound_criterion(&solved, &fams)),
    ];
    let failed = results.iter().filter(|ok| !**ok).count();
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
