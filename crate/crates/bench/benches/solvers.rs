use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use mpsynth::bench::{generate, Family, FamilyParams};
use mpsynth::dfa::{build_dfa, BuildOptions};
use mpsynth::enumeration::{enumerate_maximal, EnumOptions};
use mpsynth::explicit::{win_m, win_mm, ExplicitOptions};
use mpsynth::fixtures::fig1_arena;
use mpsynth::ltlf::parse_formula;
use mpsynth::pipeline::{compile_text, Compiled};
use mpsynth::symbolic::{maximal_assignments, solve, SymbolicOptions};

fn instance(family: Family, n: usize, d: usize) -> Compiled {
    let text = generate(&FamilyParams::new(family, n, d)).expect("valid parameters");
    compile_text(&text, &BuildOptions::default()).expect("generated text compiles")
}

const CASES: [(Family, usize, usize); 3] = [(Family::Until, 4, 3), (Family::Chain, 4, 3), (Family::Next, 4, 3)];

fn symbolic_vs_baseline(c: &mut Criterion) {
    let mut group = c.benchmark_group("maximal_sets");
    for (family, n, d) in CASES {
        let compiled = instance(family, n, d);
        let id = format!("{family}({n},{d})");
        group.bench_with_input(BenchmarkId::new("symbolic", &id), &compiled, |b, compiled| {
            b.iter(|| {
                let (mut a, wf) = solve(compiled, &SymbolicOptions::default()).unwrap();
                let init = a.initial();
                maximal_assignments(&mut a, &wf, &init).unwrap()
            })
        });
        group.bench_with_input(BenchmarkId::new("enumeration", &id), &compiled, |b, compiled| {
            b.iter(|| enumerate_maximal(&compiled.dfas, &compiled.alphabet, &EnumOptions::default()).unwrap())
        });
    }
    group.finish();
}

fn explicit_fixed_points(c: &mut Criterion) {
    let arena = fig1_arena().unwrap();
    let opts = ExplicitOptions::default();
    c.bench_function("explicit/win_m/example", |b| b.iter(|| win_m(&arena, &opts).unwrap()));
    c.bench_function("explicit/win_mm/example", |b| b.iter(|| win_mm(&arena, &opts).unwrap()));
}

fn automata(c: &mut Criterion) {
    let atoms: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
    let f = parse_formula("G(a -> X F b) & (c U (a & X X b)) & F G !c", None).unwrap();
    c.bench_function("dfa/build", |b| {
        b.iter(|| build_dfa(&f, &atoms, &BuildOptions::default()).unwrap())
    });
}

criterion_group!(benches, symbolic_vs_baseline, explicit_fixed_points, automata);
criterion_main!(benches);
