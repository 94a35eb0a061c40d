use std::fs;
use std::ops::ControlFlow;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};

use mpsynth::bench::{compare_compiled, generate, CompareOptions, Family, FamilyParams, CSV_HEADER};
use mpsynth::dfa::{build_dfa, BuildOptions};
use mpsynth::enumeration::{enumerate_maximal, EnumMode, EnumOptions};
use mpsynth::explicit::{extract_strategy, win_m, ExplicitOptions};
use mpsynth::harness::{explore, simulate, EnvPolicy, SimResult, Verdict};
use mpsynth::ltlf::parse_formula;
use mpsynth::pipeline::{compile_text, Compiled};
use mpsynth::symbolic::{
    maximal_assignments, pick_maximum, query_realizable, solve, symbolic_strategy, SymbolicOptions,
    VarOrder, DEFAULT_NODE_CEILING,
};
use mpsynth::{Error, GoalSet, Spec, Transducer};

const NODE_CEILING_VAR: &str = "MPSYNTH_NODE_CEILING";

#[derive(Parser)]
#[command(name = "mpsynth", version, about = "Multi-property LTLf synthesis")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print every maximal realizable goal set as a JSON list of label lists.
    Maximal {
        spec: PathBuf,
        #[command(flatten)]
        engine: EngineArgs,
    },
    /// Synthesize a strategy for a goal set.
    Synth(SynthArgs),
    /// Run the subset-enumeration baseline and print one CSV row per subset.
    Enum {
        spec: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Symbolic)]
        mode: Mode,
        #[command(flatten)]
        engine: EngineArgs,
    },
    /// Play a strategy against an environment.
    Simulate(SimulateArgs),
    /// Generate a benchmark instance and report timings as CSV.
    Bench(BenchArgs),
    /// Compile one formula to its minimal automaton.
    Dfa {
        #[arg(long)]
        formula: String,
        /// Write DOT here instead of standard output.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
}

#[derive(Args)]
struct EngineArgs {
    /// Decision-diagram variable order.
    #[arg(long, value_enum, default_value_t = Order::Clustered)]
    var_order: Order,
    /// Maximum number of decision-diagram nodes (overrides MPSYNTH_NODE_CEILING).
    #[arg(long)]
    node_ceiling: Option<usize>,
    /// Time budget in seconds.
    #[arg(long)]
    timeout: Option<f64>,
}

#[derive(Args)]
#[command(group = clap::ArgGroup::new("selection").required(true))]
struct SynthArgs {
    spec: PathBuf,
    /// Comma-separated goal labels.
    #[arg(long, value_delimiter = ',', group = "selection")]
    goals: Vec<String>,
    /// Pick the largest realizable goal set.
    #[arg(long, group = "selection")]
    maximum: bool,
    #[arg(long, value_enum, default_value_t = Solver::Symbolic)]
    solver: Solver,
    /// Write the transducer JSON here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    dot: Option<PathBuf>,
    #[command(flatten)]
    engine: EngineArgs,
}

#[derive(Args)]
struct SimulateArgs {
    spec: PathBuf,
    #[arg(long)]
    strategy: PathBuf,
    #[arg(long, value_enum, default_value_t = Env::Random)]
    env: Env,
    /// Round budget of each play.
    #[arg(long, default_value_t = 64)]
    depth: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, value_parser = parse_family)]
    family: Family,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    d: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Also run the enumeration baseline.
    #[arg(long)]
    compare: bool,
    /// Write the generated `.mpl` file here.
    #[arg(long)]
    spec_out: Option<PathBuf>,
    #[command(flatten)]
    engine: EngineArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum Order {
    /// State bits, then goal variables, then outputs, then inputs.
    Blocked,
    /// Each goal variable right after its state bits.
    Interleaved,
    /// Like interleaved, with each component's atoms right after it.
    Clustered,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Symbolic,
    Explicit,
}

#[derive(Clone, Copy, ValueEnum)]
enum Solver {
    Symbolic,
    Explicit,
}

#[derive(Clone, Copy, ValueEnum)]
enum Env {
    Random,
    Exhaustive,
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Unrealizable(_) => 1,
            e if e.is_resource() => 3,
            Error::Invariant(_) | Error::Bdd(_) | Error::NonCoreOperator(_) => 4,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e).into()
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

impl EngineArgs {
    fn node_ceiling(&self) -> Result<usize, Failure> {
        if let Some(n) = self.node_ceiling {
            return Ok(n);
        }
        match std::env::var(NODE_CEILING_VAR) {
            Ok(v) => v
                .trim()
                .parse()
                .map_err(|_| usage(format!("{NODE_CEILING_VAR} must be a node count, got `{v}`"))),
            Err(_) => Ok(DEFAULT_NODE_CEILING),
        }
    }

    fn timeout(&self) -> Result<Option<Duration>, Failure> {
        self.timeout
            .map(|s| Duration::try_from_secs_f64(s).map_err(|_| usage("timeout must be a non-negative number of seconds")))
            .transpose()
    }

    fn order(&self) -> VarOrder {
        match self.var_order {
            Order::Blocked => VarOrder::Blocked,
            Order::Interleaved => VarOrder::Interleaved,
            Order::Clustered => VarOrder::Clustered,
        }
    }

    fn symbolic(&self) -> Result<SymbolicOptions, Failure> {
        Ok(SymbolicOptions {
            order: self.order(),
            node_ceiling: self.node_ceiling()?,
            deadline: self.timeout()?.map(|t| Instant::now() + t),
        })
    }
}

fn load(path: &Path) -> Result<Compiled, Failure> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    Ok(compile_text(&text, &BuildOptions::default())?)
}

fn label_set(spec: &Spec, c: GoalSet) -> String {
    format!("{{{}}}", c.labels(&spec.labels()).join(","))
}

fn unrealizable(spec: &Spec, c: GoalSet) -> Failure {
    Error::Unrealizable(c.labels(&spec.labels()).join(",")).into()
}

fn select(spec: &Spec, labels: &[String]) -> Result<GoalSet, Failure> {
    let mut c = GoalSet::EMPTY;
    for l in labels.iter().filter(|l| !l.is_empty()) {
        let i = spec
            .goals
            .iter()
            .position(|g| &g.label == l)
            .ok_or_else(|| usage(format!("unknown goal label `{l}`")))?;
        c = c.insert(i);
    }
    Ok(c)
}

fn write_or_print(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => Ok(fs::write(p, text)?),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_maximal(spec: &Path, engine: &EngineArgs) -> Result<(), Failure> {
    let compiled = load(spec)?;
    let (mut a, wf) = solve(&compiled, &engine.symbolic()?)?;
    let initial = a.initial();
    let sets = maximal_assignments(&mut a, &wf, &initial)?;
    let labels = compiled.labels();
    let lists: Vec<Vec<&str>> = sets.iter().map(|c| c.labels(&labels)).collect();
    println!("{}", serde_json::to_string(&lists).expect("string lists serialize"));
    Ok(())
}

fn cmd_synth(args: &SynthArgs) -> Result<(), Failure> {
    let compiled = load(&args.spec)?;
    let transducer = match args.solver {
        Solver::Symbolic => {
            let (mut a, wf) = solve(&compiled, &args.engine.symbolic()?)?;
            let initial = a.initial();
            let c = if args.maximum {
                pick_maximum(&maximal_assignments(&mut a, &wf, &initial)?)
            } else {
                select(&compiled.spec, &args.goals)?
            };
            if !query_realizable(&a, &wf, &initial, c)? {
                return Err(unrealizable(&compiled.spec, c));
            }
            symbolic_strategy(&mut a, &wf, c)?
        }
        Solver::Explicit => {
            let arena = compiled.product(&Default::default())?;
            let w = win_m(&arena, &ExplicitOptions::default())?;
            let c = if args.maximum {
                let sets: Vec<GoalSet> = GoalSet::full(compiled.num_goals())
                    .subsets()
                    .filter(|&c| w.contains(arena.initial(), c))
                    .collect();
                pick_maximum(&mpsynth::explicit::maximal_sets(sets))
            } else {
                select(&compiled.spec, &args.goals)?
            };
            if !w.contains(arena.initial(), c) {
                return Err(unrealizable(&compiled.spec, c));
            }
            extract_strategy(&arena, &w, c)?
        }
    };
    write_or_print(args.out.as_deref(), &format!("{}\n", transducer.to_json()))?;
    if let Some(dot) = &args.dot {
        fs::write(dot, transducer.to_dot())?;
    }
    Ok(())
}

fn cmd_enum(spec: &Path, mode: Mode, engine: &EngineArgs) -> Result<(), Failure> {
    let compiled = load(spec)?;
    let opts = EnumOptions {
        mode: match mode {
            Mode::Symbolic => EnumMode::Symbolic,
            Mode::Explicit => EnumMode::Explicit,
        },
        order: engine.order(),
        node_ceiling: engine.node_ceiling()?,
        deadline: engine.timeout()?.map(|t| Instant::now() + t),
        ..EnumOptions::default()
    };
    let report = enumerate_maximal(&compiled.dfas, &compiled.alphabet, &opts)?;
    print!("{}", report.to_csv(&compiled.labels()));
    if !report.complete {
        eprintln!("baseline incomplete: some subsets exhausted their budget");
        return Err(Failure {
            code: 3,
            message: "resource limit exceeded during enumeration".into(),
        });
    }
    Ok(())
}

fn verdict_line(spec: &Spec, v: Verdict) -> String {
    match v {
        Verdict::Satisfied(c) => format!("verdict: satisfied {}", label_set(spec, c)),
        Verdict::Vacuous => "verdict: vacuous".into(),
        Verdict::BudgetExceeded => "verdict: budget-exceeded".into(),
        Verdict::StrategyError => "verdict: strategy-error".into(),
    }
}

fn finish_play(spec: &Spec, t: &Transducer, r: &SimResult) -> Result<(), Failure> {
    print!("{}", r.dump(&t.alphabet));
    println!("{}", verdict_line(spec, r.verdict));
    match r.verdict {
        Verdict::BudgetExceeded => Err(Failure {
            code: 3,
            message: "round budget exhausted before the strategy stopped".into(),
        }),
        Verdict::StrategyError => Err(Failure {
            code: 4,
            message: "strategy has no move for a reached input".into(),
        }),
        _ => Ok(()),
    }
}

fn cmd_simulate(args: &SimulateArgs) -> Result<(), Failure> {
    let compiled = load(&args.spec)?;
    let spec = &compiled.spec;
    let text = fs::read_to_string(&args.strategy)
        .map_err(|e| usage(format!("{}: {e}", args.strategy.display())))?;
    let t = Transducer::from_json(&text)?;
    match args.env {
        Env::Random => {
            let r = simulate(spec, &t, &EnvPolicy::Random { seed: args.seed }, args.depth)?;
            finish_play(spec, &t, &r)
        }
        Env::Exhaustive => {
            let mut plays = 0usize;
            let mut common = GoalSet::full(spec.num_goals());
            let failed = explore(spec, &t, args.depth, |r| {
                plays += 1;
                match r.verdict {
                    Verdict::Satisfied(s) => common = common.intersect(s),
                    Verdict::Vacuous => common = GoalSet::EMPTY,
                    _ => return ControlFlow::Break(r.clone()),
                }
                ControlFlow::Continue(())
            })?;
            if let Some(r) = failed {
                return finish_play(spec, &t, &r);
            }
            println!("plays: {plays}");
            println!("{}", verdict_line(spec, Verdict::Satisfied(common)));
            Ok(())
        }
    }
}

fn cmd_bench(args: &BenchArgs) -> Result<(), Failure> {
    let params = FamilyParams {
        family: args.family,
        n: args.n,
        d: args.d,
        seed: args.seed,
    };
    let text = generate(&params)?;
    if let Some(p) = &args.spec_out {
        fs::write(p, &text)?;
    }
    let compiled = compile_text(&text, &BuildOptions::default())?;
    let opts = CompareOptions {
        timeout: args.engine.timeout()?,
        node_ceiling: args.engine.node_ceiling()?,
        order: args.engine.order(),
        baseline: args.compare,
        ..CompareOptions::default()
    };
    let report = compare_compiled(&compiled, &opts)?;
    println!("{CSV_HEADER}");
    println!("{}", report.csv_row(args.family.name(), args.n, args.d));
    if report.agree() == Some(false) {
        return Err(Failure {
            code: 4,
            message: "solvers disagree on the maximal goal sets".into(),
        });
    }
    Ok(())
}

fn cmd_dfa(formula: &str, dot: Option<&Path>) -> Result<(), Failure> {
    let f = parse_formula(formula, None)?;
    let atoms: Vec<String> = f.atoms().into_iter().collect();
    let dfa = build_dfa(&f, &atoms, &BuildOptions::default())?;
    match dot {
        Some(p) => {
            fs::write(p, dfa.to_dot())?;
            println!("{} states", dfa.num_states());
        }
        None => print!("{}", dfa.to_dot()),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Maximal { spec, engine } => cmd_maximal(spec, engine),
        Command::Synth(args) => cmd_synth(args),
        Command::Enum { spec, mode, engine } => cmd_enum(spec, *mode, engine),
        Command::Simulate(args) => cmd_simulate(args),
        Command::Bench(args) => cmd_bench(args),
        Command::Dfa { formula, dot } => cmd_dfa(formula, dot.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("{}", f.message);
            ExitCode::from(f.code)
        }
    }
}
