//! Head-to-head runs of the symbolic pipeline and the enumeration baseline.

use std::time::{Duration, Instant};

use crate::arena::{GoalSet, ProductOptions};
use crate::dfa::BuildOptions;
use crate::enumeration::{enumerate_maximal, EnumMode, EnumOptions};
use crate::error::Result;
use crate::explicit::{win_mm, ExplicitOptions};
use crate::ltlf::Spec;
use crate::pipeline::{compile, Compiled};
use crate::symbolic::{
    maximal_assignments, pick_maximum, solve, symbolic_strategy, SymbolicOptions,
    VarOrder, DEFAULT_NODE_CEILING,
};

pub const CSV_HEADER: &str = "family,n,d,states,mpsynth_fixpoint_ms,mpsynth_extract_ms,enum_ms,agree";

#[derive(Clone, Debug)]
pub struct CompareOptions {
    /// Budget for each of the two solvers.
    pub timeout: Option<Duration>,
    pub node_ceiling: usize,
    /// Variable order used by both solvers.
    pub order: VarOrder,
    pub enum_mode: EnumMode,
    /// Also solve the explicit product when it has at most this many states.
    pub explicit_limit: usize,
    /// Run the enumeration baseline.
    pub baseline: bool,
}

impl Default for CompareOptions {
    fn default() -> Self {
        CompareOptions {
            timeout: None,
            node_ceiling: DEFAULT_NODE_CEILING,
            order: VarOrder::default(),
            enum_mode: EnumMode::Symbolic,
            explicit_limit: 4096,
            baseline: true,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub goals: usize,
    /// Reachable product states; `None` when the count ran out of budget.
    pub states: Option<u128>,
    pub fixpoint_ms: f64,
    pub extract_ms: f64,
    /// `None` when the baseline was not run.
    pub enum_ms: Option<f64>,
    /// `None` when the symbolic pipeline did not finish.
    pub mpsynth_maximal: Option<Vec<GoalSet>>,
    pub maximum: Option<GoalSet>,
    /// `None` when the baseline did not finish.
    pub enum_maximal: Option<Vec<GoalSet>>,
    pub explicit_maximal: Option<Vec<GoalSet>>,
}

impl Report {
    pub fn complete(&self) -> bool {
        self.mpsynth_maximal.is_some() && (self.enum_ms.is_none() || self.enum_maximal.is_some())
    }

    /// Whether all finished solvers agree; `None` if a required one did not
    /// finish.
    pub fn agree(&self) -> Option<bool> {
        let (m, e) = (self.mpsynth_maximal.as_ref()?, self.enum_maximal.as_ref()?);
        Some(m == e && self.explicit_maximal.as_ref().is_none_or(|x| x == m))
    }

    pub fn total_mpsynth_ms(&self) -> f64 {
        self.fixpoint_ms + self.extract_ms
    }

    pub fn csv_row(&self, family: &str, n: usize, d: usize) -> String {
        let states = self.states.map_or_else(String::new, |s| s.to_string());
        let (enum_ms, agree) = match (self.enum_ms, self.agree()) {
            (None, _) => (String::new(), ""),
            (Some(t), Some(true)) => (format!("{t:.3}"), "true"),
            (Some(t), Some(false)) => (format!("{t:.3}"), "false"),
            (Some(t), None) => (format!("{t:.3}"), "unknown"),
        };
        format!(
            "{family},{n},{d},{states},{:.3},{:.3},{enum_ms},{agree}",
            self.fixpoint_ms, self.extract_ms
        )
    }
}

fn ms(since: Instant) -> f64 {
    since.elapsed().as_secs_f64() * 1e3
}

struct Pipeline {
    fixpoint_ms: f64,
    extract_ms: f64,
    maximal: Option<Vec<GoalSet>>,
    maximum: Option<GoalSet>,
    states: Option<u128>,
}

fn run_pipeline(compiled: &Compiled, opts: &CompareOptions) -> Result<Pipeline> {
    let start = Instant::now();
    let sopts = SymbolicOptions {
        order: opts.order,
        node_ceiling: opts.node_ceiling,
        deadline: opts.timeout.map(|t| start + t),
    };
    let mut out = Pipeline {
        fixpoint_ms: 0.0,
        extract_ms: 0.0,
        maximal: None,
        maximum: None,
        states: None,
    };
    let (mut a, wf) = match solve(compiled, &sopts) {
        Ok(r) => r,
        Err(e) if e.is_resource() => {
            out.fixpoint_ms = ms(start);
            return Ok(out);
        }
        Err(e) => return Err(e),
    };
    out.fixpoint_ms = ms(start);
    let start = Instant::now();
    let extracted = (|| {
        let initial = a.initial();
        let maximal = maximal_assignments(&mut a, &wf, &initial)?;
        let best = pick_maximum(&maximal);
        symbolic_strategy(&mut a, &wf, best)?;
        Ok::<_, crate::error::Error>((maximal, best))
    })();
    out.extract_ms = ms(start);
    match extracted {
        Ok((maximal, best)) => {
            out.maximal = Some(maximal);
            out.maximum = Some(best);
        }
        Err(e) if e.is_resource() => {}
        Err(e) => return Err(e),
    }
    out.states = match a.reachable_states(opts.node_ceiling) {
        Ok(n) => Some(n),
        Err(e) if e.is_resource() => None,
        Err(e) => return Err(e),
    };
    Ok(out)
}

fn explicit_maximal(compiled: &Compiled, limit: usize) -> Result<Option<Vec<GoalSet>>> {
    let feasible_symbols = compiled.alphabet.num_atoms() <= 12;
    if !feasible_symbols || compiled.num_goals() > ExplicitOptions::default().max_goals {
        return Ok(None);
    }
    let popts = ProductOptions {
        max_states: limit,
        ..ProductOptions::default()
    };
    let arena = match compiled.product(&popts) {
        Ok(a) => a,
        Err(e) if e.is_resource() => return Ok(None),
        Err(e) => return Err(e),
    };
    match win_mm(&arena, &ExplicitOptions::default()) {
        Ok(m) => Ok(Some(m.at(arena.initial()).to_vec())),
        Err(e) if e.is_resource() => Ok(None),
        Err(e) => Err(e),
    }
}

/// Compiles `spec` once, then times the symbolic pipeline (encoding, fixed
/// point, maximal sets, strategy for the maximum) against the baseline.
pub fn run_comparison(spec: &Spec, opts: &CompareOptions) -> Result<Report> {
    let compiled = compile(spec, &BuildOptions::default())?;
    compare_compiled(&compiled, opts)
}

pub fn compare_compiled(compiled: &Compiled, opts: &CompareOptions) -> Result<Report> {
    let pipeline = run_pipeline(compiled, opts)?;

    let (enum_ms, enum_maximal) = if opts.baseline {
        let start = Instant::now();
        let eopts = EnumOptions {
            mode: opts.enum_mode,
            order: opts.order,
            node_ceiling: opts.node_ceiling,
            deadline: opts.timeout.map(|t| start + t),
            ..EnumOptions::default()
        };
        let report = enumerate_maximal(&compiled.dfas, &compiled.alphabet, &eopts)?;
        (Some(ms(start)), report.complete.then_some(report.maximal))
    } else {
        (None, None)
    };

    Ok(Report {
        goals: compiled.num_goals(),
        states: pipeline.states,
        fixpoint_ms: pipeline.fixpoint_ms,
        extract_ms: pipeline.extract_ms,
        enum_ms,
        mpsynth_maximal: pipeline.maximal,
        maximum: pipeline.maximum,
        enum_maximal,
        explicit_maximal: explicit_maximal(compiled, opts.explicit_limit)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bench::{generate, Family, FamilyParams};
    use crate::fixtures::FIG1_MPL;
    use crate::ltlf::parse_spec;

    fn g(ix: &[usize]) -> GoalSet {
        GoalSet::from_indices(ix.iter().copied())
    }

    #[test]
    fn fig1_report() {
        let spec = parse_spec(FIG1_MPL).unwrap();
        let r = run_comparison(&spec, &CompareOptions::default()).unwrap();
        assert_eq!(r.agree(), Some(true));
        assert_eq!(r.mpsynth_maximal.as_deref(), Some(&[g(&[0, 1]), g(&[1, 2])][..]));
        assert_eq!(r.maximum, Some(g(&[0, 1])));
        assert_eq!(r.states, Some(4));
        assert!(r.explicit_maximal.is_some());
        let row = r.csv_row("fig1", 3, 1);
        assert!(row.starts_with("fig1,3,1,4,"));
        assert!(row.ends_with(",true"));
        assert_eq!(row.split(',').count(), CSV_HEADER.split(',').count());
        let solo = CompareOptions {
            baseline: false,
            ..CompareOptions::default()
        };
        let r = run_comparison(&spec, &solo).unwrap();
        assert!(r.complete());
        assert!(r.csv_row("fig1", 3, 1).ends_with(",,"));
    }

    #[test]
    fn small_chain_agrees() {
        let spec = parse_spec(&generate(&FamilyParams::new(Family::Chain, 2, 2)).unwrap()).unwrap();
        let r = run_comparison(&spec, &CompareOptions::default()).unwrap();
        assert_eq!(r.agree(), Some(true));
        assert!(r.explicit_maximal.is_some());
        assert_eq!(r.mpsynth_maximal.unwrap(), vec![g(&[0]), g(&[1])]);
    }
}
