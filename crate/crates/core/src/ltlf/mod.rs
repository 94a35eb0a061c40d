//! LTLf syntax, `.mpl` files and the finite-trace evaluator.

mod eval;
mod formula;
mod parser;
mod spec;

pub use eval::{evaluate, satisfies, Trace};
pub use formula::{desugar, Formula, Kind};
pub use parser::{parse_formula, parse_spec};
pub use spec::{Goal, Spec};
