//! Multi-property LTLf synthesis.
//!
//! Given a partitioned alphabet and `n` finite-trace goals, this crate computes
//! which goal subsets an agent can enforce against an adversarial environment,
//! the maximal such subsets, and finite-state strategies that realize them.
//!
//! Two solvers share the same front end:
//!
//! * [`explicit`] works on the reachable product arena and tracks state/goal-set
//!   pairs directly. It is the correctness reference.
//! * [`symbolic`] encodes the arena with Boolean state variables plus one goal
//!   variable per property and runs a single fixed point over decision diagrams
//!   ([`bdd`]).
//!
//! [`enumeration`] is the subset-by-subset baseline, [`harness`] executes
//! strategies against environments, and [`bench`] generates parametric
//! benchmark families and compares the approaches.

pub mod arena;
pub mod bdd;
pub mod bench;
pub mod cubes;
pub mod dfa;
pub mod enumeration;
pub mod error;
pub mod explicit;
pub mod fixtures;
pub mod gen;
pub mod harness;
pub mod ltlf;
pub mod pipeline;
pub mod symbolic;
pub mod transducer;

pub use arena::{Alphabet, GoalSet, ProductArena};
pub use bdd::{BoolFn, Engine, VarId};
pub use dfa::Dfa;
pub use error::{Error, Result};
pub use ltlf::{Formula, Spec, Trace};
pub use transducer::{Action, Transducer};
