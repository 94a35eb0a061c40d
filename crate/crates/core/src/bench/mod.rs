//! Benchmark families and the comparison runner.

mod compare;
mod families;

pub use compare::{compare_compiled, run_comparison, CompareOptions, Report, CSV_HEADER};
pub use families::{generate, Family, FamilyParams, MAX_FAMILY_GOALS};
