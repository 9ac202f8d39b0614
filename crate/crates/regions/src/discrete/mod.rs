//! Finite-alphabet probability engine and the inequality systems of the
//! discrete interference channel with degraded message sets, plus the
//! special-case reduction checks.

mod pmf;
pub mod reductions;
pub mod sampling;
pub mod specs;

pub use pmf::{DiscreteChannel, JointPmf};
pub use reductions::{
    check_reduction, semidet_capacity_rows, ReductionCase, ReductionReport, SemiDetEvaluation,
};
pub use specs::{eval_region, region_spec, EvaluatedRegion, RegionSpec, SpecId};

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum DiscreteError {
    #[error("unknown variable {0}")]
    UnknownVariable(String),
    #[error("distribution is missing auxiliary {0}")]
    MissingAuxiliary(String),
    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),
    #[error("y2 is not a deterministic function of (x1, x2)")]
    NotDeterministic,
    #[error("substitution inconsistent: {0}")]
    SubstitutionInconsistent(String),
    #[error("invalid probability table: {0}")]
    InvalidTable(String),
}
