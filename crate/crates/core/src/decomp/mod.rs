//! Column generation over an approximate oracle, exact repair of the cover,
//! and the rank-two 3-approximation pipeline built on both.

mod master;
mod pipeline;
mod repair;

pub use master::{
    carr_vempala, default_budget, ColumnGeneration, CoverageDecomposition, MasterState, Relation,
};
pub use pipeline::{two_cs_pip_3approx, two_cs_pip_3approx_with, Certificate, TwoCsOutcome};
pub use repair::exact_repair;
