//! Iterative packing: maintain an exact convex decomposition of `α x̄` while
//! edges are reinserted one at a time.

mod audit;
mod drivers;
mod engine;
mod insert;
mod order;

pub use audit::{blocking_audit, Bin, BlockingAudit, EndpointAudit};
pub use drivers::{
    bmatching_pack, bmatching_pack_with, khdm_2k, khdm_2k_with, matching_pack, matching_pack_lp,
    matching_pack_with, Algorithm, DriverOptions, PackOutcome,
};
pub use engine::{iterative_pack, iterative_pack_observed, InsertionStep};
pub use insert::{accommodating_mass, apply_plan, pack_edge, plan_insertion, InsertionPlan, Split};
pub use order::{is_monotone, monotone_removal_order};
