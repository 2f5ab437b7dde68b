//! Ground truth: exhaustive optimum, exact integrality gaps, and instance generators.

mod brute;
mod gap;
mod generate;

pub use brute::{brute_force_opt, DEFAULT_EDGE_LIMIT};
pub use gap::{integrality_gap, Gap, GapReport};
pub use generate::{
    gen_projective_plane, gen_random, gen_star_knapsack, gen_triangle, RandomParams,
};
