//! Iterative packing for column-sparse packing integer programs.
//!
//! The crate computes exact α-approximate convex decompositions of LP
//! relaxation solutions into feasible integral packings, all over
//! arbitrary-precision rationals:
//!
//! * [`ratlp`]: exact bounded-variable simplex and the natural relaxation.
//! * [`iterpack`]: insertion engine and the demand-ordered drivers
//!   (2k for hypergraph demand matching, k+1 for b-matching, 2/3 for matching).
//! * [`twocs`]: extreme-point structure and the point-wise 3-approximation
//!   for rank-two instances.
//! * [`decomp`]: column generation, exact repair and the full rank-two
//!   3-approximation pipeline.
//! * [`oracle`]: brute-force optimum, integrality gaps and generators.

pub mod decomp;
pub mod error;
pub mod iterpack;
pub mod json;
pub mod model;
pub mod oracle;
pub mod rational;
pub mod ratlp;
pub mod twocs;

pub use error::{Error, Result};
pub use model::{
    can_accommodate, cost_under, fractional_feasible, is_feasible, solution_cost,
    verify_decomposition, ConvexDecomposition, Edge, Endpoint, FractionalSolution, Instance,
    InstanceBuilder, IntegralSolution, Term, VerifyReport, Vertex,
};
pub use rational::Rational;
