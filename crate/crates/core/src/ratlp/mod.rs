//! Exact rational linear programming.
//!
//! [`solve_lp`] returns a basic optimal solution (an extreme point of the
//! feasible region) together with exact duals. [`certify`] re-derives the
//! optimality certificate from scratch.

mod certify;
mod simplex;

pub use certify::{certify, rank, LpCertificate};
pub use simplex::Simplex;

use crate::error::{Error, Result};
use crate::model::{FractionalSolution, Instance};
use crate::rational::{self, Rational};

/// `maximize c·x  s.t.  A x ≤ b,  0 ≤ x ≤ u` (an upper bound of `None` is +∞).
#[derive(Debug, Clone, PartialEq)]
pub struct LinearProgram {
    pub objective: Vec<Rational>,
    pub rows: Vec<Vec<Rational>>,
    pub rhs: Vec<Rational>,
    pub upper: Vec<Option<Rational>>,
}

impl LinearProgram {
    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    fn check_dimensions(&self) -> Result<()> {
        let n = self.objective.len();
        if self.rows.len() != self.rhs.len() {
            return Err(Error::InvalidArgument(format!(
                "{} rows but {} right-hand sides",
                self.rows.len(),
                self.rhs.len()
            )));
        }
        if self.upper.len() != n {
            return Err(Error::InvalidArgument(format!(
                "{} bounds for {n} variables",
                self.upper.len()
            )));
        }
        if let Some(i) = self.rows.iter().position(|r| r.len() != n) {
            return Err(Error::InvalidArgument(format!(
                "row {i} has {} coefficients for {n} variables",
                self.rows[i].len()
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisMember {
    Structural(usize),
    Slack(usize),
    Artificial(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpResult {
    pub x: Vec<Rational>,
    pub objective: Rational,
    /// One per row, nonnegative at optimality.
    pub duals: Vec<Rational>,
    /// Multipliers of the upper bounds `x_j ≤ u_j`.
    pub bound_duals: Vec<Rational>,
    pub active_rows: Vec<usize>,
    pub at_lower: Vec<usize>,
    pub at_upper: Vec<usize>,
    pub basis: Vec<BasisMember>,
}

/// The degree-based relaxation: one row per vertex with the endpoint demands
/// as coefficients, and the box `0 ≤ x ≤ 1`.
pub fn build_natural_relaxation(instance: &Instance, costs: Option<&[Rational]>) -> LinearProgram {
    let m = instance.num_edges();
    let objective = match costs {
        Some(c) => c.to_vec(),
        None => instance.weights(),
    };
    let rows = (0..instance.num_vertices())
        .map(|v| {
            let mut row = vec![rational::zero(); m];
            for &e in instance.incident(v) {
                let d = instance.edge(e).demand_at(v).expect("incident edge");
                row[e] = rational::int(d as i64);
            }
            row
        })
        .collect();
    let rhs = instance
        .vertices()
        .iter()
        .map(|v| rational::int(v.capacity as i64))
        .collect();
    LinearProgram {
        objective,
        rows,
        rhs,
        upper: vec![Some(rational::one()); m],
    }
}

pub fn solve_lp(lp: &LinearProgram) -> Result<LpResult> {
    let mut simplex = Simplex::new(lp)?;
    simplex.solve()?;
    Ok(simplex.result())
}

/// Solves the natural relaxation and returns its optimal extreme point.
pub fn relaxation_extreme_point(
    instance: &Instance,
    costs: Option<&[Rational]>,
) -> Result<(FractionalSolution, LpResult)> {
    let lp = build_natural_relaxation(instance, costs);
    let result = solve_lp(&lp)?;
    let x = FractionalSolution::new(instance, result.x.clone())?;
    Ok((x, result))
}
