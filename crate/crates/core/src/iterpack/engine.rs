use num::{Signed, Zero};

use super::insert::{apply_plan, plan_insertion, InsertionPlan};
use crate::error::{Error, Result};
use crate::model::{fractional_feasible, ConvexDecomposition, FractionalSolution, Instance};
use crate::rational::{self, Rational};

/// Snapshot handed to observers around each insertion.
#[derive(Debug)]
pub struct InsertionStep<'a> {
    pub edge: usize,
    pub value: &'a Rational,
    pub alpha: &'a Rational,
    /// Smallest endpoint demand among the edges already in `before`; 0 if none.
    pub delta_bar: u64,
    /// Edges already inserted, i.e. the residual support.
    pub residual: &'a [usize],
    pub before: &'a ConvexDecomposition,
    pub plan: &'a InsertionPlan,
    pub after: &'a ConvexDecomposition,
}

pub fn iterative_pack(
    instance: &Instance,
    x: &FractionalSolution,
    alpha: &Rational,
    removal_order: &[usize],
) -> Result<ConvexDecomposition> {
    iterative_pack_observed(instance, x, alpha, removal_order, |_| {})
}

/// Builds a decomposition with value exactly `α x_e` on every edge.
///
/// Edges are removed in `removal_order` and reinserted in reverse, starting
/// from `{(1, ∅)}`. Zero-valued edges are skipped. `observer` sees every
/// insertion before the next one starts.
pub fn iterative_pack_observed(
    instance: &Instance,
    x: &FractionalSolution,
    alpha: &Rational,
    removal_order: &[usize],
    mut observer: impl FnMut(&InsertionStep<'_>),
) -> Result<ConvexDecomposition> {
    if !alpha.is_positive() || *alpha > rational::one() {
        return Err(Error::InvalidArgument(format!(
            "α = {alpha} lies outside (0, 1]"
        )));
    }
    if x.len() != instance.num_edges() || !fractional_feasible(instance, x) {
        return Err(Error::InvalidArgument(
            "fractional solution is not feasible for the instance".into(),
        ));
    }
    let mut seen = vec![false; instance.num_edges()];
    for &e in removal_order {
        if e >= instance.num_edges() {
            return Err(Error::UnknownEdge(format!("#{e}")));
        }
        if std::mem::replace(&mut seen[e], true) {
            return Err(Error::InvalidArgument(format!(
                "edge `{}` appears twice in the removal order",
                instance.edge(e).id
            )));
        }
    }
    if let Some(e) = x.support().into_iter().find(|&e| !seen[e]) {
        return Err(Error::InvalidArgument(format!(
            "removal order misses support edge `{}`",
            instance.edge(e).id
        )));
    }

    let mut decomp = ConvexDecomposition::trivial();
    let mut residual: Vec<usize> = Vec::new();
    for &edge in removal_order.iter().rev() {
        let value = x.get(edge);
        if value.is_zero() {
            continue;
        }
        let target = alpha * value;
        let delta_bar = residual
            .iter()
            .flat_map(|&f| instance.edge(f).endpoints.iter().map(|p| p.demand))
            .min()
            .unwrap_or(0);
        let plan = plan_insertion(instance, &decomp, edge, &target)?;
        let next = apply_plan(&decomp, &plan);
        observer(&InsertionStep {
            edge,
            value,
            alpha,
            delta_bar,
            residual: &residual,
            before: &decomp,
            plan: &plan,
            after: &next,
        });
        decomp = next;
        residual.push(edge);
    }
    Ok(decomp)
}
