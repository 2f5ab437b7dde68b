use super::audit::{blocking_audit, BlockingAudit};
use super::engine::iterative_pack_observed;
use super::order::monotone_removal_order;
use crate::error::{Error, Result};
use crate::model::{ConvexDecomposition, FractionalSolution, Instance, IntegralSolution};
use crate::rational::{self, Rational};
use crate::ratlp::relaxation_extreme_point;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    /// 1/α = 2k, demand-monotone insertion.
    HypergraphDemandMatching,
    /// 1/α = k + 1, unit demands.
    BMatching,
    /// α = 2/3 on half-integral points, 1/2 otherwise.
    Matching,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::HypergraphDemandMatching => "khdm",
            Algorithm::BMatching => "bmatching",
            Algorithm::Matching => "matching",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PackOutcome {
    pub algorithm: Algorithm,
    pub alpha: Rational,
    /// The fractional point that was decomposed.
    pub x: FractionalSolution,
    /// `c·x`; the LP optimum when `x` came from the relaxation.
    pub fractional_value: Rational,
    pub removal_order: Vec<usize>,
    pub decomposition: ConvexDecomposition,
    pub best: IntegralSolution,
    pub best_cost: Rational,
    /// One per insertion when auditing was requested.
    pub audits: Vec<BlockingAudit>,
}

impl PackOutcome {
    /// `cost(best) ≥ α·c·x`, exactly.
    pub fn meets_guarantee(&self) -> bool {
        self.best_cost >= &self.alpha * &self.fractional_value
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DriverOptions {
    pub audit: bool,
}

fn run(
    algorithm: Algorithm,
    instance: &Instance,
    x: FractionalSolution,
    alpha: Rational,
    order: Vec<usize>,
    options: DriverOptions,
) -> Result<PackOutcome> {
    let mut audits = Vec::new();
    let decomposition = iterative_pack_observed(instance, &x, &alpha, &order, |step| {
        if options.audit {
            audits.push(blocking_audit(
                instance,
                step.before,
                step.edge,
                step.value,
                step.alpha,
                step.delta_bar,
            ));
        }
    })?;
    let (best, best_cost) = decomposition.best(instance);
    let fractional_value = x.dot(&instance.weights());
    Ok(PackOutcome {
        algorithm,
        alpha,
        x,
        fractional_value,
        removal_order: order,
        decomposition,
        best,
        best_cost,
        audits,
    })
}

/// 2k-approximation: decomposes `x*/(2k)` for the relaxation's optimal extreme point.
pub fn khdm_2k(instance: &Instance) -> Result<PackOutcome> {
    khdm_2k_with(instance, DriverOptions::default())
}

pub fn khdm_2k_with(instance: &Instance, options: DriverOptions) -> Result<PackOutcome> {
    let order = monotone_removal_order(instance)?;
    let (x, _) = relaxation_extreme_point(instance, None)?;
    let alpha = rational::ratio(1, 2 * instance.k() as i64);
    run(
        Algorithm::HypergraphDemandMatching,
        instance,
        x,
        alpha,
        order,
        options,
    )
}

/// (k+1)-approximation for unit demands.
pub fn bmatching_pack(instance: &Instance) -> Result<PackOutcome> {
    bmatching_pack_with(instance, DriverOptions::default())
}

pub fn bmatching_pack_with(instance: &Instance, options: DriverOptions) -> Result<PackOutcome> {
    if let Some(e) = instance
        .edges()
        .iter()
        .find(|e| e.endpoints.iter().any(|p| p.demand != 1))
    {
        return Err(Error::NonUnitDemand(e.id.clone()));
    }
    let (x, _) = relaxation_extreme_point(instance, None)?;
    let alpha = rational::ratio(1, instance.k() as i64 + 1);
    let order = (0..instance.num_edges()).collect();
    run(Algorithm::BMatching, instance, x, alpha, order, options)
}

fn check_matching(instance: &Instance) -> Result<()> {
    if let Some(e) = instance.edges().iter().find(|e| e.endpoints.len() > 2) {
        return Err(Error::NotMatchingInstance(format!(
            "edge `{}` has {} endpoints",
            e.id,
            e.endpoints.len()
        )));
    }
    if let Some(e) = instance
        .edges()
        .iter()
        .find(|e| e.endpoints.iter().any(|p| p.demand != 1))
    {
        return Err(Error::NotMatchingInstance(format!(
            "edge `{}` has a non-unit demand",
            e.id
        )));
    }
    if let Some(v) = instance.vertices().iter().find(|v| v.capacity != 1) {
        return Err(Error::NotMatchingInstance(format!(
            "vertex `{}` has capacity {}",
            v.id, v.capacity
        )));
    }
    Ok(())
}

/// Matching: α = 2/3 when `x` is half-integral, else α = 1/2.
pub fn matching_pack(instance: &Instance, x: &FractionalSolution) -> Result<PackOutcome> {
    matching_pack_with(instance, x, DriverOptions::default())
}

pub fn matching_pack_with(
    instance: &Instance,
    x: &FractionalSolution,
    options: DriverOptions,
) -> Result<PackOutcome> {
    check_matching(instance)?;
    let alpha = if x.is_half_integral() {
        rational::ratio(2, 3)
    } else {
        rational::ratio(1, 2)
    };
    let order = (0..instance.num_edges()).collect();
    run(
        Algorithm::Matching,
        instance,
        x.clone(),
        alpha,
        order,
        options,
    )
}

/// [`matching_pack`] on the relaxation's optimal extreme point.
pub fn matching_pack_lp(instance: &Instance, options: DriverOptions) -> Result<PackOutcome> {
    check_matching(instance)?;
    let (x, _) = relaxation_extreme_point(instance, None)?;
    matching_pack_with(instance, &x, options)
}
