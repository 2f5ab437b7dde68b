use num::{Signed, Zero};

use crate::error::{Error, Result};
use crate::model::{can_accommodate, ConvexDecomposition, Instance, Term};
use crate::rational::{self, Rational};

/// Where an edge goes when it is packed into a decomposition.
#[derive(Debug, Clone, PartialEq)]
pub struct InsertionPlan {
    pub edge: usize,
    pub target: Rational,
    /// `(term index, mass that receives the edge)`. Includes the split term.
    pub assignments: Vec<(usize, Rational)>,
    pub split: Option<Split>,
}

/// A term cloned in two: `with_edge` of its mass gains the edge, `without_edge` keeps the old solution.
#[derive(Debug, Clone, PartialEq)]
pub struct Split {
    pub term: usize,
    pub with_edge: Rational,
    pub without_edge: Rational,
}

impl InsertionPlan {
    pub fn assigned_mass(&self) -> Rational {
        self.assignments
            .iter()
            .fold(Rational::zero(), |acc, (_, m)| acc + m)
    }
}

/// Total multiplier mass of the terms that can take `edge` without overloading a vertex.
pub fn accommodating_mass(
    instance: &Instance,
    decomp: &ConvexDecomposition,
    edge: usize,
) -> Rational {
    decomp
        .terms()
        .iter()
        .filter(|t| can_accommodate(instance, &t.solution, edge))
        .fold(Rational::zero(), |acc, t| acc + &t.lambda)
}

/// Chooses receiving terms for `edge` so that exactly `target` mass contains it.
///
/// Accommodating terms are taken whole in decreasing multiplier order (ties
/// by term index) while they fit under the remaining target; the first one
/// that does not fit is split. At most one new term results.
pub fn plan_insertion(
    instance: &Instance,
    decomp: &ConvexDecomposition,
    edge: usize,
    target: &Rational,
) -> Result<InsertionPlan> {
    if edge >= instance.num_edges() {
        return Err(Error::UnknownEdge(format!("#{edge}")));
    }
    if !rational::in_unit_interval(target) {
        return Err(Error::InvalidArgument(format!(
            "insertion target {target} lies outside [0, 1]"
        )));
    }
    if decomp.terms().iter().any(|t| t.solution.contains(edge)) {
        return Err(Error::InvalidArgument(format!(
            "edge `{}` is already in the decomposition",
            instance.edge(edge).id
        )));
    }
    let mut plan = InsertionPlan {
        edge,
        target: target.clone(),
        assignments: Vec::new(),
        split: None,
    };
    if target.is_zero() {
        return Ok(plan);
    }

    let mut candidates: Vec<usize> = (0..decomp.len())
        .filter(|&i| can_accommodate(instance, &decomp.terms()[i].solution, edge))
        .collect();
    let available = candidates
        .iter()
        .fold(Rational::zero(), |acc, &i| acc + &decomp.terms()[i].lambda);
    if available < *target {
        return Err(Error::InsufficientRoom {
            edge: instance.edge(edge).id.clone(),
            target: Box::new(target.clone()),
            available: Box::new(available),
        });
    }
    let terms = decomp.terms();
    candidates.sort_by(|&a, &b| terms[b].lambda.cmp(&terms[a].lambda).then(a.cmp(&b)));

    let mut remaining = target.clone();
    for i in candidates {
        let lambda = &terms[i].lambda;
        if *lambda <= remaining {
            remaining -= lambda;
            plan.assignments.push((i, lambda.clone()));
        } else {
            plan.split = Some(Split {
                term: i,
                with_edge: remaining.clone(),
                without_edge: lambda - &remaining,
            });
            plan.assignments.push((i, remaining.clone()));
            remaining = Rational::zero();
        }
        if remaining.is_zero() {
            break;
        }
    }
    debug_assert!(remaining.is_zero());
    Ok(plan)
}

/// Applies a plan. A split term becomes the copy with the edge followed by the copy without.
pub fn apply_plan(decomp: &ConvexDecomposition, plan: &InsertionPlan) -> ConvexDecomposition {
    let mut receives = vec![false; decomp.len()];
    for (i, _) in &plan.assignments {
        receives[*i] = true;
    }
    let mut terms = Vec::with_capacity(decomp.len() + 1);
    for (i, term) in decomp.terms().iter().enumerate() {
        match &plan.split {
            Some(split) if split.term == i => {
                terms.push(Term {
                    lambda: split.with_edge.clone(),
                    solution: term.solution.with(plan.edge),
                });
                if split.without_edge.is_positive() {
                    terms.push(Term {
                        lambda: split.without_edge.clone(),
                        solution: term.solution.clone(),
                    });
                }
            }
            _ if receives[i] => terms.push(Term {
                lambda: term.lambda.clone(),
                solution: term.solution.with(plan.edge),
            }),
            _ => terms.push(term.clone()),
        }
    }
    ConvexDecomposition::from_terms(terms)
}

/// Packs `edge` into exactly `target` of the decomposition's mass.
pub fn pack_edge(
    instance: &Instance,
    decomp: &ConvexDecomposition,
    edge: usize,
    target: &Rational,
) -> Result<ConvexDecomposition> {
    let plan = plan_insertion(instance, decomp, edge, target)?;
    Ok(apply_plan(decomp, &plan))
}
