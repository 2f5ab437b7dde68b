use std::collections::BTreeMap;

use num::{Signed, Zero};

use super::master::{CoverageDecomposition, Relation};
use crate::error::{Error, Result};
use crate::model::{ConvexDecomposition, Term};
use crate::rational::{self, Rational};

/// Trims a dominating decomposition down to its target exactly.
///
/// Each term first decides how much of its mass keeps each of its edges:
/// for every over-covered edge, in index order, the edge is dropped from
/// whole terms (in term order) while their mass fits inside the excess, and
/// the next term keeps it on only part of its mass. A term whose edges keep
/// different amounts is then cut into nested pieces, one per distinct
/// amount, smallest first. Dropping edges keeps every solution feasible.
/// When anything changed, identical solutions are merged and linearly
/// dependent terms are eliminated, which leaves at most `|support| + 1` terms.
pub fn exact_repair(cover: &CoverageDecomposition) -> Result<CoverageDecomposition> {
    let m = cover.target.len();
    let terms = cover.decomposition.terms();
    let mut keep: Vec<BTreeMap<usize, Rational>> = terms
        .iter()
        .map(|t| t.solution.iter().map(|e| (e, t.lambda.clone())).collect())
        .collect();
    let mut changed = false;
    for e in 0..m {
        let value = terms
            .iter()
            .filter(|t| t.solution.contains(e))
            .fold(Rational::zero(), |acc, t| acc + &t.lambda);
        let mut excess = value - &cover.target[e];
        if excess.is_negative() {
            return Err(Error::InvalidArgument(format!(
                "edge #{e} is under-covered by {}",
                -excess
            )));
        }
        for (term, kept) in terms.iter().zip(keep.iter_mut()) {
            if !excess.is_positive() {
                break;
            }
            let Some(amount) = kept.get_mut(&e) else {
                continue;
            };
            changed = true;
            if term.lambda <= excess {
                excess -= &term.lambda;
                *amount = Rational::zero();
            } else {
                *amount -= &excess;
                excess = Rational::zero();
            }
        }
    }
    if !changed {
        return Ok(CoverageDecomposition {
            decomposition: cover.decomposition.clone(),
            target: cover.target.clone(),
            relation: Relation::Exact,
        });
    }

    let mut pieces = Vec::new();
    for (term, kept) in terms.iter().zip(&keep) {
        let mut levels: Vec<&Rational> = kept.values().filter(|v| v.is_positive()).collect();
        levels.push(&term.lambda);
        levels.sort();
        levels.dedup();
        let mut below = Rational::zero();
        for level in levels {
            pieces.push(Term {
                lambda: level - &below,
                solution: kept
                    .iter()
                    .filter(|(_, v)| *v >= level)
                    .map(|(&e, _)| e)
                    .collect(),
            });
            below = level.clone();
        }
    }
    let pieces = eliminate_dependent(merge_duplicates(pieces), m);
    Ok(CoverageDecomposition {
        decomposition: ConvexDecomposition::from_terms(pieces),
        target: cover.target.clone(),
        relation: Relation::Exact,
    })
}

fn merge_duplicates(terms: Vec<Term>) -> Vec<Term> {
    let mut merged: Vec<Term> = Vec::with_capacity(terms.len());
    for term in terms {
        match merged.iter_mut().find(|t| t.solution == term.solution) {
            Some(t) => t.lambda += term.lambda,
            None => merged.push(term),
        }
    }
    merged
}

/// Some nonzero `μ` with `Σ_j μ_j v_j = 0`, or `None` when the vectors are independent.
fn kernel_vector(vectors: &[Vec<Rational>]) -> Option<Vec<Rational>> {
    let n = vectors.len();
    let dim = vectors.first().map_or(0, Vec::len);
    // Rows of the matrix whose columns are the vectors.
    let mut a: Vec<Vec<Rational>> = (0..dim)
        .map(|r| vectors.iter().map(|v| v[r].clone()).collect())
        .collect();
    let mut pivot_cols: Vec<usize> = Vec::new();
    for col in 0..n {
        let row = pivot_cols.len();
        let Some(p) = (row..dim).find(|&r| !a[r][col].is_zero()) else {
            // Free column: express it through the pivots found so far.
            let mut mu = vec![Rational::zero(); n];
            mu[col] = rational::one();
            for (r, &pc) in pivot_cols.iter().enumerate() {
                mu[pc] = -a[r][col].clone();
            }
            return Some(mu);
        };
        a.swap(row, p);
        let inv = a[row][col].recip();
        for v in a[row].iter_mut() {
            *v *= &inv;
        }
        let pivot = a[row].clone();
        for (r, line) in a.iter_mut().enumerate() {
            if r != row && !line[col].is_zero() {
                let f = line[col].clone();
                for (x, p) in line.iter_mut().zip(&pivot) {
                    *x -= &f * p;
                }
            }
        }
        pivot_cols.push(col);
    }
    None
}

/// Carathéodory step: removes terms until the vectors `(χ^j, 1)` are independent.
fn eliminate_dependent(mut terms: Vec<Term>, m: usize) -> Vec<Term> {
    loop {
        let vectors: Vec<Vec<Rational>> = terms
            .iter()
            .map(|t| {
                let mut v: Vec<Rational> = (0..m)
                    .map(|e| {
                        if t.solution.contains(e) {
                            rational::one()
                        } else {
                            Rational::zero()
                        }
                    })
                    .collect();
                v.push(rational::one());
                v
            })
            .collect();
        let Some(mu) = kernel_vector(&vectors) else {
            return terms;
        };
        // The last coordinate forces Σ μ = 0, so some μ_j is positive.
        let theta = terms
            .iter()
            .zip(&mu)
            .filter(|(_, u)| u.is_positive())
            .map(|(t, u)| &t.lambda / u)
            .min()
            .expect("a positive coefficient");
        for (t, u) in terms.iter_mut().zip(&mu) {
            t.lambda -= &theta * u;
        }
        terms.retain(|t| !t.lambda.is_zero());
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::IntegralSolution;
    use crate::rational::{int, ratio};

    fn term(lambda: Rational, edges: &[usize]) -> Term {
        Term {
            lambda,
            solution: edges.iter().copied().collect::<IntegralSolution>(),
        }
    }

    fn cover(terms: Vec<Term>, target: Vec<Rational>) -> CoverageDecomposition {
        CoverageDecomposition {
            decomposition: ConvexDecomposition::from_terms(terms),
            target,
            relation: Relation::Dominates,
        }
    }

    #[test]
    fn one_split_for_a_single_edge() {
        let out = exact_repair(&cover(vec![term(int(1), &[0])], vec![ratio(1, 3)])).unwrap();
        assert_eq!(
            out.decomposition.terms(),
            &[term(ratio(1, 3), &[0]), term(ratio(2, 3), &[])]
        );
        assert!(out.holds());
    }

    #[test]
    fn exact_input_is_unchanged() {
        let input = cover(
            vec![term(ratio(1, 2), &[0, 1]), term(ratio(1, 2), &[])],
            vec![ratio(1, 2), ratio(1, 2)],
        );
        let out = exact_repair(&input).unwrap();
        assert_eq!(out.decomposition, input.decomposition);
        assert_eq!(out.relation, Relation::Exact);
    }

    #[test]
    fn two_edges_sharing_terms() {
        let input = cover(
            vec![term(ratio(1, 2), &[0, 1]), term(ratio(1, 2), &[1])],
            vec![ratio(1, 4), ratio(3, 4)],
        );
        let out = exact_repair(&input).unwrap();
        assert!(out.holds());
        assert_eq!(
            out.decomposition.terms(),
            &[
                term(ratio(1, 4), &[0, 1]),
                term(ratio(1, 4), &[]),
                term(ratio(1, 2), &[1])
            ]
        );
        assert_eq!(out.decomposition.total_mass(), int(1));
        assert!(out.decomposition.len() <= 2 * input.decomposition.len());
    }

    #[test]
    fn equal_targets_share_one_piece() {
        let input = cover(
            vec![term(int(1), &[0, 1])],
            vec![ratio(1, 12), ratio(1, 12)],
        );
        let out = exact_repair(&input).unwrap();
        assert_eq!(
            out.decomposition.terms(),
            &[term(ratio(1, 12), &[0, 1]), term(ratio(11, 12), &[])]
        );
    }

    #[test]
    fn distinct_targets_form_a_chain() {
        let input = cover(
            vec![term(int(1), &[0, 1, 2])],
            vec![ratio(1, 6), ratio(1, 3), ratio(1, 6)],
        );
        let out = exact_repair(&input).unwrap();
        assert_eq!(
            out.decomposition.terms(),
            &[
                term(ratio(1, 6), &[0, 1, 2]),
                term(ratio(1, 6), &[1]),
                term(ratio(2, 3), &[])
            ]
        );
    }

    #[test]
    fn under_coverage_is_rejected() {
        let input = cover(vec![term(int(1), &[])], vec![ratio(1, 3)]);
        assert!(exact_repair(&input).is_err());
    }

    #[test]
    fn dependent_terms_are_eliminated() {
        // Four terms over two edges; at most three survive.
        let input = cover(
            vec![
                term(ratio(1, 4), &[0]),
                term(ratio(1, 4), &[1]),
                term(ratio(1, 4), &[0, 1]),
                term(ratio(1, 4), &[]),
            ],
            vec![ratio(1, 4), ratio(1, 4)],
        );
        let out = exact_repair(&input).unwrap();
        assert!(out.holds());
        assert!(out.decomposition.len() <= 3);
        assert!(out
            .decomposition
            .terms()
            .iter()
            .all(|t| t.lambda.is_positive()));
    }
}
