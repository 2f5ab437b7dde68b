use std::cmp::max;

use num::Zero;

use crate::model::{ConvexDecomposition, Instance};
use crate::rational::{self, Rational};

/// One term of the decomposition seen from a single vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct Bin {
    pub mu: Rational,
    /// Sum of the demands at the vertex of the term's edges.
    pub height: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EndpointAudit {
    pub vertex: usize,
    pub capacity: u64,
    pub demand: u64,
    /// Mass of the terms that cannot take the edge at this vertex.
    pub beta: Rational,
    /// `α (b_u − d_u x_S) / max(b_u − d_u + 1, δ̄)`.
    pub bound: Rational,
    pub bins: Vec<Bin>,
}

impl EndpointAudit {
    pub fn within_bound(&self) -> bool {
        self.beta <= self.bound
    }

    pub fn heights_within_capacity(&self) -> bool {
        self.bins.iter().all(|b| b.height <= self.capacity)
    }
}

/// Blocking analysis for one insertion, computed from the decomposition as it stands.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockingAudit {
    pub edge: usize,
    pub alpha: Rational,
    pub value: Rational,
    pub delta_bar: u64,
    pub endpoints: Vec<EndpointAudit>,
}

impl BlockingAudit {
    /// `1 − Σ_{u ∈ S} β_u`, the mass guaranteed to accommodate the edge.
    pub fn room(&self) -> Rational {
        self.endpoints
            .iter()
            .fold(rational::one(), |acc, p| acc - &p.beta)
    }

    pub fn required(&self) -> Rational {
        &self.alpha * &self.value
    }

    /// The union-bound packing condition `1 − Σ β_u ≥ α x_S`.
    pub fn condition_holds(&self) -> bool {
        self.room() >= self.required()
    }

    pub fn bounds_hold(&self) -> bool {
        self.endpoints.iter().all(EndpointAudit::within_bound)
    }
}

/// Measures how much of `decomp` blocks `edge` at each of its endpoints and
/// the bound on that mass implied by the volume argument.
///
/// `delta_bar` is the smallest demand among the residual edges (those in the
/// decomposition); pass 0 when there are none.
pub fn blocking_audit(
    instance: &Instance,
    decomp: &ConvexDecomposition,
    edge: usize,
    value: &Rational,
    alpha: &Rational,
    delta_bar: u64,
) -> BlockingAudit {
    let endpoints = instance
        .edge(edge)
        .endpoints
        .iter()
        .map(|p| {
            let capacity = instance.capacity(p.vertex);
            let bins: Vec<Bin> = decomp
                .terms()
                .iter()
                .map(|t| Bin {
                    mu: t.lambda.clone(),
                    height: t
                        .solution
                        .iter()
                        .filter_map(|f| instance.edge(f).demand_at(p.vertex))
                        .sum(),
                })
                .collect();
            let beta = bins
                .iter()
                .filter(|b| b.height + p.demand > capacity)
                .fold(Rational::zero(), |acc, b| acc + &b.mu);
            let volume = rational::int(capacity as i64) - rational::int(p.demand as i64) * value;
            let floor = max(capacity - p.demand + 1, delta_bar);
            let bound = alpha * volume / rational::int(floor as i64);
            EndpointAudit {
                vertex: p.vertex,
                capacity,
                demand: p.demand,
                beta,
                bound,
                bins,
            }
        })
        .collect();
    BlockingAudit {
        edge,
        alpha: alpha.clone(),
        value: value.clone(),
        delta_bar,
        endpoints,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Term;
    use crate::rational::{int, ratio};

    fn t2() -> Instance {
        Instance::builder()
            .vertex("1", 3)
            .vertex("2", 3)
            .vertex("3", 3)
            .edge("a", &[("1", 2), ("2", 2)], int(1))
            .edge("b", &[("2", 2), ("3", 2)], int(1))
            .edge("c", &[("1", 2), ("3", 2)], int(1))
            .build()
            .unwrap()
    }

    #[test]
    fn trivial_decomposition_blocks_nothing() {
        let t = t2();
        let audit = blocking_audit(&t, &ConvexDecomposition::trivial(), 0, &int(1), &int(1), 0);
        assert!(audit.endpoints.iter().all(|p| p.beta == int(0)));
        assert!(audit.condition_holds());
        assert!(audit.bounds_hold());
    }

    #[test]
    fn blocked_mass_is_counted_per_endpoint() {
        let t = t2();
        // {(1/4,{b}), (3/16,{c}), (9/16,∅)}; inserting a: b blocks at 2, c blocks at 1.
        let d = ConvexDecomposition::from_terms(vec![
            Term {
                lambda: ratio(1, 4),
                solution: [1].into_iter().collect(),
            },
            Term {
                lambda: ratio(3, 16),
                solution: [2].into_iter().collect(),
            },
            Term {
                lambda: ratio(9, 16),
                solution: Default::default(),
            },
        ]);
        let audit = blocking_audit(&t, &d, 0, &ratio(3, 4), &ratio(1, 4), 2);
        let betas: Vec<_> = audit.endpoints.iter().map(|p| p.beta.clone()).collect();
        assert_eq!(betas, vec![ratio(3, 16), ratio(1, 4)]);
        assert_eq!(audit.room(), ratio(9, 16));
        assert_eq!(audit.required(), ratio(3, 16));
        assert!(audit.condition_holds());
        // bound = (1/4)(3 − 2·3/4)/max(2, 2) = 3/16
        assert!(audit.endpoints.iter().all(|p| p.bound == ratio(3, 16)));
        assert!(!audit.endpoints[1].within_bound());
        assert!(audit
            .endpoints
            .iter()
            .all(EndpointAudit::heights_within_capacity));
    }
}
