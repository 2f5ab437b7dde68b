use num::{One, Zero};
use serde_json::json;

use super::master::{carr_vempala, default_budget, ColumnGeneration, CoverageDecomposition};
use super::repair::exact_repair;
use crate::error::Result;
use crate::iterpack::pack_edge;
use crate::model::{ConvexDecomposition, FractionalSolution, Instance, IntegralSolution};
use crate::rational::{self, Rational};
use crate::ratlp::relaxation_extreme_point;
use crate::twocs::{ensure_rank_two, point_oracle3};

#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    pub lp_objective: Rational,
    pub best_cost: Rational,
    /// `best_cost / lp_objective`; 1 when the LP optimum is 0.
    pub ratio: Rational,
    pub alpha: Rational,
    pub solutions: usize,
    pub iterations: usize,
}

impl Certificate {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "lp_objective": rational::format(&self.lp_objective),
            "best_cost": rational::format(&self.best_cost),
            "ratio": rational::format(&self.ratio),
            "alpha": rational::format(&self.alpha),
            "solutions": self.solutions,
            "iterations": self.iterations,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TwoCsOutcome {
    /// The LP extreme point.
    pub x_hat: FractionalSolution,
    /// Edges with `x̂_e = 1`, peeled before column generation.
    pub one_edges: Vec<usize>,
    pub column_generation: ColumnGeneration,
    /// Exact decomposition of `x̄ / 3` before the 1-edges are packed back.
    pub repaired: CoverageDecomposition,
    /// Exact decomposition of `x̂ / 3`.
    pub decomposition: ConvexDecomposition,
    pub best: IntegralSolution,
    pub best_cost: Rational,
    pub certificate: Certificate,
}

impl TwoCsOutcome {
    pub fn meets_guarantee(&self) -> bool {
        &self.best_cost * rational::int(3) >= self.certificate.lp_objective
    }
}

pub fn two_cs_pip_3approx(instance: &Instance) -> Result<TwoCsOutcome> {
    two_cs_pip_3approx_with(instance, None)
}

/// Rank-two 3-approximation with an exact decomposition of `x̂ / 3`.
///
/// Solves the relaxation, drops 0-edges and peels 1-edges, covers the
/// fractional rest with column generation over [`point_oracle3`], trims the
/// cover to equality and finally packs each 1-edge into a third of the mass.
/// `budget` bounds the pricing rounds (default `50·|support| + 50`).
pub fn two_cs_pip_3approx_with(instance: &Instance, budget: Option<usize>) -> Result<TwoCsOutcome> {
    ensure_rank_two(instance)?;
    let (x_hat, lp) = relaxation_extreme_point(instance, None)?;
    let alpha = rational::ratio(1, 3);

    let one_edges: Vec<usize> = (0..x_hat.len())
        .filter(|&e| x_hat.get(e).is_one())
        .collect();
    let mut x_bar = x_hat.clone();
    for &e in &one_edges {
        x_bar.set(e, Rational::zero());
    }
    let budget = budget.unwrap_or_else(|| default_budget(x_bar.support().len()));
    let column_generation = carr_vempala(
        instance,
        &x_bar,
        &rational::int(3),
        |y| point_oracle3(instance, &x_bar, y),
        budget,
    )?;
    let repaired = exact_repair(&column_generation.cover)?;

    let mut decomposition = repaired.decomposition.clone();
    for &e in one_edges.iter().rev() {
        decomposition = pack_edge(instance, &decomposition, e, &alpha)?;
    }
    let (best, best_cost) = decomposition.best(instance);
    let ratio = if lp.objective.is_zero() {
        rational::one()
    } else {
        &best_cost / &lp.objective
    };
    let certificate = Certificate {
        lp_objective: lp.objective,
        best_cost: best_cost.clone(),
        ratio,
        alpha,
        solutions: decomposition.len(),
        iterations: column_generation.master.iterations,
    };
    Ok(TwoCsOutcome {
        x_hat,
        one_edges,
        column_generation,
        repaired,
        decomposition,
        best,
        best_cost,
        certificate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::rational::{int, ratio};

    #[test]
    fn demand_triangle() {
        let t = Instance::builder()
            .vertex("1", 3)
            .vertex("2", 3)
            .vertex("3", 3)
            .edge("a", &[("1", 2), ("2", 2)], int(1))
            .edge("b", &[("2", 2), ("3", 2)], int(1))
            .edge("c", &[("1", 2), ("3", 2)], int(1))
            .build()
            .unwrap();
        let out = two_cs_pip_3approx(&t).unwrap();
        assert_eq!(out.certificate.lp_objective, ratio(9, 4));
        assert_eq!(out.decomposition.values(3), vec![ratio(1, 4); 3]);
        assert_eq!(out.best_cost, int(1));
        assert_eq!(out.certificate.ratio, ratio(4, 9));
        out.decomposition.validate(&t).unwrap();
        assert!(out.meets_guarantee());
        let json = out.certificate.to_json();
        assert_eq!(json["alpha"], "1/3");
        assert_eq!(json["lp_objective"], "9/4");
    }

    #[test]
    fn integral_extreme_point_is_peeled() {
        let inst = Instance::builder()
            .vertex("u", 2)
            .vertex("v", 2)
            .edge("e", &[("u", 2), ("v", 1)], int(5))
            .build()
            .unwrap();
        let out = two_cs_pip_3approx(&inst).unwrap();
        assert_eq!(out.one_edges, vec![0]);
        assert_eq!(out.decomposition.values(1), vec![ratio(1, 3)]);
        assert_eq!(out.best.ids(&inst), vec!["e"]);
        assert_eq!(out.certificate.ratio, int(1));
    }

    #[test]
    fn empty_instance() {
        let inst = Instance::builder().vertex("u", 1).build().unwrap();
        let out = two_cs_pip_3approx(&inst).unwrap();
        assert_eq!(out.decomposition, ConvexDecomposition::trivial());
        assert!(out.best.is_empty());
        assert_eq!(out.certificate.ratio, int(1));
    }

    #[test]
    fn hyperedges_are_rejected() {
        let inst = Instance::builder()
            .vertex("1", 1)
            .vertex("2", 1)
            .vertex("3", 1)
            .edge("a", &[("1", 1), ("2", 1), ("3", 1)], int(1))
            .build()
            .unwrap();
        assert!(matches!(
            two_cs_pip_3approx(&inst),
            Err(Error::NotRankTwo(_))
        ));
    }
}
