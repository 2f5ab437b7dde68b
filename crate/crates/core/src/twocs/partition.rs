use super::round::{check_costs, sv_round_forest, trim_cycles, RoundedForest};
use crate::error::{Error, Result};
use crate::model::{cost_under, is_feasible, FractionalSolution, Instance, IntegralSolution};
use crate::rational::Rational;

/// Union-find where every element carries its parity relative to its parent.
struct ParityDsu {
    parent: Vec<usize>,
    parity: Vec<bool>,
    rank: Vec<u8>,
}

impl ParityDsu {
    fn new(n: usize) -> Self {
        ParityDsu {
            parent: (0..n).collect(),
            parity: vec![false; n],
            rank: vec![0; n],
        }
    }

    /// Root of `a` and the parity of `a` relative to it.
    fn find(&mut self, a: usize) -> (usize, bool) {
        let p = self.parent[a];
        if p == a {
            return (a, false);
        }
        let (root, up) = self.find(p);
        self.parent[a] = root;
        self.parity[a] ^= up;
        (root, self.parity[a])
    }

    /// Requires `class(a) ≠ class(b)` when `differ`, equality otherwise. False on conflict.
    fn relate(&mut self, a: usize, b: usize, differ: bool) -> bool {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            return (pa ^ pb) == differ;
        }
        let (hi, lo) = if self.rank[ra] >= self.rank[rb] {
            (ra, rb)
        } else {
            (rb, ra)
        };
        self.parent[lo] = hi;
        self.parity[lo] = pa ^ pb ^ differ;
        if self.rank[hi] == self.rank[lo] {
            self.rank[hi] += 1;
        }
        true
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Partition {
    pub first: IntegralSolution,
    pub second: IntegralSolution,
    /// Whichever half costs more; ties go to `first`.
    pub best: IntegralSolution,
    pub best_cost: Rational,
}

/// Splits the rounded set into two feasible halves.
///
/// At every overloaded vertex the designated edge goes to the opposite half
/// of all the other selected edges there. The smallest edge of each
/// constraint class lands in `first`.
pub fn partition_feasible(
    instance: &Instance,
    rounded: &RoundedForest,
    costs: &[Rational],
) -> Result<Partition> {
    check_costs(instance, costs)?;
    let mut dsu = ParityDsu::new(instance.num_edges());
    for (&v, &designated) in &rounded.designations {
        for &other in instance.incident(v) {
            if other != designated
                && rounded.selected.contains(other)
                && !dsu.relate(designated, other, true)
            {
                return Err(Error::ParityConflict(
                    instance.edge(designated).id.clone(),
                    instance.edge(other).id.clone(),
                ));
            }
        }
    }

    let mut root_class: Vec<Option<bool>> = vec![None; instance.num_edges()];
    let mut first = IntegralSolution::empty();
    let mut second = IntegralSolution::empty();
    for e in rounded.selected.iter() {
        let (root, parity) = dsu.find(e);
        let base = *root_class[root].get_or_insert(parity);
        if base ^ parity {
            second.insert(e);
        } else {
            first.insert(e);
        }
    }
    for half in [&first, &second] {
        if !is_feasible(instance, half)? {
            return Err(Error::InternalInvariantViolation(
                "a half of the partition is infeasible".into(),
            ));
        }
    }
    let (c1, c2) = (cost_under(costs, &first), cost_under(costs, &second));
    let (best, best_cost) = if c1 >= c2 {
        (first.clone(), c1)
    } else {
        (second.clone(), c2)
    };
    Ok(Partition {
        first,
        second,
        best,
        best_cost,
    })
}

/// Feasible integral set `z` inside the support of `x̄` with `y·z ≥ y·x̄ / 3`.
///
/// Trims one edge from every cycle, rounds the remaining forest and keeps the
/// better half of the partition. On forest supports the bound is `y·x̄ / 2`.
pub fn point_oracle3(
    instance: &Instance,
    x: &FractionalSolution,
    y: &[Rational],
) -> Result<IntegralSolution> {
    let trimmed = trim_cycles(instance, x, y)?;
    let rounded = sv_round_forest(instance, &trimmed, y)?;
    Ok(partition_feasible(instance, &rounded, y)?.best)
}
