use num::Zero;

use crate::error::{Error, Result};
use crate::model::{Instance, IntegralSolution};
use crate::rational::Rational;

pub const DEFAULT_EDGE_LIMIT: usize = 20;

struct Search<'a> {
    instance: &'a Instance,
    weights: Vec<Rational>,
    /// `suffix[i]` = total weight of edges `i..`.
    suffix: Vec<Rational>,
    load: Vec<u64>,
    chosen: Vec<usize>,
    cost: Rational,
    best: Vec<usize>,
    best_cost: Rational,
}

impl Search<'_> {
    fn fits(&self, e: usize) -> bool {
        self.instance
            .edge(e)
            .endpoints
            .iter()
            .all(|p| self.load[p.vertex] + p.demand <= self.instance.capacity(p.vertex))
    }

    fn visit(&mut self, i: usize) {
        if &self.cost + &self.suffix[i] < self.best_cost {
            return;
        }
        if i == self.weights.len() {
            if self.cost > self.best_cost
                || (self.cost == self.best_cost && self.chosen < self.best)
            {
                self.best_cost = self.cost.clone();
                self.best = self.chosen.clone();
            }
            return;
        }
        if self.fits(i) {
            for p in &self.instance.edge(i).endpoints {
                self.load[p.vertex] += p.demand;
            }
            self.chosen.push(i);
            self.cost += &self.weights[i];
            self.visit(i + 1);
            self.cost -= &self.weights[i];
            self.chosen.pop();
            for p in &self.instance.edge(i).endpoints {
                self.load[p.vertex] -= p.demand;
            }
        }
        self.visit(i + 1);
    }
}

/// Maximum-weight feasible edge set by exhaustive search.
///
/// Depth-first over edges in index order with a remaining-weight bound.
/// Among optimal sets the lexicographically smallest sorted index sequence is returned.
pub fn brute_force_opt(instance: &Instance, edge_limit: usize) -> Result<IntegralSolution> {
    let m = instance.num_edges();
    if m > edge_limit {
        return Err(Error::TooLarge {
            edges: m,
            limit: edge_limit,
        });
    }
    let weights = instance.weights();
    let mut suffix = vec![Rational::zero(); m + 1];
    for i in (0..m).rev() {
        suffix[i] = &suffix[i + 1] + &weights[i];
    }
    let mut search = Search {
        instance,
        weights,
        suffix,
        load: vec![0; instance.num_vertices()],
        chosen: Vec::new(),
        cost: Rational::zero(),
        best: Vec::new(),
        best_cost: Rational::zero(),
    };
    search.visit(0);
    Ok(search.best.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::solution_cost;
    use crate::rational::int;

    #[test]
    fn triangle_picks_the_first_edge() {
        let t = Instance::builder()
            .vertex("1", 3)
            .vertex("2", 3)
            .vertex("3", 3)
            .edge("a", &[("1", 2), ("2", 2)], int(1))
            .edge("b", &[("2", 2), ("3", 2)], int(1))
            .edge("c", &[("1", 2), ("3", 2)], int(1))
            .build()
            .unwrap();
        let opt = brute_force_opt(&t, DEFAULT_EDGE_LIMIT).unwrap();
        assert_eq!(opt.ids(&t), vec!["a"]);
    }

    #[test]
    fn star_knapsack() {
        let star = Instance::builder()
            .vertex("c", 5)
            .vertex("l1", 3)
            .vertex("l2", 3)
            .vertex("l3", 3)
            .edge("e1", &[("c", 3), ("l1", 3)], int(2))
            .edge("e2", &[("c", 3), ("l2", 3)], int(3))
            .edge("e3", &[("c", 3), ("l3", 3)], int(4))
            .build()
            .unwrap();
        let opt = brute_force_opt(&star, DEFAULT_EDGE_LIMIT).unwrap();
        assert_eq!(opt.ids(&star), vec!["e3"]);
        assert_eq!(solution_cost(&star, &opt).unwrap(), int(4));
    }

    #[test]
    fn empty_and_too_large() {
        let empty = Instance::builder().build().unwrap();
        assert!(brute_force_opt(&empty, 0).unwrap().is_empty());
        let one = Instance::builder()
            .vertex("u", 1)
            .edge("e", &[("u", 1)], int(1))
            .build()
            .unwrap();
        assert_eq!(
            brute_force_opt(&one, 0),
            Err(Error::TooLarge { edges: 1, limit: 0 })
        );
    }

    #[test]
    fn ties_prefer_lexicographically_smaller_sets() {
        // {a, c} and {b} both weigh 2; [0, 2] < [1].
        let inst = Instance::builder()
            .vertex("u", 1)
            .vertex("v", 1)
            .edge("a", &[("u", 1)], int(1))
            .edge("b", &[("u", 1), ("v", 1)], int(2))
            .edge("c", &[("v", 1)], int(1))
            .build()
            .unwrap();
        assert_eq!(
            brute_force_opt(&inst, 20).unwrap().ids(&inst),
            vec!["a", "c"]
        );
    }
}
