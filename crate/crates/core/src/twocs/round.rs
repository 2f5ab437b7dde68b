use std::collections::{BTreeMap, VecDeque};

use num::{One, Signed, Zero};

use super::augment::{direction, AugmentationStep, Path};
use super::structure::{
    adjacency, analyze_positive_support, ends, ensure_rank_two, node_at, node_index, SupportNode,
};
use crate::error::{Error, Result};
use crate::model::{fractional_feasible, loads, FractionalSolution, Instance, IntegralSolution};
use crate::rational::Rational;

pub(crate) fn check_costs(instance: &Instance, costs: &[Rational]) -> Result<()> {
    if costs.len() != instance.num_edges() {
        return Err(Error::InvalidArgument(format!(
            "{} costs for {} edges",
            costs.len(),
            instance.num_edges()
        )));
    }
    if let Some(e) = costs.iter().position(Signed::is_negative) {
        return Err(Error::InvalidArgument(format!(
            "cost of edge `{}` is negative",
            instance.edge(e).id
        )));
    }
    Ok(())
}

/// Zeroes the cheapest edge (by `costs_e · x_e`, ties by index) on every cycle of the support.
pub fn trim_cycles(
    instance: &Instance,
    x: &FractionalSolution,
    costs: &[Rational],
) -> Result<FractionalSolution> {
    check_costs(instance, costs)?;
    let structure = analyze_positive_support(instance, x)?;
    if let Some(i) = structure
        .components
        .iter()
        .position(|c| c.kind == super::ComponentKind::MultiCycle)
    {
        return Err(Error::MultipleCycles(i));
    }
    let mut trimmed = x.clone();
    for cycle in structure.cycles() {
        if let [a, b] = cycle {
            return Err(Error::ParallelEdges(
                instance.edge(*a).id.clone(),
                instance.edge(*b).id.clone(),
            ));
        }
        let cheapest = *cycle
            .iter()
            .min_by(|&&a, &&b| {
                (&costs[a] * x.get(a))
                    .cmp(&(&costs[b] * x.get(b)))
                    .then(a.cmp(&b))
            })
            .expect("nonempty cycle");
        trimmed.set(cheapest, Rational::zero());
    }
    Ok(trimmed)
}

/// Outcome of rounding a forest-supported point.
#[derive(Debug, Clone, PartialEq)]
pub struct RoundedForest {
    pub selected: IntegralSolution,
    /// Vertex → the one selected edge whose removal makes that vertex feasible again.
    pub designations: BTreeMap<usize, usize>,
    /// Load of `selected` at every vertex.
    pub loads: Vec<u64>,
    pub steps: Vec<AugmentationStep>,
}

impl RoundedForest {
    /// Checks the load bound at every vertex, with the designated edge removed where there is one.
    pub fn designation_invariant_holds(&self, instance: &Instance) -> bool {
        (0..instance.num_vertices()).all(|v| {
            let load = self.loads[v];
            let relief = self
                .designations
                .get(&v)
                .and_then(|&e| instance.edge(e).demand_at(v))
                .unwrap_or(0);
            load - relief <= instance.capacity(v)
        })
    }
}

/// Tree path between two nodes of the component containing both.
fn tree_path(adj: &[Vec<(usize, usize)>], from: usize, to: usize) -> (Vec<usize>, Vec<usize>) {
    let mut parent: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
    let mut queue = VecDeque::from([from]);
    parent.insert(from, (usize::MAX, usize::MAX));
    while let Some(u) = queue.pop_front() {
        if u == to {
            break;
        }
        for &(e, w) in &adj[u] {
            if let std::collections::btree_map::Entry::Vacant(slot) = parent.entry(w) {
                slot.insert((u, e));
                queue.push_back(w);
            }
        }
    }
    let mut nodes = vec![to];
    let mut edges = Vec::new();
    let mut u = to;
    while u != from {
        let (p, e) = parent[&u];
        edges.push(e);
        nodes.push(p);
        u = p;
    }
    nodes.reverse();
    edges.reverse();
    (nodes, edges)
}

/// Rounds a forest-supported point to an integral set of no smaller cost.
///
/// Repeatedly augments along the path between the two smallest leaves of the
/// fractional component holding the smallest fractional edge, in the
/// direction that does not lower `costs · x`, until no fractional edge is
/// left. Only leaves can be overloaded, and each at most once.
pub fn sv_round_forest(
    instance: &Instance,
    x: &FractionalSolution,
    costs: &[Rational],
) -> Result<RoundedForest> {
    ensure_rank_two(instance)?;
    check_costs(instance, costs)?;
    if x.len() != instance.num_edges() || !fractional_feasible(instance, x) {
        return Err(Error::InvalidArgument(
            "point is not feasible for the instance".into(),
        ));
    }
    if !analyze_positive_support(instance, x)?.is_forest() {
        return Err(Error::InvalidArgument(
            "support of the point contains a cycle".into(),
        ));
    }

    let mut values: Vec<Rational> = x.values().to_vec();
    let mut selected: IntegralSolution =
        (0..values.len()).filter(|&e| values[e].is_one()).collect();
    let mut load = loads(instance, &selected)?;
    let mut designations = BTreeMap::new();
    let mut steps = Vec::new();

    loop {
        let fractional: Vec<usize> = (0..values.len())
            .filter(|&e| values[e].is_positive() && !values[e].is_one())
            .collect();
        let Some(&first) = fractional.first() else {
            break;
        };
        let adj = adjacency(instance, &fractional);

        let mut component = Vec::new();
        let mut seen = vec![false; adj.len()];
        let root = node_index(instance, ends(instance, first).0);
        let mut queue = VecDeque::from([root]);
        seen[root] = true;
        while let Some(u) = queue.pop_front() {
            component.push(u);
            for &(_, w) in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        let mut leaves: Vec<usize> = component
            .into_iter()
            .filter(|&u| adj[u].len() == 1)
            .collect();
        leaves.sort_unstable();
        let (nodes, edges) = tree_path(&adj, leaves[0], leaves[1]);
        let path = Path {
            nodes: nodes.iter().map(|&u| node_at(instance, u)).collect(),
            edges,
        };

        let mut z = direction(instance, &path);
        let gain = path
            .edges
            .iter()
            .zip(&z)
            .fold(Rational::zero(), |acc, (&e, ze)| acc + &costs[e] * ze);
        if gain.is_negative() {
            for ze in &mut z {
                *ze = -ze.clone();
            }
        }
        let epsilon = path
            .edges
            .iter()
            .zip(&z)
            .map(|(&e, ze)| {
                if ze.is_positive() {
                    (Rational::one() - &values[e]) / ze
                } else {
                    &values[e] / -ze.clone()
                }
            })
            .min()
            .expect("nonempty path");

        let mut settled = Vec::new();
        for (&e, ze) in path.edges.iter().zip(&z) {
            values[e] += &epsilon * ze;
            if values[e].is_zero() {
                settled.push(e);
            } else if values[e].is_one() {
                settled.push(e);
                selected.insert(e);
                for p in &instance.edge(e).endpoints {
                    load[p.vertex] += p.demand;
                    if load[p.vertex] > instance.capacity(p.vertex) {
                        if let Some(&prior) = designations.get(&p.vertex) {
                            return Err(Error::InternalInvariantViolation(format!(
                                "vertex `{}` overloaded by both `{}` and `{}`",
                                instance.vertex(p.vertex).id,
                                instance.edge(prior).id,
                                instance.edge(e).id
                            )));
                        }
                        designations.insert(p.vertex, e);
                    }
                }
            }
        }
        steps.push(AugmentationStep {
            path,
            z,
            epsilon,
            settled,
        });
    }

    let rounded = RoundedForest {
        selected,
        designations,
        loads: load,
        steps,
    };
    if !rounded.designation_invariant_holds(instance) {
        return Err(Error::InternalInvariantViolation(
            "a vertex stays overloaded after removing its designated edge".into(),
        ));
    }
    Ok(rounded)
}

/// Interior nodes of a rounding path, used by invariant checks.
pub fn interior_vertices(path: &Path) -> Vec<usize> {
    path.nodes[1..path.nodes.len() - 1]
        .iter()
        .filter_map(|n| match n {
            SupportNode::Vertex(v) => Some(*v),
            SupportNode::Stub(_) => None,
        })
        .collect()
}
