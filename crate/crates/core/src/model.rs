//! Instances, fractional and integral solutions, and convex decompositions.
//!
//! Vertices and edges are stored sorted by id, so an edge index is also its
//! rank in id order. All tie-breaks "by ascending edge id" in the solvers are
//! tie-breaks by index.

use std::collections::{BTreeSet, HashMap};

use num::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub id: String,
    pub capacity: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Endpoint {
    pub vertex: usize,
    pub demand: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Edge {
    pub id: String,
    /// Sorted by vertex index.
    pub endpoints: Vec<Endpoint>,
    pub weight: Rational,
}

impl Edge {
    pub fn demand_at(&self, vertex: usize) -> Option<u64> {
        self.endpoints
            .iter()
            .find(|p| p.vertex == vertex)
            .map(|p| p.demand)
    }

    pub fn is_uniform_demand(&self) -> bool {
        self.endpoints
            .windows(2)
            .all(|w| w[0].demand == w[1].demand)
    }

    pub fn touches(&self, vertex: usize) -> bool {
        self.endpoints.iter().any(|p| p.vertex == vertex)
    }

    pub fn vertex_set(&self) -> Vec<usize> {
        self.endpoints.iter().map(|p| p.vertex).collect()
    }
}

/// A column-sparse packing integer program: maximize total weight of chosen
/// edges subject to the per-vertex demand/capacity constraints.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    incidence: Vec<Vec<usize>>,
    k: usize,
}

/// `(id, [(vertex id, demand)], weight)` as handed to the builder.
type PendingEdge = (String, Vec<(String, u64)>, Rational);

/// Collects vertices and edges by id, then validates everything at once.
#[derive(Debug, Default, Clone)]
pub struct InstanceBuilder {
    vertices: Vec<(String, u64)>,
    edges: Vec<PendingEdge>,
}

impl InstanceBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vertex(mut self, id: impl Into<String>, capacity: u64) -> Self {
        self.vertices.push((id.into(), capacity));
        self
    }

    pub fn edge<V: Into<String> + Clone>(
        mut self,
        id: impl Into<String>,
        endpoints: &[(V, u64)],
        weight: Rational,
    ) -> Self {
        let endpoints = endpoints
            .iter()
            .map(|(v, d)| (v.clone().into(), *d))
            .collect();
        self.edges.push((id.into(), endpoints, weight));
        self
    }

    pub fn add_vertex(&mut self, id: impl Into<String>, capacity: u64) {
        self.vertices.push((id.into(), capacity));
    }

    pub fn add_edge(
        &mut self,
        id: impl Into<String>,
        endpoints: Vec<(String, u64)>,
        weight: Rational,
    ) {
        self.edges.push((id.into(), endpoints, weight));
    }

    pub fn build(self) -> Result<Instance> {
        let mut vertices: Vec<Vertex> = self
            .vertices
            .into_iter()
            .map(|(id, capacity)| Vertex { id, capacity })
            .collect();
        vertices.sort_by(|a, b| a.id.cmp(&b.id));
        for w in vertices.windows(2) {
            if w[0].id == w[1].id {
                return Err(Error::DuplicateId(w[0].id.clone()));
            }
        }
        if let Some(v) = vertices.iter().find(|v| v.capacity == 0) {
            return Err(Error::InvalidInstance(format!(
                "vertex `{}` has zero capacity",
                v.id
            )));
        }
        let index: HashMap<&str, usize> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.id.as_str(), i))
            .collect();

        let mut edges = Vec::with_capacity(self.edges.len());
        for (id, ends, weight) in self.edges {
            if ends.is_empty() {
                return Err(Error::InvalidInstance(format!(
                    "edge `{id}` has no endpoints"
                )));
            }
            if weight.is_negative() {
                return Err(Error::InvalidInstance(format!(
                    "edge `{id}` has negative weight {weight}"
                )));
            }
            let mut endpoints = Vec::with_capacity(ends.len());
            for (v, demand) in ends {
                let vertex = *index
                    .get(v.as_str())
                    .ok_or_else(|| Error::UnknownVertex(v.clone()))?;
                if demand == 0 {
                    return Err(Error::InvalidInstance(format!(
                        "edge `{id}` has zero demand at `{v}`"
                    )));
                }
                let capacity = vertices[vertex].capacity;
                if demand > capacity {
                    return Err(Error::ClippedEdge {
                        edge: id,
                        vertex: v,
                        demand,
                        capacity,
                    });
                }
                endpoints.push(Endpoint { vertex, demand });
            }
            endpoints.sort_by_key(|p| p.vertex);
            if endpoints.windows(2).any(|w| w[0].vertex == w[1].vertex) {
                return Err(Error::InvalidInstance(format!(
                    "edge `{id}` repeats an endpoint"
                )));
            }
            edges.push(Edge {
                id,
                endpoints,
                weight,
            });
        }
        edges.sort_by(|a, b| a.id.cmp(&b.id));
        for w in edges.windows(2) {
            if w[0].id == w[1].id {
                return Err(Error::DuplicateId(w[0].id.clone()));
            }
        }

        let mut incidence = vec![Vec::new(); vertices.len()];
        for (e, edge) in edges.iter().enumerate() {
            for p in &edge.endpoints {
                incidence[p.vertex].push(e);
            }
        }
        let k = edges.iter().map(|e| e.endpoints.len()).max().unwrap_or(1);
        Ok(Instance {
            vertices,
            edges,
            incidence,
            k,
        })
    }
}

impl Instance {
    pub fn builder() -> InstanceBuilder {
        InstanceBuilder::new()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex(&self, v: usize) -> &Vertex {
        &self.vertices[v]
    }

    pub fn edge(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Largest edge size; 1 for an instance without edges.
    pub fn k(&self) -> usize {
        self.k
    }

    /// Edges incident to `v`, ascending.
    pub fn incident(&self, v: usize) -> &[usize] {
        &self.incidence[v]
    }

    pub fn capacity(&self, v: usize) -> u64 {
        self.vertices[v].capacity
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        self.edges.binary_search_by(|e| e.id.as_str().cmp(id)).ok()
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertices
            .binary_search_by(|v| v.id.as_str().cmp(id))
            .ok()
    }

    pub fn weights(&self) -> Vec<Rational> {
        self.edges.iter().map(|e| e.weight.clone()).collect()
    }

    /// True when every edge has one demand value at all of its endpoints.
    pub fn is_uniform_demand(&self) -> bool {
        self.edges.iter().all(Edge::is_uniform_demand)
    }

    fn check_edge(&self, e: usize) -> Result<()> {
        if e < self.edges.len() {
            Ok(())
        } else {
            Err(Error::UnknownEdge(format!("#{e}")))
        }
    }
}

/// A point of the unit box over the edges, stored densely by edge index.
#[derive(Debug, Clone, PartialEq)]
pub struct FractionalSolution {
    values: Vec<Rational>,
}

impl FractionalSolution {
    pub fn zeros(num_edges: usize) -> Self {
        Self {
            values: vec![Rational::zero(); num_edges],
        }
    }

    pub fn new(instance: &Instance, values: Vec<Rational>) -> Result<Self> {
        if values.len() != instance.num_edges() {
            return Err(Error::InvalidArgument(format!(
                "fractional solution has {} entries for {} edges",
                values.len(),
                instance.num_edges()
            )));
        }
        if let Some(e) = values.iter().position(|v| !rational::in_unit_interval(v)) {
            return Err(Error::InvalidArgument(format!(
                "x[{}] = {} lies outside [0, 1]",
                instance.edge(e).id,
                values[e]
            )));
        }
        Ok(Self { values })
    }

    /// Builds from `(edge id, value)` pairs; unlisted edges read as zero.
    pub fn from_ids<'a>(
        instance: &Instance,
        pairs: impl IntoIterator<Item = (&'a str, Rational)>,
    ) -> Result<Self> {
        let mut values = vec![Rational::zero(); instance.num_edges()];
        for (id, value) in pairs {
            let e = instance
                .edge_index(id)
                .ok_or_else(|| Error::UnknownEdge(id.to_string()))?;
            values[e] = value;
        }
        Self::new(instance, values)
    }

    pub fn get(&self, e: usize) -> &Rational {
        &self.values[e]
    }

    pub fn set(&mut self, e: usize, value: Rational) {
        self.values[e] = value;
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Edges with a strictly positive value.
    pub fn support(&self) -> Vec<usize> {
        (0..self.values.len())
            .filter(|&e| self.values[e].is_positive())
            .collect()
    }

    /// Edges with a value strictly between 0 and 1.
    pub fn fractional_support(&self) -> Vec<usize> {
        (0..self.values.len())
            .filter(|&e| !self.values[e].is_integer())
            .collect()
    }

    pub fn is_half_integral(&self) -> bool {
        self.values
            .iter()
            .all(|v| (v * rational::int(2)).is_integer())
    }

    pub fn dot(&self, costs: &[Rational]) -> Rational {
        self.values
            .iter()
            .zip(costs)
            .map(|(x, c)| x * c)
            .fold(Rational::zero(), |acc, t| acc + t)
    }

    pub fn scaled(&self, factor: &Rational) -> Vec<Rational> {
        self.values.iter().map(|v| v * factor).collect()
    }
}

/// A candidate packing: a set of edge indices.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntegralSolution {
    edges: BTreeSet<usize>,
}

impl IntegralSolution {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_ids<S: AsRef<str>>(instance: &Instance, ids: &[S]) -> Result<Self> {
        ids.iter()
            .map(|id| {
                instance
                    .edge_index(id.as_ref())
                    .ok_or_else(|| Error::UnknownEdge(id.as_ref().to_string()))
            })
            .collect()
    }

    pub fn contains(&self, e: usize) -> bool {
        self.edges.contains(&e)
    }

    pub fn insert(&mut self, e: usize) -> bool {
        self.edges.insert(e)
    }

    pub fn remove(&mut self, e: usize) -> bool {
        self.edges.remove(&e)
    }

    pub fn with(&self, e: usize) -> Self {
        let mut next = self.clone();
        next.insert(e);
        next
    }

    pub fn without(&self, e: usize) -> Self {
        let mut next = self.clone();
        next.remove(e);
        next
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.edges.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn ids(&self, instance: &Instance) -> Vec<String> {
        self.iter().map(|e| instance.edge(e).id.clone()).collect()
    }
}

impl FromIterator<usize> for IntegralSolution {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Self {
            edges: iter.into_iter().collect(),
        }
    }
}

/// Per-vertex load of an integral solution.
pub fn loads(instance: &Instance, solution: &IntegralSolution) -> Result<Vec<u64>> {
    let mut load = vec![0u64; instance.num_vertices()];
    for e in solution.iter() {
        instance.check_edge(e)?;
        for p in &instance.edge(e).endpoints {
            load[p.vertex] += p.demand;
        }
    }
    Ok(load)
}

pub fn is_feasible(instance: &Instance, solution: &IntegralSolution) -> Result<bool> {
    let load = loads(instance, solution)?;
    Ok(load
        .iter()
        .enumerate()
        .all(|(v, &l)| l <= instance.capacity(v)))
}

pub fn solution_cost(instance: &Instance, solution: &IntegralSolution) -> Result<Rational> {
    solution.iter().try_fold(Rational::zero(), |acc, e| {
        instance.check_edge(e)?;
        Ok(acc + &instance.edge(e).weight)
    })
}

/// Cost of a solution under an arbitrary cost vector indexed by edge.
pub fn cost_under(costs: &[Rational], solution: &IntegralSolution) -> Rational {
    solution
        .iter()
        .fold(Rational::zero(), |acc, e| acc + &costs[e])
}

/// True when `solution ∪ {edge}` stays within capacity at every endpoint of `edge`.
pub fn can_accommodate(instance: &Instance, solution: &IntegralSolution, edge: usize) -> bool {
    instance.edge(edge).endpoints.iter().all(|p| {
        let load: u64 = instance
            .incident(p.vertex)
            .iter()
            .filter(|&&f| solution.contains(f))
            .map(|&f| instance.edge(f).demand_at(p.vertex).unwrap_or(0))
            .sum();
        load + p.demand <= instance.capacity(p.vertex)
    })
}

/// Per-vertex load `Σ d^S_v x_S` of a fractional point.
pub fn fractional_loads(instance: &Instance, x: &FractionalSolution) -> Vec<Rational> {
    let mut load = vec![Rational::zero(); instance.num_vertices()];
    for (e, edge) in instance.edges().iter().enumerate() {
        let value = x.values.get(e).cloned().unwrap_or_else(Rational::zero);
        if value.is_zero() {
            continue;
        }
        for p in &edge.endpoints {
            load[p.vertex] += &value * rational::int(p.demand as i64);
        }
    }
    load
}

pub fn fractional_feasible(instance: &Instance, x: &FractionalSolution) -> bool {
    if !x.values.iter().all(rational::in_unit_interval) {
        return false;
    }
    fractional_loads(instance, x)
        .iter()
        .enumerate()
        .all(|(v, l)| *l <= rational::int(instance.capacity(v) as i64))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    pub lambda: Rational,
    pub solution: IntegralSolution,
}

/// A convex combination `Σ λ_i χ^i` of integral solutions.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexDecomposition {
    terms: Vec<Term>,
}

impl ConvexDecomposition {
    /// `{(1, ∅)}`.
    pub fn trivial() -> Self {
        Self {
            terms: vec![Term {
                lambda: rational::one(),
                solution: IntegralSolution::empty(),
            }],
        }
    }

    /// Wraps terms without checking them; see [`ConvexDecomposition::validate`].
    pub fn from_terms(terms: Vec<Term>) -> Self {
        Self { terms }
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_mass(&self) -> Rational {
        self.terms
            .iter()
            .fold(Rational::zero(), |acc, t| acc + &t.lambda)
    }

    pub fn value(&self, e: usize) -> Rational {
        self.terms
            .iter()
            .filter(|t| t.solution.contains(e))
            .fold(Rational::zero(), |acc, t| acc + &t.lambda)
    }

    pub fn values(&self, num_edges: usize) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); num_edges];
        for t in &self.terms {
            for e in t.solution.iter() {
                if e < num_edges {
                    out[e] += &t.lambda;
                }
            }
        }
        out
    }

    /// Checks positive multipliers summing to one and feasible solutions.
    pub fn validate(&self, instance: &Instance) -> Result<()> {
        if self.terms.is_empty() {
            return Err(Error::InvalidDecomposition("no terms".into()));
        }
        for (i, t) in self.terms.iter().enumerate() {
            if !t.lambda.is_positive() {
                return Err(Error::InvalidDecomposition(format!(
                    "term {i} has non-positive multiplier {}",
                    t.lambda
                )));
            }
            if !is_feasible(instance, &t.solution)? {
                return Err(Error::InvalidDecomposition(format!(
                    "term {i} is infeasible"
                )));
            }
        }
        let mass = self.total_mass();
        if mass != rational::one() {
            return Err(Error::InvalidDecomposition(format!(
                "multipliers sum to {mass}"
            )));
        }
        Ok(())
    }

    /// Index and cost of the heaviest solution under `costs`, ties to the lowest index.
    pub fn best_under(&self, costs: &[Rational]) -> Option<(usize, Rational)> {
        let mut best: Option<(usize, Rational)> = None;
        for (i, t) in self.terms.iter().enumerate() {
            let c = cost_under(costs, &t.solution);
            if best.as_ref().is_none_or(|(_, b)| c > *b) {
                best = Some((i, c));
            }
        }
        best
    }

    /// Heaviest solution under the instance weights.
    pub fn best(&self, instance: &Instance) -> (IntegralSolution, Rational) {
        match self.best_under(&instance.weights()) {
            Some((i, c)) => (self.terms[i].solution.clone(), c),
            None => (IntegralSolution::empty(), Rational::zero()),
        }
    }
}

/// Outcome of checking a decomposition against `α·x` edge by edge.
#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub total_mass: Rational,
    pub nonpositive_terms: Vec<usize>,
    pub infeasible_terms: Vec<usize>,
    /// `(edge, expected, actual)` for every edge whose value differs.
    pub mismatches: Vec<(usize, Rational, Rational)>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.total_mass == rational::one()
            && self.nonpositive_terms.is_empty()
            && self.infeasible_terms.is_empty()
            && self.mismatches.is_empty()
    }
}

/// Recomputes every value identity `value(e) = α·x_e` and every feasibility check.
pub fn verify_decomposition(
    instance: &Instance,
    decomposition: &ConvexDecomposition,
    alpha: &Rational,
    x: &FractionalSolution,
) -> Result<VerifyReport> {
    let mut nonpositive_terms = Vec::new();
    let mut infeasible_terms = Vec::new();
    for (i, t) in decomposition.terms().iter().enumerate() {
        if !t.lambda.is_positive() {
            nonpositive_terms.push(i);
        }
        if !is_feasible(instance, &t.solution)? {
            infeasible_terms.push(i);
        }
    }
    let values = decomposition.values(instance.num_edges());
    let mismatches = values
        .into_iter()
        .enumerate()
        .filter_map(|(e, actual)| {
            let expected = alpha * x.get(e);
            (expected != actual).then_some((e, expected, actual))
        })
        .collect();
    Ok(VerifyReport {
        total_mass: decomposition.total_mass(),
        nonpositive_terms,
        infeasible_terms,
        mismatches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
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

    fn star() -> Instance {
        Instance::builder()
            .vertex("c", 5)
            .vertex("l1", 3)
            .vertex("l2", 3)
            .vertex("l3", 3)
            .edge("e1", &[("c", 3), ("l1", 3)], int(2))
            .edge("e2", &[("c", 3), ("l2", 3)], int(3))
            .edge("e3", &[("c", 3), ("l3", 3)], int(4))
            .build()
            .unwrap()
    }

    fn sol(instance: &Instance, ids: &[&str]) -> IntegralSolution {
        IntegralSolution::from_ids(instance, ids).unwrap()
    }

    #[test]
    fn empty_solution_is_feasible() {
        assert!(is_feasible(&t2(), &IntegralSolution::empty()).unwrap());
        assert!(is_feasible(&star(), &IntegralSolution::empty()).unwrap());
    }

    #[test]
    fn triangle_pair_overloads_shared_vertex() {
        let t = t2();
        assert!(!is_feasible(&t, &sol(&t, &["a", "b"])).unwrap());
        assert_eq!(loads(&t, &sol(&t, &["a", "b"])).unwrap(), vec![2, 4, 2]);
        assert!(is_feasible(&t, &sol(&t, &["a"])).unwrap());
    }

    #[test]
    fn unknown_edge_is_reported() {
        let t = t2();
        let bogus: IntegralSolution = [7usize].into_iter().collect();
        assert!(matches!(
            is_feasible(&t, &bogus),
            Err(Error::UnknownEdge(_))
        ));
        assert!(matches!(
            solution_cost(&t, &bogus),
            Err(Error::UnknownEdge(_))
        ));
        assert!(matches!(
            IntegralSolution::from_ids(&t, &["zz"]),
            Err(Error::UnknownEdge(_))
        ));
    }

    #[test]
    fn costs_are_weight_sums() {
        let t = t2();
        assert_eq!(
            solution_cost(&t, &IntegralSolution::empty()).unwrap(),
            int(0)
        );
        assert_eq!(solution_cost(&t, &sol(&t, &["a", "c"])).unwrap(), int(2));
        let s = star();
        assert_eq!(solution_cost(&s, &sol(&s, &["e3"])).unwrap(), int(4));
    }

    #[test]
    fn fractional_feasibility_uses_exact_loads() {
        let t = t2();
        assert!(fractional_feasible(&t, &FractionalSolution::zeros(3)));
        let tight = FractionalSolution::new(&t, vec![ratio(3, 4); 3]).unwrap();
        assert!(fractional_feasible(&t, &tight));
        assert_eq!(fractional_loads(&t, &tight), vec![int(3); 3]);
        let over = FractionalSolution::from_ids(&t, [("a", int(1)), ("b", int(1))]).unwrap();
        assert!(!fractional_feasible(&t, &over));
    }

    #[test]
    fn builder_rejects_clipped_and_duplicate_edges() {
        let clipped = Instance::builder()
            .vertex("u", 2)
            .vertex("v", 5)
            .edge("e", &[("u", 3), ("v", 1)], int(1))
            .build();
        assert!(matches!(clipped, Err(Error::ClippedEdge { .. })));
        let dup = Instance::builder()
            .vertex("u", 2)
            .edge("e", &[("u", 1)], int(1))
            .edge("e", &[("u", 1)], int(1))
            .build();
        assert!(matches!(dup, Err(Error::DuplicateId(_))));
        let repeated = Instance::builder()
            .vertex("u", 2)
            .edge("e", &[("u", 1), ("u", 1)], int(1))
            .build();
        assert!(matches!(repeated, Err(Error::InvalidInstance(_))));
        let missing = Instance::builder()
            .vertex("u", 2)
            .edge("e", &[("w", 1)], int(1))
            .build();
        assert!(matches!(missing, Err(Error::UnknownVertex(_))));
    }

    #[test]
    fn parallel_edges_are_accepted_by_the_model() {
        let inst = Instance::builder()
            .vertex("u", 2)
            .vertex("v", 2)
            .edge("e", &[("u", 1), ("v", 1)], int(1))
            .edge("f", &[("u", 1), ("v", 1)], int(0))
            .build()
            .unwrap();
        assert_eq!(inst.num_edges(), 2);
        assert_eq!(inst.k(), 2);
    }

    #[test]
    fn edges_are_indexed_in_id_order() {
        let inst = Instance::builder()
            .vertex("v", 9)
            .edge("z", &[("v", 1)], int(1))
            .edge("a", &[("v", 2)], int(1))
            .build()
            .unwrap();
        assert_eq!(inst.edge(0).id, "a");
        assert_eq!(inst.edge_index("z"), Some(1));
        assert_eq!(inst.incident(0), &[0, 1]);
        assert!(inst.is_uniform_demand());
    }

    #[test]
    fn decomposition_values_and_validation() {
        let t = t2();
        let d = ConvexDecomposition::from_terms(vec![
            Term {
                lambda: ratio(1, 4),
                solution: sol(&t, &["b"]),
            },
            Term {
                lambda: ratio(3, 4),
                solution: IntegralSolution::empty(),
            },
        ]);
        d.validate(&t).unwrap();
        assert_eq!(d.values(3), vec![int(0), ratio(1, 4), int(0)]);
        let bad = ConvexDecomposition::from_terms(vec![Term {
            lambda: int(1),
            solution: sol(&t, &["a", "b"]),
        }]);
        assert!(bad.validate(&t).is_err());
        let short = ConvexDecomposition::from_terms(vec![Term {
            lambda: ratio(1, 2),
            solution: IntegralSolution::empty(),
        }]);
        assert!(short.validate(&t).is_err());
    }

    #[test]
    fn verify_reports_mismatches() {
        let t = t2();
        let x = FractionalSolution::new(&t, vec![ratio(3, 4); 3]).unwrap();
        let report =
            verify_decomposition(&t, &ConvexDecomposition::trivial(), &ratio(1, 4), &x).unwrap();
        assert!(!report.ok());
        assert_eq!(report.mismatches.len(), 3);
        let report =
            verify_decomposition(&t, &ConvexDecomposition::trivial(), &int(0), &x).unwrap();
        assert!(report.ok());
    }
}
