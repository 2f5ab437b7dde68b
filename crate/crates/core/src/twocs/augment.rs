use std::collections::HashSet;

use super::structure::{ends, ensure_rank_two, SupportNode};
use crate::error::{Error, Result};
use crate::model::Instance;
use crate::rational::{self, Rational};

/// `v_0, e_1, v_1, …, e_k, v_k` in the support graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Path {
    pub nodes: Vec<SupportNode>,
    pub edges: Vec<usize>,
}

impl Path {
    pub fn start(&self) -> SupportNode {
        self.nodes[0]
    }

    pub fn end(&self) -> SupportNode {
        *self.nodes.last().expect("nonempty path")
    }

    /// The vertex shared by `edges[i]` and `edges[i + 1]`.
    pub fn interior(&self, i: usize) -> usize {
        match self.nodes[i + 1] {
            SupportNode::Vertex(v) => v,
            SupportNode::Stub(_) => unreachable!("validated path"),
        }
    }
}

/// One step of the forest rounding.
#[derive(Debug, Clone, PartialEq)]
pub struct AugmentationStep {
    pub path: Path,
    /// Direction on the path edges, already sign-corrected towards higher cost.
    pub z: Vec<Rational>,
    pub epsilon: Rational,
    /// Path edges that reached 0 or 1.
    pub settled: Vec<usize>,
}

pub(crate) fn check_path(instance: &Instance, path: &Path) -> Result<()> {
    ensure_rank_two(instance)?;
    if path.edges.is_empty() || path.nodes.len() != path.edges.len() + 1 {
        return Err(Error::MalformedPath(format!(
            "{} nodes for {} edges",
            path.nodes.len(),
            path.edges.len()
        )));
    }
    let mut seen_edges = HashSet::new();
    let mut seen_nodes = HashSet::new();
    for &node in &path.nodes {
        if !seen_nodes.insert(node) {
            return Err(Error::MalformedPath(format!("node {node:?} repeats")));
        }
    }
    for (i, &e) in path.edges.iter().enumerate() {
        if e >= instance.num_edges() {
            return Err(Error::UnknownEdge(format!("#{e}")));
        }
        if !seen_edges.insert(e) {
            return Err(Error::MalformedPath(format!(
                "edge `{}` repeats",
                instance.edge(e).id
            )));
        }
        let (a, b) = ends(instance, e);
        let (p, q) = (path.nodes[i], path.nodes[i + 1]);
        if !((a == p && b == q) || (a == q && b == p)) {
            return Err(Error::MalformedPath(format!(
                "edge `{}` does not join {p:?} and {q:?}",
                instance.edge(e).id
            )));
        }
    }
    Ok(())
}

/// Direction along `path` that leaves every interior load unchanged:
/// `z_1 = 1`, `z_{i+1} = −(d^{e_i}_{v_i} / d^{e_{i+1}}_{v_i}) z_i`.
pub fn augmentation_vector(instance: &Instance, path: &Path) -> Result<Vec<Rational>> {
    check_path(instance, path)?;
    Ok(direction(instance, path))
}

pub(crate) fn direction(instance: &Instance, path: &Path) -> Vec<Rational> {
    let mut z = Vec::with_capacity(path.edges.len());
    z.push(rational::one());
    for i in 0..path.edges.len() - 1 {
        let v = path.interior(i);
        let d_in = instance
            .edge(path.edges[i])
            .demand_at(v)
            .expect("path edge");
        let d_out = instance
            .edge(path.edges[i + 1])
            .demand_at(v)
            .expect("path edge");
        let next = -(&z[i] * rational::ratio(d_in as i64, d_out as i64));
        z.push(next);
    }
    z
}
