use std::collections::VecDeque;

use num::Zero;

use crate::error::{Error, Result};
use crate::model::{FractionalSolution, Instance};

/// A node of the support graph. An edge with a single endpoint gets a
/// private stub node as its other end so every edge has two ends.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SupportNode {
    Vertex(usize),
    Stub(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComponentKind {
    Tree,
    Unicyclic,
    /// Two or more independent cycles. Legal for arbitrary points, impossible at extreme points.
    MultiCycle,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportComponent {
    pub nodes: Vec<SupportNode>,
    /// The real vertices among `nodes`.
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
    pub kind: ComponentKind,
    /// Edges of the unique cycle in traversal order, when unicyclic.
    pub cycle: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SupportStructure {
    /// Ordered by smallest edge index.
    pub components: Vec<SupportComponent>,
}

impl SupportStructure {
    pub fn has_multiple_cycles(&self) -> bool {
        self.components
            .iter()
            .any(|c| c.kind == ComponentKind::MultiCycle)
    }

    pub fn is_forest(&self) -> bool {
        self.components
            .iter()
            .all(|c| c.kind == ComponentKind::Tree)
    }

    pub fn cycles(&self) -> impl Iterator<Item = &[usize]> {
        self.components.iter().filter_map(|c| c.cycle.as_deref())
    }
}

pub fn ensure_rank_two(instance: &Instance) -> Result<()> {
    match instance.edges().iter().find(|e| e.endpoints.len() > 2) {
        Some(e) => Err(Error::NotRankTwo(e.id.clone())),
        None => Ok(()),
    }
}

/// The two ends of an edge in the support graph.
pub(crate) fn ends(instance: &Instance, edge: usize) -> (SupportNode, SupportNode) {
    let eps = &instance.edge(edge).endpoints;
    match eps.as_slice() {
        [a] => (SupportNode::Vertex(a.vertex), SupportNode::Stub(edge)),
        [a, b] => (SupportNode::Vertex(a.vertex), SupportNode::Vertex(b.vertex)),
        _ => unreachable!("rank checked"),
    }
}

/// Dense indexing of support nodes: vertices first, then one stub per edge.
pub(crate) fn node_index(instance: &Instance, node: SupportNode) -> usize {
    match node {
        SupportNode::Vertex(v) => v,
        SupportNode::Stub(e) => instance.num_vertices() + e,
    }
}

pub(crate) fn node_at(instance: &Instance, index: usize) -> SupportNode {
    if index < instance.num_vertices() {
        SupportNode::Vertex(index)
    } else {
        SupportNode::Stub(index - instance.num_vertices())
    }
}

/// Adjacency over the given edges: `adj[node] = [(edge, other node)]`, sorted.
pub(crate) fn adjacency(instance: &Instance, edges: &[usize]) -> Vec<Vec<(usize, usize)>> {
    let mut adj = vec![Vec::new(); instance.num_vertices() + instance.num_edges()];
    for &e in edges {
        let (a, b) = ends(instance, e);
        let (a, b) = (node_index(instance, a), node_index(instance, b));
        adj[a].push((e, b));
        adj[b].push((e, a));
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    adj
}

/// Components of the graph formed by `edges` (isolated nodes are left out).
pub(crate) fn analyze_edges(instance: &Instance, edges: &[usize]) -> SupportStructure {
    let mut edges = edges.to_vec();
    edges.sort_unstable();
    let adj = adjacency(instance, &edges);
    let mut seen = vec![false; adj.len()];
    let mut components = Vec::new();
    for &start_edge in &edges {
        let (a, _) = ends(instance, start_edge);
        let root = node_index(instance, a);
        if seen[root] {
            continue;
        }
        let mut nodes = Vec::new();
        let mut comp_edges = Vec::new();
        let mut queue = VecDeque::from([root]);
        seen[root] = true;
        while let Some(u) = queue.pop_front() {
            nodes.push(u);
            for &(e, w) in &adj[u] {
                comp_edges.push(e);
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        nodes.sort_unstable();
        comp_edges.sort_unstable();
        comp_edges.dedup();
        let kind = match comp_edges.len() + 1 {
            n if n == nodes.len() => ComponentKind::Tree,
            n if n == nodes.len() + 1 => ComponentKind::Unicyclic,
            _ => ComponentKind::MultiCycle,
        };
        let cycle = (kind == ComponentKind::Unicyclic).then(|| find_cycle(&adj, &nodes));
        components.push(SupportComponent {
            vertices: nodes
                .iter()
                .filter(|&&u| u < instance.num_vertices())
                .copied()
                .collect(),
            nodes: nodes.iter().map(|&u| node_at(instance, u)).collect(),
            edges: comp_edges,
            kind,
            cycle,
        });
    }
    SupportStructure { components }
}

/// Peels leaves off a unicyclic component and walks what remains.
fn find_cycle(adj: &[Vec<(usize, usize)>], nodes: &[usize]) -> Vec<usize> {
    let mut degree: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut removed = vec![false; adj.len()];
    let mut leaves: Vec<usize> = nodes.iter().copied().filter(|&u| degree[u] == 1).collect();
    while let Some(u) = leaves.pop() {
        removed[u] = true;
        for &(_, w) in &adj[u] {
            if !removed[w] {
                degree[w] -= 1;
                if degree[w] == 1 {
                    leaves.push(w);
                }
            }
        }
    }
    let start = *nodes
        .iter()
        .find(|&&u| !removed[u])
        .expect("a cycle survives");
    let mut cycle = Vec::new();
    let mut prev_edge = usize::MAX;
    let mut u = start;
    loop {
        let &(e, w) = adj[u]
            .iter()
            .find(|&&(e, w)| !removed[w] && e != prev_edge)
            .expect("cycle continues");
        cycle.push(e);
        prev_edge = e;
        u = w;
        if u == start {
            break;
        }
    }
    cycle
}

/// Components of the fractional support `{e : 0 < x_e < 1}`.
pub fn analyze_support(instance: &Instance, x: &FractionalSolution) -> Result<SupportStructure> {
    ensure_rank_two(instance)?;
    Ok(analyze_edges(instance, &x.fractional_support()))
}

/// Components of the whole positive support, integral edges included.
pub fn analyze_positive_support(
    instance: &Instance,
    x: &FractionalSolution,
) -> Result<SupportStructure> {
    ensure_rank_two(instance)?;
    let support: Vec<usize> = (0..x.len()).filter(|&e| !x.get(e).is_zero()).collect();
    Ok(analyze_edges(instance, &support))
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

    #[test]
    fn triangle_is_one_cycle() {
        let t = t2();
        let x = FractionalSolution::new(&t, vec![ratio(3, 4); 3]).unwrap();
        let s = analyze_support(&t, &x).unwrap();
        assert_eq!(s.components.len(), 1);
        let c = &s.components[0];
        assert_eq!(c.kind, ComponentKind::Unicyclic);
        let mut cycle = c.cycle.clone().unwrap();
        cycle.sort();
        assert_eq!(cycle, vec![0, 1, 2]);
        assert_eq!(c.vertices, vec![0, 1, 2]);
    }

    #[test]
    fn integral_and_path_supports() {
        let t = t2();
        let x = FractionalSolution::new(&t, vec![int(1), int(0), int(0)]).unwrap();
        assert!(analyze_support(&t, &x).unwrap().components.is_empty());

        let x = FractionalSolution::new(&t, vec![ratio(1, 2), ratio(1, 2), int(0)]).unwrap();
        let s = analyze_support(&t, &x).unwrap();
        assert_eq!(s.components.len(), 1);
        assert_eq!(s.components[0].kind, ComponentKind::Tree);
        assert!(s.is_forest());
    }

    #[test]
    fn single_endpoint_edges_hang_off_stubs() {
        let inst = Instance::builder()
            .vertex("u", 4)
            .vertex("v", 4)
            .edge("a", &[("u", 1)], int(1))
            .edge("b", &[("u", 1)], int(1))
            .edge("c", &[("u", 1), ("v", 1)], int(1))
            .build()
            .unwrap();
        let x = FractionalSolution::new(&inst, vec![ratio(1, 2); 3]).unwrap();
        let s = analyze_support(&inst, &x).unwrap();
        assert_eq!(s.components.len(), 1);
        let c = &s.components[0];
        assert_eq!(c.kind, ComponentKind::Tree);
        assert_eq!(c.nodes.len(), 4);
        assert_eq!(c.vertices, vec![0, 1]);
    }

    #[test]
    fn multiple_cycles_are_flagged() {
        let inst = Instance::builder()
            .vertex("1", 9)
            .vertex("2", 9)
            .vertex("3", 9)
            .vertex("4", 9)
            .edge("a", &[("1", 1), ("2", 1)], int(1))
            .edge("b", &[("2", 1), ("3", 1)], int(1))
            .edge("c", &[("1", 1), ("3", 1)], int(1))
            .edge("d", &[("3", 1), ("4", 1)], int(1))
            .edge("e", &[("1", 1), ("4", 1)], int(1))
            .build()
            .unwrap();
        let x = FractionalSolution::new(&inst, vec![ratio(1, 2); 5]).unwrap();
        let s = analyze_support(&inst, &x).unwrap();
        assert!(s.has_multiple_cycles());
        assert_eq!(s.components[0].cycle, None);
    }

    #[test]
    fn rejects_hyperedges() {
        let inst = Instance::builder()
            .vertex("1", 1)
            .vertex("2", 1)
            .vertex("3", 1)
            .edge("a", &[("1", 1), ("2", 1), ("3", 1)], int(1))
            .build()
            .unwrap();
        let x = FractionalSolution::zeros(1);
        assert!(matches!(
            analyze_support(&inst, &x),
            Err(Error::NotRankTwo(_))
        ));
    }
}
