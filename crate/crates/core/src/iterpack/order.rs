use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::model::Instance;

/// An edge order in which demands never decrease at any shared vertex.
///
/// Edges are removed in this order and reinserted in reverse. Among the
/// orders that exist, the one returned always takes the available edge with
/// the smallest (minimum endpoint demand, id), so uniform-demand instances
/// come out sorted by demand with ties in id order.
pub fn monotone_removal_order(instance: &Instance) -> Result<Vec<usize>> {
    let m = instance.num_edges();
    let mut successors: Vec<Vec<usize>> = vec![Vec::new(); m];
    let mut indegree = vec![0usize; m];
    for v in 0..instance.num_vertices() {
        let incident = instance.incident(v);
        for (i, &a) in incident.iter().enumerate() {
            for &b in &incident[i + 1..] {
                let da = instance.edge(a).demand_at(v).expect("incident");
                let db = instance.edge(b).demand_at(v).expect("incident");
                let (first, second) = match da.cmp(&db) {
                    std::cmp::Ordering::Less => (a, b),
                    std::cmp::Ordering::Greater => (b, a),
                    std::cmp::Ordering::Equal => continue,
                };
                successors[first].push(second);
                indegree[second] += 1;
            }
        }
    }

    let key = |e: usize| {
        let d = instance
            .edge(e)
            .endpoints
            .iter()
            .map(|p| p.demand)
            .min()
            .unwrap_or(0);
        Reverse((d, e))
    };
    let mut ready: BinaryHeap<_> = (0..m).filter(|&e| indegree[e] == 0).map(key).collect();
    let mut order = Vec::with_capacity(m);
    while let Some(Reverse((_, e))) = ready.pop() {
        order.push(e);
        for &s in &successors[e] {
            indegree[s] -= 1;
            if indegree[s] == 0 {
                ready.push(key(s));
            }
        }
    }
    if order.len() < m {
        let stuck: Vec<&str> = (0..m)
            .filter(|&e| indegree[e] > 0)
            .map(|e| instance.edge(e).id.as_str())
            .collect();
        return Err(Error::NotMonotoneOrderable(format!(
            "demand precedences among {} form a cycle",
            stuck.join(", ")
        )));
    }
    Ok(order)
}

/// Checks the order property directly on every pair of edges sharing a vertex.
pub fn is_monotone(instance: &Instance, order: &[usize]) -> bool {
    let mut position = vec![usize::MAX; instance.num_edges()];
    for (p, &e) in order.iter().enumerate() {
        position[e] = p;
    }
    (0..instance.num_vertices()).all(|v| {
        let inc = instance.incident(v);
        inc.iter().all(|&a| {
            inc.iter().all(|&b| {
                position[a] >= position[b]
                    || instance.edge(a).demand_at(v) <= instance.edge(b).demand_at(v)
            })
        })
    })
}
