use std::collections::HashSet;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::{Instance, InstanceBuilder};
use crate::rational::{self, Rational};

fn padded(prefix: &str, i: usize, count: usize) -> String {
    let width = count.max(1).to_string().len();
    format!("{prefix}{i:0width$}")
}

/// Triangle `T_d`: three vertices of capacity `2d − 1`, the three pairs as edges of demand `d`.
pub fn gen_triangle(d: u64) -> Result<Instance> {
    if d == 0 {
        return Err(Error::InvalidArgument("demand must be positive".into()));
    }
    let b = 2 * d - 1;
    Instance::builder()
        .vertex("1", b)
        .vertex("2", b)
        .vertex("3", b)
        .edge("a", &[("1", d), ("2", d)], rational::one())
        .edge("b", &[("2", d), ("3", d)], rational::one())
        .edge("c", &[("1", d), ("3", d)], rational::one())
        .build()
}

fn is_prime(q: u64) -> bool {
    q >= 2
        && (2..)
            .take_while(|i| i * i <= q)
            .all(|i| !q.is_multiple_of(i))
}

/// Nonzero triples over `F_q` whose first nonzero coordinate is 1, in lexicographic order.
fn normalized_triples(q: u64) -> Vec<[u64; 3]> {
    let mut out = Vec::new();
    for a in 0..q {
        for b in 0..q {
            for c in 0..q {
                let t = [a, b, c];
                if t.iter().find(|&&x| x != 0) == Some(&1) {
                    out.push(t);
                }
            }
        }
    }
    out
}

/// Projective plane of prime order `q` with all demands `d` and capacities `2d − 1`.
///
/// Points are vertices, lines are edges of size `q + 1`. Order 1 gives the triangle.
pub fn gen_projective_plane(q: u64, d: u64) -> Result<Instance> {
    if q == 1 {
        return gen_triangle(d);
    }
    if !is_prime(q) {
        return Err(Error::UnsupportedOrder(q));
    }
    if d == 0 {
        return Err(Error::InvalidArgument("demand must be positive".into()));
    }
    let triples = normalized_triples(q);
    let n = triples.len();
    let mut builder = InstanceBuilder::new();
    for i in 0..n {
        builder.add_vertex(padded("p", i, n), 2 * d - 1);
    }
    for (j, line) in triples.iter().enumerate() {
        let ends = triples
            .iter()
            .enumerate()
            .filter(|(_, p)| (0..3).map(|k| p[k] * line[k]).sum::<u64>() % q == 0)
            .map(|(i, _)| (padded("p", i, n), d))
            .collect();
        builder.add_edge(padded("l", j, n), ends, rational::one());
    }
    builder.build()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RandomParams {
    /// Largest edge size.
    pub k: usize,
    pub vertices: usize,
    pub edges: usize,
    pub max_demand: u64,
    pub max_capacity: u64,
    pub max_weight: u64,
    /// All endpoints of an edge share one demand.
    pub uniform_demand: bool,
}

/// Seeded random instance satisfying no-clipping.
///
/// Edge sizes are uniform in `1..=k`, endpoint sets are distinct, demands
/// and integer weights uniform from 1. Each capacity is drawn between the
/// largest incident demand and `max(that, max_capacity)`. An edge whose
/// endpoint set keeps colliding with earlier ones is dropped, so very dense
/// parameters can yield fewer edges than requested.
pub fn gen_random(params: &RandomParams, seed: u64) -> Result<Instance> {
    let RandomParams {
        k,
        vertices: n,
        edges: m,
        max_demand,
        max_capacity,
        max_weight,
        uniform_demand,
    } = *params;
    if k == 0 || n == 0 || max_demand == 0 || max_capacity == 0 || max_weight == 0 {
        return Err(Error::InvalidArgument(
            "k, vertices, max demand, max capacity and max weight must be positive".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut edges: Vec<(Vec<(usize, u64)>, u64)> = Vec::new();
    for _ in 0..m {
        let mut chosen = None;
        for _attempt in 0..32 {
            let size = rng.gen_range(1..=k.min(n));
            let mut set = sample(&mut rng, n, size).into_vec();
            set.sort_unstable();
            if seen.insert(set.clone()) {
                chosen = Some(set);
                break;
            }
        }
        let Some(set) = chosen else { continue };
        let shared = rng.gen_range(1..=max_demand);
        let ends = set
            .into_iter()
            .map(|v| {
                let d = if uniform_demand {
                    shared
                } else {
                    rng.gen_range(1..=max_demand)
                };
                (v, d)
            })
            .collect();
        edges.push((ends, rng.gen_range(1..=max_weight)));
    }
    let mut floor = vec![1u64; n];
    for (ends, _) in &edges {
        for &(v, d) in ends {
            floor[v] = floor[v].max(d);
        }
    }
    let mut builder = InstanceBuilder::new();
    for (v, &lo) in floor.iter().enumerate() {
        let cap = rng.gen_range(lo..=lo.max(max_capacity));
        builder.add_vertex(padded("v", v, n), cap);
    }
    let count = edges.len();
    for (j, (ends, w)) in edges.into_iter().enumerate() {
        let ends = ends
            .into_iter()
            .map(|(v, d)| (padded("v", v, n), d))
            .collect();
        builder.add_edge(padded("e", j, count), ends, rational::int(w as i64));
    }
    builder.build()
}

/// Knapsack as a star: center `c` of capacity `capacity`, item `i` is edge
/// `e{i}` to leaf `l{i}` whose capacity equals the item's demand.
pub fn gen_star_knapsack(capacity: u64, demands: &[u64], weights: &[Rational]) -> Result<Instance> {
    if demands.len() != weights.len() {
        return Err(Error::InvalidArgument(format!(
            "{} demands but {} weights",
            demands.len(),
            weights.len()
        )));
    }
    if let Some((index, &demand)) = demands.iter().enumerate().find(|(_, &d)| d > capacity) {
        return Err(Error::ClippedItem {
            index,
            demand,
            capacity,
        });
    }
    let n = demands.len();
    let mut builder = InstanceBuilder::new();
    builder.add_vertex("c", capacity);
    for (i, (&d, w)) in demands.iter().zip(weights).enumerate() {
        let leaf = padded("l", i + 1, n);
        builder.add_vertex(leaf.clone(), d);
        builder.add_edge(
            padded("e", i + 1, n),
            vec![("c".to_string(), d), (leaf, d)],
            Rational::clone(w),
        );
    }
    builder.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn triangle_shape() {
        let t = gen_triangle(3).unwrap();
        assert_eq!(t.num_vertices(), 3);
        assert!(t.vertices().iter().all(|v| v.capacity == 5));
        assert!(t
            .edges()
            .iter()
            .all(|e| e.endpoints.iter().all(|p| p.demand == 3)));
        assert_eq!(gen_projective_plane(1, 3).unwrap(), t);
    }

    #[test]
    fn fano_plane_axioms() {
        let f = gen_projective_plane(2, 3).unwrap();
        assert_eq!(f.num_vertices(), 7);
        assert_eq!(f.num_edges(), 7);
        assert_eq!(f.k(), 3);
        for a in 0..7 {
            for b in a + 1..7 {
                let (la, lb) = (f.edge(a).vertex_set(), f.edge(b).vertex_set());
                assert_eq!(la.iter().filter(|v| lb.contains(v)).count(), 1);
            }
        }
        assert!(f.vertices().iter().all(|v| v.capacity == 5));
    }

    #[test]
    fn plane_of_order_three() {
        let p = gen_projective_plane(3, 1).unwrap();
        assert_eq!(p.num_vertices(), 13);
        assert_eq!(p.num_edges(), 13);
        assert!(p.edges().iter().all(|e| e.endpoints.len() == 4));
        for u in 0..13 {
            for v in u + 1..13 {
                let common = p
                    .incident(u)
                    .iter()
                    .filter(|e| p.incident(v).contains(e))
                    .count();
                assert_eq!(common, 1);
            }
        }
        assert_eq!(gen_projective_plane(4, 1), Err(Error::UnsupportedOrder(4)));
    }

    #[test]
    fn random_is_deterministic() {
        let params = RandomParams {
            k: 3,
            vertices: 6,
            edges: 10,
            max_demand: 4,
            max_capacity: 9,
            max_weight: 5,
            uniform_demand: true,
        };
        let a = gen_random(&params, 7).unwrap();
        assert_eq!(a, gen_random(&params, 7).unwrap());
        assert!(a.is_uniform_demand());
        assert!(a.k() <= 3);
        let empty = gen_random(
            &RandomParams {
                edges: 0,
                k: 2,
                ..params
            },
            1,
        )
        .unwrap();
        assert_eq!(empty.num_edges(), 0);
    }

    #[test]
    fn star() {
        let s = gen_star_knapsack(5, &[3, 3, 3], &[int(2), int(3), int(4)]).unwrap();
        assert_eq!(s.num_edges(), 3);
        assert_eq!(s.capacity(s.vertex_index("c").unwrap()), 5);
        assert_eq!(s.capacity(s.vertex_index("l2").unwrap()), 3);
        assert_eq!(s.edge(2).id, "e3");
        assert!(matches!(
            gen_star_knapsack(2, &[3], &[int(1)]),
            Err(Error::ClippedItem {
                index: 0,
                demand: 3,
                capacity: 2
            })
        ));
    }
}
