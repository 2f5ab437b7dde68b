//! Fixed instances shared by the benchmarks.

use packlab::oracle::{gen_projective_plane, gen_random, gen_triangle, RandomParams};
use packlab::Instance;

pub fn triangle(d: u64) -> Instance {
    gen_triangle(d).expect("positive demand")
}

pub fn fano(d: u64) -> Instance {
    gen_projective_plane(2, d).expect("prime order")
}

/// Rank-two instance with non-uniform demands.
pub fn rank_two(edges: usize, seed: u64) -> Instance {
    random(2, edges, false, seed)
}

/// `k`-uniform-demand hypergraph instance.
pub fn hypergraph(k: usize, edges: usize, seed: u64) -> Instance {
    random(k, edges, true, seed)
}

fn random(k: usize, edges: usize, uniform_demand: bool, seed: u64) -> Instance {
    let params = RandomParams {
        k,
        vertices: (edges / 2).max(k),
        edges,
        max_demand: 6,
        max_capacity: 15,
        max_weight: 10,
        uniform_demand,
    };
    gen_random(&params, seed).expect("valid parameters")
}
