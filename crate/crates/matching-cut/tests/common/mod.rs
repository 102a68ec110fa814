//! Helpers shared by the integration test targets: edge-mask graph
//! enumeration with cheap bitboard prefilters, and rejection-sampled random
//! graphs.
#![allow(dead_code)]

use matching_cut::{gnp, Graph};
use rand::Rng;

pub fn pair_count(n: usize) -> usize {
    n * (n - 1) / 2
}

/// Graph from an edge bitmask over the lexicographic pair order (0,1),
/// (0,2), ..., (n-2,n-1).
pub fn mask_graph(n: usize, mask: u64) -> Graph {
    let mut edges = Vec::new();
    let mut bit = 0;
    for u in 0..n {
        for v in u + 1..n {
            if mask >> bit & 1 == 1 {
                edges.push((u, v));
            }
            bit += 1;
        }
    }
    Graph::new(n, &edges).unwrap()
}

/// Adjacency bitboards for the same mask convention, for filtering without
/// building a Graph.
pub fn mask_adjacency(n: usize, mask: u64) -> Vec<u64> {
    let mut adj = vec![0u64; n];
    let mut bit = 0;
    for u in 0..n {
        for v in u + 1..n {
            if mask >> bit & 1 == 1 {
                adj[u] |= 1 << v;
                adj[v] |= 1 << u;
            }
            bit += 1;
        }
    }
    adj
}

pub fn adjacency_connected(adj: &[u64]) -> bool {
    let n = adj.len();
    if n == 0 {
        return true;
    }
    let mut seen = 1u64;
    let mut frontier = 1u64;
    while frontier != 0 {
        let mut next = 0;
        let mut f = frontier;
        while f != 0 {
            let v = f.trailing_zeros() as usize;
            f &= f - 1;
            next |= adj[v];
        }
        frontier = next & !seen;
        seen |= next;
    }
    seen.count_ones() as usize == n
}

pub fn adjacency_diam_le2(adj: &[u64]) -> bool {
    let n = adj.len();
    for u in 0..n {
        for v in u + 1..n {
            if adj[u] >> v & 1 == 0 && adj[u] & adj[v] == 0 {
                return false;
            }
        }
    }
    true
}

/// G(n,p) conditioned on connectivity by rejection.
pub fn random_connected(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    loop {
        let g = gnp(n, p, rng).unwrap();
        if g.is_connected() {
            return g;
        }
    }
}
