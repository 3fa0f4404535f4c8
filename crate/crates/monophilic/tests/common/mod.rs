//! Shared helpers for the integration suites: seeded randomness, brute-force
//! counting, and isomorphism-class enumeration of small connected graphs.
#![allow(dead_code)]

use monophilic::{Graph, ListAssignment};
use num_bigint::BigUint;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashSet;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Counts proper list colorings by iterating the full product of the lists.
/// Exponential; suitable only for the tiny oracle instances.
pub fn brute_col(g: &Graph, lists: &ListAssignment) -> BigUint {
    let v = g.vertex_count();
    if v == 0 {
        return BigUint::from(1u32);
    }
    let edges = g.edges();
    let mut idx = vec![0usize; v];
    let mut total = BigUint::zero();
    loop {
        let proper = edges
            .iter()
            .all(|&(a, b)| lists.list(a)[idx[a]] != lists.list(b)[idx[b]]);
        if proper {
            total += 1u32;
        }
        // Odometer step over the product of list positions.
        let mut carry = v;
        for (pos, slot) in idx.iter_mut().enumerate() {
            *slot += 1;
            if *slot < lists.list(pos).len() {
                carry = pos;
                break;
            }
            *slot = 0;
        }
        if carry == v {
            return total;
        }
    }
}

/// A random connected graph: a random spanning tree plus each remaining
/// pair as an edge with probability `extra`.
pub fn random_connected_graph(rng: &mut ChaCha8Rng, v: usize, extra: f64) -> Graph {
    let mut g = Graph::new(v);
    for child in 1..v {
        let parent = rng.gen_range(0..child);
        g.add_edge(parent, child).unwrap();
    }
    for a in 0..v {
        for b in a + 1..v {
            if !g.has_edge(a, b) && rng.gen_bool(extra) {
                g.add_edge(a, b).unwrap();
            }
        }
    }
    g
}

/// Random lists with sizes in `1..=max_size`, colors drawn from
/// `1..=universe`.
pub fn random_lists(
    rng: &mut ChaCha8Rng,
    v: usize,
    max_size: usize,
    universe: u32,
) -> ListAssignment {
    let lists: Vec<Vec<u32>> = (0..v)
        .map(|_| {
            let size = rng.gen_range(1..=max_size.min(universe as usize));
            let mut l: Vec<u32> = rand::seq::index::sample(rng, universe as usize, size)
                .into_iter()
                .map(|i| i as u32 + 1)
                .collect();
            l.sort_unstable();
            l
        })
        .collect();
    ListAssignment::new(lists).unwrap()
}

/// The disjoint union of two graphs, second block shifted past the first.
pub fn disjoint_union(a: &Graph, b: &Graph) -> Graph {
    let mut g = Graph::new(a.vertex_count() + b.vertex_count());
    for (u, v) in a.edges() {
        g.add_edge(u, v).unwrap();
    }
    for (u, v) in b.edges() {
        g.add_edge(a.vertex_count() + u, a.vertex_count() + v)
            .unwrap();
    }
    g
}

/// One representative per isomorphism class of connected graphs, for each
/// vertex count `1..=max_v` (index 0 is empty). Generated by attaching a
/// new vertex to every nonempty subset of each smaller representative and
/// deduplicating by canonical code; every connected graph has a vertex
/// whose removal keeps it connected, so the recursion reaches every class.
pub fn connected_graph_classes(max_v: usize) -> Vec<Vec<Graph>> {
    // Connected graphs up to isomorphism on 1..=7 vertices.
    const KNOWN_COUNTS: [usize; 7] = [1, 1, 2, 6, 21, 112, 853];
    let mut by_size: Vec<Vec<Graph>> = vec![Vec::new(); max_v + 1];
    if max_v >= 1 {
        by_size[1].push(Graph::new(1));
    }
    for v in 2..=max_v {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for g in &by_size[v - 1].clone() {
            for mask in 1u32..(1 << (v - 1)) {
                let mut h = g.clone();
                let nv = h.add_vertex();
                for u in 0..v - 1 {
                    if mask & (1 << u) != 0 {
                        h.add_edge(nv, u).unwrap();
                    }
                }
                let code = h.canonical_edge_code().unwrap();
                if seen.insert(code) {
                    out.push(h);
                }
            }
        }
        by_size[v] = out;
    }
    for (v, row) in by_size.iter().enumerate().skip(1) {
        if v <= KNOWN_COUNTS.len() {
            assert_eq!(
                row.len(),
                KNOWN_COUNTS[v - 1],
                "wrong class count at {v} vertices"
            );
        }
    }
    by_size
}
