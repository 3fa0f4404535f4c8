//! Oracle equivalence and algebraic properties of the exact counting engine
//! on randomized small instances.

mod common;

use common::{brute_col, disjoint_union, random_connected_graph, random_lists, rng};
use monophilic::count::{col, col_pinned, col_uniform, separating_edge_surgery};
use monophilic::graph::{build_complete, build_path};
use monophilic::{ListAssignment, Pin};
use num_bigint::BigUint;
use num_traits::Zero;
use rand::Rng;

#[test]
fn engine_matches_brute_force_on_random_instances() {
    let mut rng = rng(0xC0_0041);
    for trial in 0..200 {
        let v = rng.gen_range(1..=6);
        let g = random_connected_graph(&mut rng, v, 0.35);
        let lists = random_lists(&mut rng, v, 3, 6);
        let fast = col(&g, &lists).unwrap();
        let slow = brute_col(&g, &lists);
        assert_eq!(fast, slow, "trial {trial}: {:?} {:?}", g.edges(), lists);
    }
}

#[test]
fn counts_multiply_over_disjoint_unions() {
    let mut rng = rng(0xC0_0042);
    for _ in 0..60 {
        let va = rng.gen_range(1..=5);
        let vb = rng.gen_range(1..=5);
        let a = random_connected_graph(&mut rng, va, 0.3);
        let b = random_connected_graph(&mut rng, vb, 0.3);
        let la = random_lists(&mut rng, va, 3, 5);
        let lb = random_lists(&mut rng, vb, 3, 5);
        let union = disjoint_union(&a, &b);
        let mut lists = la.lists().to_vec();
        lists.extend(lb.lists().to_vec());
        let lists = ListAssignment::new(lists).unwrap();
        assert_eq!(
            col(&union, &lists).unwrap(),
            col(&a, &la).unwrap() * col(&b, &lb).unwrap()
        );
    }
}

#[test]
fn pinning_one_vertex_partitions_the_count() {
    let mut rng = rng(0xC0_0043);
    for _ in 0..50 {
        let v = rng.gen_range(1..=6);
        let g = random_connected_graph(&mut rng, v, 0.35);
        let lists = random_lists(&mut rng, v, 3, 6);
        let vertex = rng.gen_range(0..v);
        let total: BigUint = lists
            .list(vertex)
            .iter()
            .map(|&color| col_pinned(&g, &lists, &[Pin { vertex, color }]).unwrap())
            .sum();
        assert_eq!(total, col(&g, &lists).unwrap());
    }
}

#[test]
fn enlarging_any_path_list_strictly_increases_the_count() {
    let mut rng = rng(0xC0_0044);
    let mut checked = 0;
    while checked < 100 {
        let k = rng.gen_range(1..=6);
        let g = build_path(k).unwrap();
        let large = random_lists(&mut rng, k + 1, 4, 6);
        if large.lists().iter().any(|l| l.len() < 2) {
            continue;
        }
        // Shrink at least one list to a proper nonempty sublist.
        let small: Vec<Vec<u32>> = large
            .lists()
            .iter()
            .map(|l| {
                let keep = rng.gen_range(1..=l.len());
                let mut s: Vec<u32> = rand::seq::index::sample(&mut rng, l.len(), keep)
                    .into_iter()
                    .map(|i| l[i])
                    .collect();
                s.sort_unstable();
                s
            })
            .collect();
        if small.iter().zip(large.lists()).all(|(s, l)| s == l) {
            continue;
        }
        let small = ListAssignment::new(small).unwrap();
        assert!(
            col(&g, &small).unwrap() < col(&g, &large).unwrap(),
            "path k={k}: {small:?} vs {large:?}"
        );
        checked += 1;
    }
}

#[test]
fn apex_on_a_clique_scales_uniform_counts() {
    let mut rng = rng(0xC0_0045);
    for _ in 0..40 {
        let v = rng.gen_range(1..=5);
        let g = random_connected_graph(&mut rng, v, 0.4);
        // Grow a clique greedily from a random start.
        let start = rng.gen_range(0..v);
        let mut clique = vec![start];
        for u in 0..v {
            if !clique.contains(&u) && clique.iter().all(|&c| g.has_edge(u, c)) {
                clique.push(u);
            }
        }
        let k = rng.gen_range(1..=clique.len());
        let clique = &clique[..k];
        let mut coned = g.clone();
        let apex = coned.add_vertex();
        for &c in clique {
            coned.add_edge(apex, c).unwrap();
        }
        for n in k as u32..=k as u32 + 3 {
            assert_eq!(
                col_uniform(&coned, n).unwrap(),
                col_uniform(&g, n).unwrap() * BigUint::from(n - k as u32),
                "clique size {k}, n = {n}"
            );
        }
    }
}

#[test]
fn clique_vertex_counts_follow_the_falling_factorial() {
    for k in 1..=5usize {
        let g = build_complete(k).unwrap();
        for n in 1..=6u32 {
            let expected: BigUint = (0..k as u32)
                .map(|i| BigUint::from(n.saturating_sub(i)))
                .product();
            assert_eq!(col_uniform(&g, n).unwrap(), expected);
        }
    }
}

#[test]
fn bridge_surgery_never_increases_the_count() {
    let mut rng = rng(0xC0_0046);
    let mut checked = 0;
    while checked < 100 {
        let v = rng.gen_range(2..=6);
        let g = random_connected_graph(&mut rng, v, 0.15);
        let bridges = g.bridges();
        if bridges.is_empty() {
            continue;
        }
        let lists = random_lists(&mut rng, v, 3, 6);
        let (a, b) = bridges[rng.gen_range(0..bridges.len())];
        let before = col(&g, &lists).unwrap();
        let rewritten = separating_edge_surgery(&g, &lists, a, b).unwrap();
        let after = col(&g, &rewritten).unwrap();
        assert!(after <= before, "{:?} {lists:?}", g.edges());
        // The rewritten endpoint lists are nested.
        let (la, lb) = (rewritten.list(a), rewritten.list(b));
        let nested = la.iter().all(|c| lb.contains(c)) || lb.iter().all(|c| la.contains(c));
        assert!(nested);
        // A zero count survives the rewrite.
        if before.is_zero() {
            assert!(after.is_zero());
        }
        checked += 1;
    }
}
