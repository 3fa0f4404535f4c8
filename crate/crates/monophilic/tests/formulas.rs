//! Closed-form path and cycle counts against the engine, the recurrence
//! system, and the minimizing behavior of the two constructed assignment
//! kinds on paths.

mod common;

use monophilic::count::{col, col_uniform};
use monophilic::graph::{build_cycle, build_path};
use monophilic::paths::{
    cycle_uniform_count, make_path_assignment, type_a_count, type_b_count, PathListKind,
};
use monophilic::search::{enumerate_assignments_with_sizes, SearchConfig};
use monophilic::ListAssignment;
use num_bigint::BigUint;

#[test]
fn closed_forms_match_the_engine_on_constructed_assignments() {
    for n in 2..=4u32 {
        for k in 1..=8usize {
            let g = build_path(k).unwrap();
            let a = make_path_assignment(k, n, PathListKind::TypeA).unwrap();
            let b = make_path_assignment(k, n, PathListKind::TypeB).unwrap();
            assert_eq!(
                col(&g, &a).unwrap(),
                type_a_count(k, n).unwrap(),
                "A k={k} n={n}"
            );
            assert_eq!(
                col(&g, &b).unwrap(),
                type_b_count(k, n).unwrap(),
                "B k={k} n={n}"
            );
        }
    }
}

#[test]
fn recurrences_and_sign_identity_hold() {
    for n in 2..=5u32 {
        for k in 2..=12usize {
            let a_k = type_a_count(k, n).unwrap();
            let b_k = type_b_count(k, n).unwrap();
            let a_prev = type_a_count(k - 1, n).unwrap();
            let b_prev = type_b_count(k - 1, n).unwrap();
            assert_eq!(
                a_k,
                BigUint::from(n - 1) * &b_prev,
                "A recurrence k={k} n={n}"
            );
            assert_eq!(
                b_k,
                &a_prev + BigUint::from(n - 2) * &b_prev,
                "B recurrence k={k} n={n}"
            );
            // The two counts always differ by exactly one, alternating sides.
            if k % 2 == 0 {
                assert_eq!(a_k, b_k + 1u32, "sign identity k={k} n={n}");
            } else {
                assert_eq!(b_k, a_k + 1u32, "sign identity k={k} n={n}");
            }
        }
    }
}

/// Over every assignment class with (n−1)-lists at the two path ends and
/// n-lists inside (n = 3, up to 4 edges), the minimum count is the type-A
/// value on odd lengths and the type-B value on even lengths, and no class
/// beats the smaller of the two.
#[test]
fn end_shrunk_paths_minimize_at_a_constructed_kind() {
    let config = SearchConfig::default();
    for k in 1..=4usize {
        let n = 3u32;
        let g = build_path(k).unwrap();
        let mut sizes = vec![n as usize; k + 1];
        sizes[0] = n as usize - 1;
        sizes[k] = n as usize - 1;
        let a = type_a_count(k, n).unwrap();
        let b = type_b_count(k, n).unwrap();
        let floor = a.clone().min(b.clone());
        let mut min: Option<BigUint> = None;
        for class in enumerate_assignments_with_sizes(&g, &sizes, &config).unwrap() {
            let count = col(&g, &class.unwrap()).unwrap();
            assert!(count >= floor, "class below the kind floor at k={k}");
            min = Some(match min {
                None => count,
                Some(m) => m.min(count),
            });
        }
        let expected = if k % 2 == 1 { a } else { b };
        assert_eq!(min.unwrap(), expected, "k={k}");
    }
}

/// With two colors, an assignment can reach the minimum without being
/// either constructed kind: splitting the square's minimizing assignment
/// open at a vertex leaves singleton ends {1}, {3} whose interiors do not
/// match either construction, yet the count is the exact minimum.
#[test]
fn two_color_minimizers_are_not_always_a_constructed_kind() {
    let config = SearchConfig::default();
    let g = build_path(3).unwrap();
    let example = ListAssignment::new(vec![vec![1], vec![1, 2], vec![2, 3], vec![3]]).unwrap();
    let example_count = col(&g, &example).unwrap();
    assert_ne!(
        example.lists(),
        make_path_assignment(3, 2, PathListKind::TypeA)
            .unwrap()
            .lists()
    );
    assert_ne!(
        example.lists(),
        make_path_assignment(3, 2, PathListKind::TypeB)
            .unwrap()
            .lists()
    );
    let mut min: Option<BigUint> = None;
    for class in enumerate_assignments_with_sizes(&g, &[1, 2, 2, 1], &config).unwrap() {
        let count = col(&g, &class.unwrap()).unwrap();
        min = Some(match min {
            None => count,
            Some(m) => m.min(count),
        });
    }
    assert_eq!(example_count, min.unwrap());
    assert_eq!(example_count, type_a_count(3, 2).unwrap());
}

#[test]
fn cycle_closed_form_matches_the_engine() {
    for n in 1..=4u32 {
        for k in 3..=8usize {
            let g = build_cycle(k).unwrap();
            assert_eq!(
                cycle_uniform_count(k, n).unwrap(),
                col_uniform(&g, n).unwrap(),
                "k={k} n={n}"
            );
        }
    }
}
