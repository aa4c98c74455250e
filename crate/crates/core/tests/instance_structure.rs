//! Cycle structure of the generated families, checked with the
//! definition-level independence oracle.

mod common;

use msp::instances::{double_triangle, hat_graph, modified_hat_graph, InstanceBundle};

fn independent(b: &InstanceBundle, names: &[&str]) -> bool {
    common::independent(b.view.base(), &b.ids(names))
}

/// A circuit: dependent, and every proper subset obtained by dropping one
/// element is independent.
fn circuit(b: &InstanceBundle, names: &[&str]) -> bool {
    !independent(b, names)
        && (0..names.len()).all(|skip| {
            let rest: Vec<&str> = names.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &n)| n).collect();
            independent(b, &rest)
        })
}

#[test]
fn hat_claws_close_triangles_with_e_inf() {
    let b = hat_graph(4).unwrap();
    for i in 1..=4 {
        let (t, bb) = (format!("t_{i}"), format!("b_{i}"));
        assert!(circuit(&b, &["e_inf", &t, &bb]));
        for j in (i + 1)..=4 {
            let (tj, bj) = (format!("t_{j}"), format!("b_{j}"));
            assert!(circuit(&b, &[&t, &bb, &tj, &bj]));
        }
    }
}

#[test]
fn modified_hat_paths_join_top_and_bottom() {
    let b = modified_hat_graph(3).unwrap();
    for k in 1..=3 {
        let e = |c: usize| format!("{c}_{k}");
        let (one, two, three, four) = (e(1), e(2), e(3), e(4));
        // Both paths run from v_t to v_b, so each closes a cycle with e_inf.
        assert!(circuit(&b, &["e_inf", &two, &three, &four]));
        assert!(circuit(&b, &["e_inf", &one, &four]));
        assert!(circuit(&b, &[&one, &two, &three]));
        // Two claws' paths together also form a cycle.
        for j in (k + 1)..=3 {
            assert!(circuit(&b, &[&one, &four, &format!("1_{j}"), &format!("4_{j}")]));
        }
    }
}

#[test]
fn double_triangle_has_parallel_pairs_and_a_three_cycle() {
    let b = double_triangle();
    for i in 1..=3 {
        assert!(circuit(&b, &[&format!("e_{{{i},1}}"), &format!("e_{{{i},2}}")]));
    }
    assert!(circuit(&b, &["e_{1,2}", "e_{2,2}", "e_{3,2}"]));
    assert!(circuit(&b, &["e_{1,1}", "e_{2,2}", "e_{3,1}"]));
}
