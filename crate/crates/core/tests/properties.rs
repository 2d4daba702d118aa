//! Randomized and sweep-level properties beyond the acceptance gate.

use proptest::prelude::*;
use tangles_core::branch::branch_width;
use tangles_core::catalog;
use tangles_core::tangle::{enumerate_tangles, is_k_entangled};
use tangles_core::verify::{run, Suite};

#[test]
fn removal_keeps_matroids_entangled() {
    let outcome = run(
        Suite::EntangledRemoval,
        Suite::EntangledRemoval.default_scope(),
    );
    assert!(outcome.passed(), "{:?}", outcome.violations);
}

#[test]
fn branch_width_matches_tangle_orders() {
    let outcome = run(Suite::BranchWidth, Suite::BranchWidth.default_scope());
    assert!(outcome.passed(), "{:?}", outcome.violations);
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn random_gf2_matroids_are_connectivity_systems(rows in 1usize..5, cols in 1usize..8, seed: u64) {
        let m = catalog::random_gf2(rows, cols, seed).unwrap();
        prop_assert!(m.system().verify_axioms().is_empty());
    }

    #[test]
    fn random_gf2_branch_width_bounds_tangles(rows in 1usize..4, cols in 2usize..7, seed: u64) {
        let k = catalog::random_gf2(rows, cols, seed).unwrap().system();
        let bw = branch_width(&k);
        prop_assert!(!enumerate_tangles(&k, bw).is_empty());
        prop_assert!(enumerate_tangles(&k, bw + 1).is_empty());
    }

    #[test]
    fn random_graph_pivots_preserve_cut_rank(n in 2usize..7, p in 0.2f64..0.9, seed: u64) {
        let g = catalog::random_graph(n, p, seed).unwrap();
        let table = g.system().table().to_vec();
        for (u, v) in g.edges() {
            let pivoted = g.pivot(u, v).unwrap().system();
            prop_assert_eq!(pivoted.table(), table.as_slice());
        }
    }

    #[test]
    fn some_removal_keeps_random_matroids_entangled(rows in 1usize..4, cols in 2usize..7, seed: u64) {
        let m = catalog::random_gf2(rows, cols, seed).unwrap();
        let k = m.system();
        for order in 1..=k.max_value() + 1 {
            if !is_k_entangled(&k, order) {
                continue;
            }
            for e in 0..m.len() {
                let d = m.delete(e).unwrap().system();
                let c = m.contract(e).unwrap().system();
                prop_assert!(is_k_entangled(&d, order) || is_k_entangled(&c, order));
            }
        }
    }

    #[test]
    fn random_matroids_have_a_split_free_removal(rows in 1usize..4, cols in 2usize..7, seed: u64) {
        let m = catalog::random_gf2(rows, cols, seed).unwrap();
        for e in 0..m.len() {
            prop_assert!(!m.split_free_removal(e).unwrap().is_empty());
            prop_assert!(!m.safe_removal(e).unwrap().is_empty());
        }
    }
}
