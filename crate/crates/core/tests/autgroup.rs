mod common;

use std::collections::BTreeSet;

use common::{balanced_graph, banana, mod_type, no_legs};
use modr::autgroup::{counters, reduction_kernel_order, sh_enumerate, sh_order, ShSystem};
use modr::graph::Cone;
use modr::weighting::{enumerate_weightings, ModRType};
use num_bigint::BigUint;
use proptest::prelude::*;

#[test]
fn gcd_fixture() {
    let t = mod_type("gcd");
    assert_eq!(sh_order(&t).unwrap(), BigUint::from(2u32));
    assert_eq!(sh_enumerate(&t, 1000).unwrap(), vec![vec![0, 0], vec![2, 3]]);
}

#[test]
fn tree_product_and_empty() {
    // r = 15, slopes 5 and 3 give t = (3, 5).
    let g = balanced_graph(&[Cone::External, Cone::Internal, Cone::Internal], &[0, 1, 1], &[(0, 1), (0, 2)], &[5, 3]);
    let t = ModRType::new(g, no_legs(0, 2), 15, vec![5, 3]).unwrap();
    assert_eq!(sh_order(&t).unwrap(), BigUint::from(15u32));
    let single = mod_type("trivial_g1");
    assert_eq!(sh_order(&single).unwrap(), BigUint::from(1u32));
    assert_eq!(sh_enumerate(&single, 10).unwrap(), vec![Vec::<u64>::new()]);
}

#[test]
fn equal_coefficients_on_two_by_two() {
    let t = banana(2, 1, 1);
    assert_eq!(sh_enumerate(&t, 10).unwrap(), vec![vec![0, 0], vec![1, 1]]);
}

#[test]
fn kernel_at_lambda_one_is_trivial() {
    assert_eq!(reduction_kernel_order(&mod_type("gcd"), 1).unwrap(), BigUint::from(1u32));
}

#[test]
fn kernel_of_scaled_gcd_fixture_matches_scan() {
    // Slopes 3 and 2 lifted to 24 = 2 * 12.
    let t = banana(24, 3, 2);
    let scan = sh_enumerate(&t, 1 << 20)
        .unwrap()
        .into_iter()
        .filter(|a| a[0] % 4 == 0 && a[1] % 6 == 0)
        .count();
    assert_eq!(reduction_kernel_order(&t, 2).unwrap(), BigUint::from(scan));
    assert_eq!(scan, 2);
}

#[test]
fn loop2_kernel_claim() {
    // Slopes 1 and 3 divide r = 9; the lift to 18 has a kernel of order 2^|E(T)| = 2.
    let t = banana(18, 1, 3);
    assert_eq!(reduction_kernel_order(&t, 2).unwrap(), BigUint::from(2u32));
}

#[test]
fn budget_error_from_enumeration() {
    let t = banana(1000, 1, 1);
    assert!(matches!(sh_enumerate(&t, 10), Err(modr::Error::Budget { .. })));
}

proptest! {
    #[test]
    fn lattice_equals_exhaustive(r in 1u64..25, m1 in 0u64..25, m2 in 0u64..25, m3 in 0u64..25) {
        let g = balanced_graph(
            &[Cone::External, Cone::Internal, Cone::Internal],
            &[0, 1, 1],
            &[(0, 1), (1, 2), (2, 0), (0, 1)],
            &[m1 as i64, m2 as i64, m3 as i64, 1],
        );
        let t = ModRType::new(g, no_legs(0, 4), r, vec![m1 % r, m2 % r, m3 % r, 1 % r]).unwrap();
        let sys = ShSystem::of(&t).unwrap();
        let reg = counters();
        let a = reg.get("lattice").unwrap().count(&sys, 1 << 22).unwrap();
        let b = reg.get("exhaustive").unwrap().count(&sys, 1 << 22).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn solutions_form_a_subgroup(r in 1u64..16, m1 in 0u64..16, m2 in 0u64..16) {
        let t = banana(r, m1, m2);
        let elems: BTreeSet<Vec<u64>> = sh_enumerate(&t, 1 << 20).unwrap().into_iter().collect();
        let moduli = t.isotropy();
        for a in &elems {
            let neg: Vec<u64> = a.iter().zip(&moduli).map(|(&x, &n)| (n - x) % n).collect();
            prop_assert!(elems.contains(&neg));
            for b in &elems {
                let sum: Vec<u64> = a.iter().zip(b).zip(&moduli).map(|((&x, &y), &n)| (x + y) % n).collect();
                prop_assert!(elems.contains(&sum));
            }
        }
    }

    #[test]
    fn every_weighting_of_a_two_loop_graph(r in 1u64..10) {
        let g = balanced_graph(&[Cone::External, Cone::Internal], &[0, 1], &[(0, 1), (0, 1), (1, 0)], &[1, 2, 0]);
        for t in enumerate_weightings(g, no_legs(0, 3), r, 1 << 16).unwrap().weightings {
            prop_assert_eq!(sh_order(&t).unwrap(), BigUint::from(sh_enumerate(&t, 1 << 20).unwrap().len()));
        }
    }
}
