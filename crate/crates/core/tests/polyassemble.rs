mod common;

use common::zhat;
use modr::compare::{comparison_degree, ZhatType};
use modr::polyassemble::{assemble_family_polynomial, genus1_virtual_polynomial, maulik_total_degree};
use num_rational::BigRational;
use num_traits::Zero;

fn family(names: &[&str]) -> Vec<(String, ZhatType)> {
    names.iter().map(|n| (n.to_string(), zhat(n))).collect()
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

const LAMBDAS: [u64; 6] = [1, 2, 3, 4, 5, 6];

#[test]
fn trivial_only_is_constant() {
    for name in ["trivial_g1", "trivial_g2"] {
        let p = assemble_family_polynomial(&family(&[name]), 12, &LAMBDAS).unwrap();
        assert_eq!(p.exponents(), vec![0]);
        assert_eq!(p.coefficient(0), int(1));
    }
}

#[test]
fn genus_one_family() {
    let p = genus1_virtual_polynomial(&family(&["trivial_g1", "star_g1"]), 12, &LAMBDAS).unwrap();
    assert_eq!(p.degree(), Some(1));
    assert_eq!(p.provenance(0), &["trivial_g1".to_string()]);
    assert!(p.coefficient(1) > BigRational::zero());
    let q = genus1_virtual_polynomial(&family(&["trivial_g1"]), 12, &LAMBDAS).unwrap();
    assert_eq!(q.degree(), Some(0));
    assert!(matches!(
        genus1_virtual_polynomial(&family(&["trivial_g2"]), 12, &LAMBDAS),
        Err(modr::Error::Domain(_))
    ));
}

#[test]
fn genus_two_family() {
    let names = ["trivial_g2", "star_g2", "two_internal_g2"];
    let p = assemble_family_polynomial(&family(&names), 12, &LAMBDAS).unwrap();
    assert_eq!(p.exponents(), vec![0, 2, 3]);
    assert_eq!(p.degree(), Some(3));
    assert_eq!(p.provenance(3), &["star_g2".to_string()]);
}

#[test]
fn formal_and_pointwise_views_agree() {
    let names = ["trivial_g2", "star_g2", "two_internal_g2", "two_external_g2", "banana_g2"];
    let fam = family(&names);
    let p = assemble_family_polynomial(&fam, 12, &LAMBDAS).unwrap();
    for l in LAMBDAS {
        let pointwise = fam
            .iter()
            .map(|(_, z)| comparison_degree(&z.reduce_scaled(12, l).unwrap(), l).unwrap().total)
            .fold(BigRational::zero(), |a, b| a + b);
        assert_eq!(p.evaluate(l), pointwise, "lambda = {l}");
    }
}

#[test]
fn non_essential_member_rejected() {
    let p = common::problem("cycle2");
    let z = p.zhat_or_lift(&[2]).unwrap();
    let err = assemble_family_polynomial(&[("cycle2".into(), z)], 9, &LAMBDAS).unwrap_err();
    assert!(matches!(err, modr::Error::Domain(_)));
}

#[test]
fn regime_failure_names_the_bullet() {
    // Slope 2 on edge b does not divide 9.
    let z = zhat("two_internal_g2");
    let err = assemble_family_polynomial(&[("t".into(), z)], 9, &LAMBDAS).unwrap_err();
    assert_eq!(err, modr::Error::Regime(modr::compare::RegimeBullet::Divisible));
}

#[test]
fn maulik_grid() {
    for r in 1..=50u64 {
        for s in 1..=50u64 {
            assert_eq!(maulik_total_degree(r, s).unwrap().total, int((r + s) as i64));
        }
    }
}
