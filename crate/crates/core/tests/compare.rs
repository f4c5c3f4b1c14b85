mod common;

use common::{edge, mod_type, problem, vertex, zhat};
use modr::contact::{ContactData, LegContact};
use modr::graph::{Cone, DecoratedGraph, Leg};
use modr::compare::{
    age_classify, canonical_lift, canonical_zhat, comparison_degree, dim_stratum, equidimensionality_report,
    jac_torsion_exponent, k_tau, lift_uniqueness_oracle, monomiality_sweep, regime_check, Age, ZhatType,
};
use modr::weighting::enumerate_weightings;
use num_rational::BigRational;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

#[test]
fn cycle2_lifts() {
    let t = mod_type("cycle2");
    let lift = canonical_lift(&t, 2).unwrap();
    assert!(lift.size_bound_ok);
    assert_eq!(lift.lifted.unwrap().slopes(), &[1, 3]);
    let p = problem("cycle2");
    let all = enumerate_weightings(p.graph.clone(), p.contact.clone(), 9, 100).unwrap().weightings;
    let other = all.iter().find(|t| t.slopes() == [8, 5]).unwrap();
    assert!(canonical_lift(other, 2).unwrap().lifted.is_none());
    assert!(canonical_zhat(other, &[2, 3]).unwrap().is_none());
    let z = canonical_zhat(&t, &[2, 3]).unwrap().unwrap();
    assert_eq!(z.islope(), &[1, 3]);
}

#[test]
fn tree_types_always_lift_and_classify() {
    for name in ["star_g1", "two_internal_g2", "two_external_g2"] {
        let t = mod_type(name);
        for l in 1..4 {
            assert!(canonical_lift(&t, l).unwrap().lifted.is_some(), "{name} {l}");
        }
        let z = canonical_zhat(&t, &[2, 3]).unwrap().unwrap();
        assert!(age_classify(&z).values().all(|a| *a == Age::SmallAge));
    }
}

#[test]
fn torsion_exponents() {
    assert_eq!(jac_torsion_exponent(mod_type("single_internal_g1").graph()).unwrap(), 2);
    assert_eq!(jac_torsion_exponent(mod_type("star_g1").graph()).unwrap(), 2);
    assert_eq!(jac_torsion_exponent(mod_type("trivial_g1").graph()).unwrap(), 0);
}

#[test]
fn k_tau_examples() {
    assert_eq!(k_tau(mod_type("trivial_g1").graph()).unwrap().k, 0);
    assert_eq!(k_tau(mod_type("star_g1").graph()).unwrap().k, 1);
    assert_eq!(k_tau(mod_type("star_g2").graph()).unwrap().k, 3);
    let k = k_tau(mod_type("two_internal_g2").graph()).unwrap();
    assert_eq!((k.k, k.bound, k.star_shape), (2, 3, false));
    assert!(matches!(k_tau(mod_type("loop2").graph()), Err(modr::Error::Domain(_))));
}

#[test]
fn regime_on_fixtures() {
    assert!(regime_check(&mod_type("loop2")).nodal_nontrivial);
    assert!(regime_check(&mod_type("gcd")).divisible);
    assert!(regime_check(&mod_type("star_g1")).holds());
}

#[test]
fn degree_examples() {
    let trivial = zhat("trivial_g1");
    for l in 1..5 {
        let d = comparison_degree(&trivial.reduce(12 * l).unwrap(), l).unwrap();
        assert_eq!((d.coefficient.clone(), d.exponent), (q(1, 1), 0));
    }
    let single = zhat("single_internal_g1");
    let d = comparison_degree(&single.reduce(36).unwrap(), 3).unwrap();
    assert_eq!((d.coefficient.clone(), d.exponent, d.total.clone()), (q(1, 1), 1, q(3, 1)));
    let star = zhat("star_g1");
    let d = comparison_degree(&star.reduce(24).unwrap(), 2).unwrap();
    assert_eq!((d.coefficient.clone(), d.exponent, d.total.clone()), (q(1, 2), 2, q(2, 1)));
    assert!(d.regime_certified);
}

#[test]
fn sweeps() {
    let lambdas: Vec<u64> = (1..=6).collect();
    let s = monomiality_sweep(&zhat("trivial_g1"), 12, &lambdas).unwrap();
    assert_eq!((s.c.clone(), s.k), (Some(q(1, 1)), Some(0)));
    let s = monomiality_sweep(&zhat("star_g1"), 12, &lambdas).unwrap();
    assert_eq!(s.k, Some(1));
    assert!(s.certified);
    let s = monomiality_sweep(&zhat("two_internal_g2"), 12, &lambdas).unwrap();
    assert_eq!(s.k, Some(2));
    assert!(s.certified);
}

#[test]
fn sweep_without_regime_is_not_certified() {
    // Slope 5 does not divide 12.
    let g = DecoratedGraph::new(
        vec![vertex("x", 0, 7, Cone::External), vertex("i", 1, -5, Cone::Internal)],
        vec![edge("e", "x", "i")],
        vec![Leg { id: "l".into(), vertex: "x".into(), leg_index: 0 }],
    )
    .unwrap();
    let c = ContactData::new(vec![LegContact { s: 6, a: q(1, 6) }], 2, 1).unwrap();
    let z = ZhatType::new(g, c, 12, vec![5]).unwrap();
    let s = monomiality_sweep(&z, 12, &[1, 2, 3]).unwrap();
    assert!(!s.regime.divisible);
    assert!(!s.certified);
    assert!(s.warnings.iter().any(|w| w.contains("regime")));
    assert!(matches!(monomiality_sweep(&z, 12, &[2]), Err(modr::Error::Argument(_))));
}

#[test]
fn dimensions() {
    // trivial (g, n) = (1, 1): 3g - 3 + n = 1; star g = 1: n = 1.
    assert_eq!(dim_stratum(&mod_type("trivial_g1")).unwrap(), 1);
    assert_eq!(dim_stratum(&mod_type("star_g1")).unwrap(), 1);
    assert_eq!(dim_stratum(&mod_type("single_internal_g1")).unwrap(), 0);
    let rep = equidimensionality_report(1, 1, &[mod_type("trivial_g1"), mod_type("star_g1")]).unwrap();
    assert!(rep.equidimensional);
    let rep = equidimensionality_report(2, 1, &[mod_type("trivial_g2"), mod_type("star_g2")]).unwrap();
    assert!(!rep.equidimensional);
    assert_eq!(rep.excess, 1);
    assert!(matches!(
        equidimensionality_report(1, 1, &[mod_type("trivial_g1"), mod_type("star_g2")]),
        Err(modr::Error::Argument(_))
    ));
}

#[test]
fn lift_oracle_on_fixtures() {
    for name in ["cycle2", "star_g1", "star_g2", "two_internal_g2", "two_external_g2", "banana_g2", "gcd"] {
        let t = mod_type(name);
        for l in 1..=3 {
            let o = lift_uniqueness_oracle(&t, l, 1 << 22).unwrap();
            assert!(o.holds, "{name} lambda={l}: {o:?}");
        }
    }
}
