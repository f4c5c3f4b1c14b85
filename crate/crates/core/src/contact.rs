//! Contact data: per-leg rooting parameters and ages, coarse degree, genus.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::validation::{ValidationReport, Violation};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LegContact {
    /// Source rooting parameter s_i.
    pub s: u64,
    /// Age a_i in [0, 1) with a_i * s_i integral.
    #[serde(serialize_with = "crate::rational::serialize")]
    pub a: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ContactData {
    legs: Vec<LegContact>,
    d: i64,
    g: u32,
}

impl ContactData {
    pub fn new(legs: Vec<LegContact>, d: i64, g: u32) -> Result<Self> {
        for (i, leg) in legs.iter().enumerate() {
            if leg.s == 0 {
                return Err(Error::Domain(format!("leg {i}: s must be positive")));
            }
            if leg.a.is_negative() || leg.a >= BigRational::one() {
                return Err(Error::Domain(format!("leg {i}: age {} not in [0,1)", leg.a)));
            }
            if !(&leg.a * BigInt::from(leg.s)).is_integer() {
                return Err(Error::Domain(format!("leg {i}: age {} not in (1/{})Z", leg.a, leg.s)));
            }
        }
        Ok(Self { legs, d, g })
    }

    pub fn legs(&self) -> &[LegContact] {
        &self.legs
    }

    pub fn n(&self) -> usize {
        self.legs.len()
    }

    pub fn degree(&self) -> i64 {
        self.d
    }

    pub fn genus(&self) -> u32 {
        self.g
    }

    /// Gerby contact orders c~_i = s_i a_i.
    pub fn gerby_orders(&self) -> Vec<BigInt> {
        self.legs.iter().map(|l| (&l.a * BigInt::from(l.s)).to_integer()).collect()
    }

    /// Coarse contact orders c_i = r a_i as exact rationals.
    pub fn coarse_rational(&self, r: u64) -> Vec<BigRational> {
        self.legs.iter().map(|l| &l.a * BigInt::from(r)).collect()
    }

    /// Coarse contact orders as machine integers; fails unless every r a_i
    /// is an integer that fits.
    pub fn coarse_orders(&self, r: u64) -> Result<Vec<i64>> {
        self.coarse_rational(r)
            .into_iter()
            .enumerate()
            .map(|(i, c)| {
                if !c.is_integer() {
                    return Err(Error::Domain(format!("leg {i}: r*a = {c} is not an integer")));
                }
                c.to_integer()
                    .to_i64()
                    .ok_or_else(|| Error::Domain(format!("leg {i}: coarse order overflows")))
            })
            .collect()
    }
}

/// Checks the numerical conditions tying contact data to rooting parameter r.
/// Violations are collected, never raised.
pub fn validate_contact(contact: &ContactData, r: u64) -> ValidationReport {
    let mut report = ValidationReport::default();
    let rb = BigInt::from(r);
    let mut sum_c = BigInt::zero();
    let mut max_c: Option<BigInt> = None;
    for (i, (leg, c)) in contact.legs.iter().zip(contact.coarse_rational(r)).enumerate() {
        if !c.is_integer() || c.is_negative() {
            report.violations.push(Violation::CoarseNotIntegral { leg: i });
            continue;
        }
        let c = c.to_integer();
        let s = BigInt::from(leg.s);
        if !(&rb % &s).is_zero() {
            report.violations.push(Violation::SourceDoesNotDivide { leg: i, s: leg.s, r });
        }
        if !((&c * &s) % &rb).is_zero() {
            report.violations.push(Violation::CoarseTimesSource { leg: i, c: c.to_string(), s: leg.s, r });
        }
        let expected = &rb / gcd_or_modulus(&rb, &c);
        if expected != s {
            report.violations.push(Violation::Coprimality { leg: i, s: leg.s, expected: expected.to_string() });
        }
        sum_c += &c;
        if max_c.as_ref().map_or(true, |m| &c > m) {
            max_c = Some(c);
        }
    }
    if let Some(m) = max_c {
        if rb <= m {
            report.violations.push(Violation::SizeVsContacts { r, max_c: m.to_string() });
        }
    }
    if BigInt::from(contact.d) != sum_c {
        report.violations.push(Violation::ContactSum { d: contact.d, sum_c: sum_c.to_string() });
    }
    if i128::from(r) <= 2 * i128::from(contact.d) {
        report.violations.push(Violation::RootVsDegree { r, d: contact.d });
    }
    report
}

/// gcd(r, c) with the convention gcd(r, 0) = r.
fn gcd_or_modulus(r: &BigInt, c: &BigInt) -> BigInt {
    if c.is_zero() {
        r.clone()
    } else {
        r.gcd(c)
    }
}

/// Contact data for parameter lambda*r: s_i -> lambda s_i, a_i -> a_i / lambda.
/// Coarse orders, degree and genus are unchanged.
pub fn scale_contact(contact: &ContactData, _r: u64, lambda: u64) -> Result<ContactData> {
    if lambda == 0 {
        return Err(Error::Domain("scaling factor must be positive".into()));
    }
    let legs = contact
        .legs
        .iter()
        .map(|l| {
            let s = l.s.checked_mul(lambda).ok_or_else(|| Error::Domain("s*lambda overflows".into()))?;
            Ok(LegContact { s, a: &l.a / BigInt::from(lambda) })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ContactData { legs, d: contact.d, g: contact.g })
}

/// Inverse of [`scale_contact`]: s_i -> s_i / lambda, a_i -> lambda a_i.
pub fn coarsen_contact(contact: &ContactData, lambda: u64) -> Result<ContactData> {
    if lambda == 0 {
        return Err(Error::Domain("scaling factor must be positive".into()));
    }
    let legs = contact
        .legs
        .iter()
        .enumerate()
        .map(|(i, l)| {
            if l.s % lambda != 0 {
                return Err(Error::Domain(format!("leg {i}: lambda = {lambda} does not divide s = {}", l.s)));
            }
            Ok(LegContact { s: l.s / lambda, a: &l.a * BigInt::from(lambda) })
        })
        .collect::<Result<Vec<_>>>()?;
    ContactData::new(legs, contact.d, contact.g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn one_leg(s: u64, a: BigRational, d: i64) -> ContactData {
        ContactData::new(vec![LegContact { s, a }], d, 0).unwrap()
    }

    #[test]
    fn size_condition_fails_at_five() {
        let c = one_leg(5, q(4, 5), 4);
        let rep = validate_contact(&c, 5);
        assert_eq!(rep.violations, vec![Violation::RootVsDegree { r: 5, d: 4 }]);
        assert_eq!(c.coarse_orders(5).unwrap(), vec![4]);
    }

    #[test]
    fn empty_contact_is_valid() {
        let c = ContactData::new(vec![], 0, 3).unwrap();
        for r in 1..10 {
            assert!(validate_contact(&c, r).is_valid());
        }
    }

    #[test]
    fn nine_passes() {
        assert!(validate_contact(&one_leg(9, q(4, 9), 4), 9).is_valid());
    }

    #[test]
    fn age_outside_lattice_rejected() {
        assert!(ContactData::new(vec![LegContact { s: 3, a: q(1, 2) }], 0, 0).is_err());
        assert!(ContactData::new(vec![LegContact { s: 3, a: q(1, 1) }], 0, 0).is_err());
    }

    #[test]
    fn scaling_preserves_coarse_orders() {
        let c = one_leg(9, q(4, 9), 4);
        let s = scale_contact(&c, 9, 2).unwrap();
        assert_eq!(s.legs()[0], LegContact { s: 18, a: q(2, 9) });
        assert_eq!(s.coarse_orders(18).unwrap(), vec![4]);
        assert_eq!(scale_contact(&c, 9, 1).unwrap(), c);
        assert!(scale_contact(&c, 9, 0).is_err());
        assert_eq!(coarsen_contact(&s, 2).unwrap(), c);
    }

    #[test]
    fn scaled_contact_can_break_coprimality() {
        // gcd(18, 4) = 2 != gcd(9, 4) = 1, so 18/gcd(18,4) = 9 != 18.
        let s = scale_contact(&one_leg(9, q(4, 9), 4), 9, 2).unwrap();
        let rep = validate_contact(&s, 18);
        assert_eq!(rep.violations.len(), 1);
        assert!(matches!(rep.violations[0], Violation::Coprimality { s: 18, .. }));
    }

    #[test]
    fn zero_age_needs_trivial_isotropy() {
        assert!(validate_contact(&one_leg(1, q(0, 1), 0), 5).is_valid());
        let rep = validate_contact(&one_leg(5, q(0, 1), 0), 5);
        assert!(matches!(rep.violations[0], Violation::Coprimality { .. }));
    }

    fn valid_contact() -> impl Strategy<Value = (ContactData, u64)> {
        (2u64..40, proptest::collection::vec(0u64..40, 0..4)).prop_filter_map("valid", |(r, cs)| {
            let legs: Vec<LegContact> = cs
                .iter()
                .filter(|&&c| c < r)
                .map(|&c| {
                    let g = if c == 0 { r } else { num_integer::gcd(r, c) };
                    LegContact { s: r / g, a: q(c as i64, r as i64) }
                })
                .collect();
            let d: i64 = cs.iter().filter(|&&c| c < r).map(|&c| c as i64).sum();
            let c = ContactData::new(legs, d, 0).ok()?;
            validate_contact(&c, r).is_valid().then_some((c, r))
        })
    }

    proptest! {
        #[test]
        fn scaling_is_a_monoid_action((c, r) in valid_contact(), l1 in 1u64..6, l2 in 1u64..6) {
            let twice = scale_contact(&scale_contact(&c, r, l1).unwrap(), l1 * r, l2).unwrap();
            prop_assert_eq!(twice, scale_contact(&c, r, l1 * l2).unwrap());
            prop_assert_eq!(scale_contact(&c, r, 1).unwrap(), c);
        }

        #[test]
        fn scaling_stays_valid_when_gcds_agree((c, r) in valid_contact(), l in 1u64..8) {
            let cs = c.coarse_orders(r).unwrap();
            let g0 = |m: u64, c: u64| if c == 0 { m } else { num_integer::gcd(m, c) };
            let stable = cs.iter().all(|&ci| {
                let ci = ci as u64;
                l * r / g0(l * r, ci) == l * (r / g0(r, ci))
            });
            let s = scale_contact(&c, r, l).unwrap();
            prop_assert_eq!(s.coarse_orders(l * r).unwrap(), cs);
            if stable {
                prop_assert!(validate_contact(&s, l * r).is_valid());
            }
        }
    }
}
