//! Formal polynomials in lambda assembled from per-stratum monomials.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Pow, Zero};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::compare::{jac_torsion_exponent, k_tau, monomiality_sweep, ZhatType};
use crate::error::{Error, Result};
use crate::graph::{Cone, DecoratedGraph, Vertex};
use crate::weighting::classify_graph;

/// sum_k c_k lambda^k with each term remembering which types produced it.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FormalPolynomial {
    terms: BTreeMap<i64, (BigRational, Vec<String>)>,
}

impl FormalPolynomial {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds c lambda^k; a term cancelling to zero is dropped with its provenance.
    pub fn add_term(&mut self, exponent: i64, coefficient: BigRational, label: impl Into<String>) {
        let entry = self.terms.entry(exponent).or_insert_with(|| (BigRational::zero(), Vec::new()));
        entry.0 += coefficient;
        entry.1.push(label.into());
        if entry.0.is_zero() {
            self.terms.remove(&exponent);
        }
    }

    pub fn degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn coefficient(&self, exponent: i64) -> BigRational {
        self.terms.get(&exponent).map_or_else(BigRational::zero, |t| t.0.clone())
    }

    pub fn provenance(&self, exponent: i64) -> &[String] {
        self.terms.get(&exponent).map_or(&[], |t| t.1.as_slice())
    }

    pub fn exponents(&self) -> Vec<i64> {
        self.terms.keys().copied().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn evaluate(&self, lambda: u64) -> BigRational {
        let l = BigRational::from_integer(BigInt::from(lambda));
        self.terms.iter().fold(BigRational::zero(), |acc, (&k, (c, _))| {
            let p = if k >= 0 { Pow::pow(l.clone(), k as u64) } else { Pow::pow(l.recip(), k.unsigned_abs()) };
            acc + c * p
        })
    }
}

impl Serialize for FormalPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        struct Terms<'a>(&'a FormalPolynomial);
        struct Provenance<'a>(&'a FormalPolynomial);
        impl Serialize for Terms<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let mut m = s.serialize_map(Some(self.0.terms.len()))?;
                for (k, (c, _)) in &self.0.terms {
                    m.serialize_entry(&k.to_string(), &c.to_string())?;
                }
                m.end()
            }
        }
        impl Serialize for Provenance<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let mut m = s.serialize_map(Some(self.0.terms.len()))?;
                for (k, (_, labels)) in &self.0.terms {
                    m.serialize_entry(&k.to_string(), labels)?;
                }
                m.end()
            }
        }
        let mut m = s.serialize_map(Some(2))?;
        m.serialize_entry("terms", &Terms(self))?;
        m.serialize_entry("provenance", &Provenance(self))?;
        m.end()
    }
}

/// Sums the swept monomials C_j lambda^{k_j} over an essential family.
pub fn assemble_family_polynomial(family: &[(String, ZhatType)], r: u64, lambdas: &[u64]) -> Result<FormalPolynomial> {
    let mut poly = FormalPolynomial::new();
    let mut genus = 0u64;
    for (label, z) in family {
        let class = classify_graph(z.graph());
        if !class.essential {
            return Err(Error::Domain(format!("{label} is not essential: {}", class.reasons.join("; "))));
        }
        let sweep = monomiality_sweep(z, r, lambdas)?;
        sweep.regime.require()?;
        let (Some(c), Some(k)) = (sweep.c, sweep.k) else {
            return Err(Error::Domain(format!("{label}: degrees do not fit a monomial")));
        };
        let kt = k_tau(z.graph())?;
        if k != kt.k {
            return Err(Error::Domain(format!("{label}: fitted degree {k} differs from k_tau {}", kt.k)));
        }
        if (k == 0) != class.trivial {
            return Err(Error::Domain(format!("{label}: constant term must come from trivial types only")));
        }
        genus = genus.max(kt.genus);
        poly.add_term(k, c, label.clone());
    }
    if let Some(deg) = poly.degree() {
        let bound = (2 * genus as i64 - 1).max(0);
        if deg > bound {
            return Err(Error::Domain(format!("degree {deg} exceeds max(2g-1, 0) = {bound}")));
        }
    }
    Ok(poly)
}

/// Q(lambda) for genus 1: the family polynomial, of degree exactly 1 when a
/// non-trivial essential type is present.
pub fn genus1_virtual_polynomial(types: &[(String, ZhatType)], r: u64, lambdas: &[u64]) -> Result<FormalPolynomial> {
    if let Some((label, z)) = types.iter().find(|(_, z)| z.contact().genus() != 1) {
        return Err(Error::Domain(format!("{label} has genus {}, expected 1", z.contact().genus())));
    }
    let poly = assemble_family_polynomial(types, r, lambdas)?;
    let nontrivial = types.iter().any(|(_, z)| !classify_graph(z.graph()).trivial);
    if nontrivial && poly.degree() != Some(1) {
        return Err(Error::Domain(format!("expected degree 1, got {:?}", poly.degree())));
    }
    Ok(poly)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MaulikDegree {
    /// 1/r, 1/s, (r^j - 1)/r, (s^j - 1)/s with j the torsion exponent.
    pub summands: Vec<String>,
    pub torsion_exponent: i64,
    #[serde(serialize_with = "crate::rational::serialize")]
    pub total: BigRational,
}

/// Total degree of the virtual class for the elliptic fixture at (r, s).
pub fn maulik_total_degree(r: u64, s: u64) -> Result<MaulikDegree> {
    if r == 0 || s == 0 {
        return Err(Error::Argument("r and s must be at least 1".into()));
    }
    let internal = DecoratedGraph::new(
        vec![Vertex { id: "i".into(), genus: 1, degree: 0, cone: Cone::Internal }],
        vec![],
        vec![],
    )?;
    let j = jac_torsion_exponent(&internal)?;
    let q = |n: u64, d: u64| BigRational::new(BigInt::from(n), BigInt::from(d));
    let torsion = |n: u64| {
        let count = Pow::pow(BigInt::from(n), j as u64);
        BigRational::new(count - 1, BigInt::from(n))
    };
    let summands = vec![q(1, r), q(1, s), torsion(r), torsion(s)];
    let total: BigRational = summands.iter().fold(BigRational::zero(), |a, b| a + b);
    if total != BigRational::from_integer(BigInt::from(r) + BigInt::from(s)) {
        return Err(Error::Domain(format!("total {total} differs from r + s")));
    }
    Ok(MaulikDegree { summands: summands.iter().map(|x| x.to_string()).collect(), torsion_exponent: j, total })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn maulik_examples() {
        assert_eq!(maulik_total_degree(3, 5).unwrap().total, BigRational::from_integer(8.into()));
        assert_eq!(maulik_total_degree(1, 1).unwrap().total, BigRational::from_integer(2.into()));
        assert_eq!(maulik_total_degree(2, 7).unwrap().total, BigRational::from_integer(9.into()));
        assert!(maulik_total_degree(0, 1).is_err());
    }

    #[test]
    fn json_shape() {
        let mut p = FormalPolynomial::new();
        p.add_term(0, BigRational::from_integer(1.into()), "trivial");
        assert_eq!(serde_json::to_string(&p).unwrap(), r#"{"terms":{"0":"1"},"provenance":{"0":["trivial"]}}"#);
        p.add_term(0, BigRational::from_integer((-1).into()), "cancel");
        assert!(p.is_zero());
    }
}
