//! Coarse push-forward degrees of fractional divisors and the necessary
//! inducibility checks at External vertices.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{validate_pretype, Cone, WindowCheck};
use crate::validation::Violation;
use crate::weighting::ModRType;

/// One point with coefficient `a` against isotropy order `s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorTerm {
    pub a: BigInt,
    pub s: u64,
}

/// sum a_i/s_i p_i + integer part, on a curve with stacky points of order s_i.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FractionalDivisor {
    pub terms: Vec<DivisorTerm>,
    pub integer: BigInt,
}

impl FractionalDivisor {
    pub fn new(terms: Vec<DivisorTerm>, integer: BigInt) -> Result<Self> {
        if terms.iter().any(|t| t.s == 0) {
            return Err(Error::Domain("isotropy order must be positive".into()));
        }
        Ok(Self { terms, integer })
    }

    /// Exact rational degree sum a_i/s_i + integer part.
    pub fn rational_degree(&self) -> BigRational {
        self.terms
            .iter()
            .map(|t| BigRational::new(t.a.clone(), BigInt::from(t.s)))
            .fold(BigRational::from_integer(self.integer.clone()), |acc, q| acc + q)
    }

    pub fn concat(mut self, other: FractionalDivisor) -> Self {
        self.terms.extend(other.terms);
        self.integer += other.integer;
        self
    }
}

/// Degree of the push-forward to the coarse curve: floor each point's coefficient.
pub fn pushforward_degree(d: &FractionalDivisor) -> BigInt {
    d.terms
        .iter()
        .map(|t| t.a.div_floor(&BigInt::from(t.s)))
        .fold(d.integer.clone(), |acc, x| acc + x)
}

/// The restricted divisor at External vertex `v`: one term per incident edge
/// end against r (the last one eliminated by balancing), one per leg against s_i.
pub fn external_vertex_divisor(t: &ModRType, v: &str) -> Result<FractionalDivisor> {
    let g = t.graph();
    let vi = g.vertex_index(v).ok_or_else(|| Error::Structure(format!("unknown vertex {v:?}")))?;
    if g.cone(vi) != Cone::External {
        return Err(Error::Domain(format!("vertex {v} is Internal")));
    }
    let r = t.r();
    // Each self-loop is seen from both of its ends.
    let mut seen: Vec<u64> = Vec::new();
    for e in g.incident(vi) {
        if g.is_self_loop(e) {
            seen.push(t.slopes()[e]);
            seen.push((r - t.slopes()[e]) % r);
        } else {
            seen.push(t.slope_from(e, vi));
        }
    }
    let gerby = t.contact().gerby_orders();
    let mut terms = Vec::new();
    let mut remainder = BigInt::from(g.vertices()[vi].degree);
    for l in g.legs_at(vi) {
        let idx = g.legs()[l].leg_index;
        terms.push(DivisorTerm { a: gerby[idx].clone(), s: t.contact().legs()[idx].s });
        remainder -= t.leg_coarse()[idx];
    }
    if seen.is_empty() {
        // No edges: balancing makes d_v - sum c_i divisible by r.
        let (q, rem) = remainder.div_rem(&BigInt::from(r));
        debug_assert!(rem == BigInt::from(0));
        return FractionalDivisor::new(terms, q);
    }
    for &m in &seen[..seen.len() - 1] {
        terms.push(DivisorTerm { a: BigInt::from(m), s: r });
        remainder -= m;
    }
    terms.push(DivisorTerm { a: remainder, s: r });
    FractionalDivisor::new(terms, BigInt::from(0))
}

/// Push-forward degree at an External vertex; equals
/// (d_v - sum of residues seen from v - sum c_i) / r.
pub fn external_vertex_pushdeg(t: &ModRType, v: &str) -> Result<BigInt> {
    Ok(pushforward_degree(&external_vertex_divisor(t, v)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "possibly inducible")]
    PossiblyInducible,
    #[serde(rename = "not inducible")]
    NotInducible,
}

impl Verdict {
    pub fn label(self) -> &'static str {
        match self {
            Verdict::PossiblyInducible => "possibly inducible",
            Verdict::NotInducible => "not inducible",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InducibilityReport {
    pub window_ok: bool,
    pub window_partial: bool,
    /// External vertex id -> push-forward degree.
    #[serde(serialize_with = "serialize_degrees")]
    pub pushdeg: BTreeMap<String, BigInt>,
    pub pushdeg_ok: BTreeMap<String, bool>,
    pub verdict: Verdict,
}

fn serialize_degrees<S: serde::Serializer>(
    m: &BTreeMap<String, BigInt>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    let mut map = s.serialize_map(Some(m.len()))?;
    for (k, v) in m {
        map.serialize_entry(k, &v.to_string())?;
    }
    map.end()
}

/// Degree window plus the push-forward degree check at every External vertex. A pass
/// means only that no obstruction was found.
pub fn inducibility_necessary(t: &ModRType, window: WindowCheck) -> Result<InducibilityReport> {
    let rep = validate_pretype(t.graph(), t.contact(), t.r(), window)?;
    let window_ok = !rep.violations.iter().any(|v| matches!(v, Violation::Window { .. }));
    let mut pushdeg = BTreeMap::new();
    let mut pushdeg_ok = BTreeMap::new();
    for v in t.graph().vertices().iter().filter(|v| v.cone == Cone::External) {
        let deg = external_vertex_pushdeg(t, &v.id)?;
        pushdeg_ok.insert(v.id.clone(), deg >= BigInt::from(0));
        pushdeg.insert(v.id.clone(), deg);
    }
    let verdict = if window_ok && pushdeg_ok.values().all(|&ok| ok) {
        Verdict::PossiblyInducible
    } else {
        Verdict::NotInducible
    };
    Ok(InducibilityReport { window_ok, window_partial: rep.partial, pushdeg, pushdeg_ok, verdict })
}

/// True when every External vertex has non-negative push-forward degree.
pub fn key_point_ok(t: &ModRType) -> Result<bool> {
    for v in t.graph().vertices().iter().filter(|v| v.cone == Cone::External) {
        if external_vertex_pushdeg(t, &v.id)? < BigInt::from(0) {
            return Ok(false);
        }
    }
    Ok(true)
}
