//! Cross-parameter structure: canonical lifts, Z-hat types, torsion exponents,
//! comparison-map degrees, k_tau, regime predicates, sweeps and dimensions.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};
use serde::Serialize;

use crate::autgroup::sh_order;
use crate::contact::{coarsen_contact, scale_contact, ContactData, LegContact};
use crate::error::{Error, Result};
use crate::graph::{compute_invariants, Cone, DecoratedGraph};
use crate::pushfwd::key_point_ok;
use crate::weighting::{classify_graph, residual, weighting_reduce, BruteForceEnumerator, ModRType, WeightingEnumerator};

/// A type whose slopes are exact integers (constant profinite families).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZhatType {
    graph: Arc<DecoratedGraph>,
    contact: Arc<ContactData>,
    /// Level at which `contact`'s ages are expressed.
    r0: u64,
    islope: Vec<i64>,
    coarse: Vec<i64>,
}

impl ZhatType {
    /// Requires exact balancing at every vertex over Z.
    pub fn new(
        graph: impl Into<Arc<DecoratedGraph>>,
        contact: impl Into<Arc<ContactData>>,
        r0: u64,
        islope: Vec<i64>,
    ) -> Result<Self> {
        let graph = graph.into();
        let contact = contact.into();
        if r0 == 0 {
            return Err(Error::Argument("r must be positive".into()));
        }
        if islope.len() != graph.edges().len() {
            return Err(Error::Argument(format!(
                "{} integer slopes given for {} edges",
                islope.len(),
                graph.edges().len()
            )));
        }
        let coarse = contact.coarse_orders(r0)?;
        if let Some(l) = graph.legs().iter().find(|l| l.leg_index >= coarse.len()) {
            return Err(Error::Structure(format!("leg {} refers to missing contact index {}", l.id, l.leg_index)));
        }
        for v in 0..graph.vertices().len() {
            if residual(&graph, &coarse, &islope, v) != 0 {
                return Err(Error::Domain(format!(
                    "integer balancing fails at vertex {}",
                    graph.vertices()[v].id
                )));
            }
        }
        Ok(Self { graph, contact, r0, islope, coarse })
    }

    pub fn from_map(
        graph: impl Into<Arc<DecoratedGraph>>,
        contact: impl Into<Arc<ContactData>>,
        r0: u64,
        islope: &BTreeMap<String, i64>,
    ) -> Result<Self> {
        let graph = graph.into();
        if let Some(k) = islope.keys().find(|k| graph.edge_index(k).is_none()) {
            return Err(Error::Argument(format!("islope names unknown edge {k:?}")));
        }
        let slopes = graph
            .edges()
            .iter()
            .map(|e| islope.get(&e.id).copied().ok_or_else(|| Error::Argument(format!("edge {:?} has no slope", e.id))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(graph, contact, r0, slopes)
    }

    pub fn graph(&self) -> &DecoratedGraph {
        &self.graph
    }

    pub fn contact(&self) -> &ContactData {
        &self.contact
    }

    pub fn r0(&self) -> u64 {
        self.r0
    }

    pub fn islope(&self) -> &[i64] {
        &self.islope
    }

    pub fn islope_map(&self) -> BTreeMap<String, i64> {
        self.graph.edges().iter().map(|e| e.id.clone()).zip(self.islope.iter().copied()).collect()
    }

    /// Contact data re-expressed at level `r`.
    pub fn contact_at(&self, r: u64) -> Result<ContactData> {
        if r == 0 {
            return Err(Error::Argument("r must be positive".into()));
        }
        if r % self.r0 == 0 {
            return scale_contact(&self.contact, self.r0, r / self.r0);
        }
        if self.r0 % r == 0 {
            if let Ok(c) = coarsen_contact(&self.contact, self.r0 / r) {
                return Ok(c);
            }
        }
        let legs = self
            .coarse
            .iter()
            .map(|&c| {
                let c = u64::try_from(c).map_err(|_| Error::Domain("negative contact order".into()))?;
                let g = num_integer::gcd(r, c);
                Ok(LegContact { s: r / g, a: BigRational::new(c.into(), r.into()) })
            })
            .collect::<Result<Vec<_>>>()?;
        ContactData::new(legs, self.contact.degree(), self.contact.genus())
    }

    /// The type at lambda r whose contact is `contact_at(r)` scaled by lambda,
    /// so that reducing it by lambda lands exactly on `reduce(r)`.
    pub fn reduce_scaled(&self, r: u64, lambda: u64) -> Result<ModRType> {
        let big = r.checked_mul(lambda).ok_or_else(|| Error::Argument("lambda r overflows".into()))?;
        let contact = scale_contact(&self.contact_at(r)?, r, lambda)?;
        let bi = i64::try_from(big).map_err(|_| Error::Argument("r too large".into()))?;
        let slopes = self.islope.iter().map(|&m| m.rem_euclid(bi) as u64).collect();
        ModRType::new(self.graph.clone(), contact, big, slopes)
    }

    /// The mod-r type [tau_r]: residues of the integer slopes.
    pub fn reduce(&self, r: u64) -> Result<ModRType> {
        let contact = self.contact_at(r)?;
        let ri = i64::try_from(r).map_err(|_| Error::Argument("r too large".into()))?;
        let slopes = self.islope.iter().map(|&m| m.rem_euclid(ri) as u64).collect();
        ModRType::new(self.graph.clone(), contact, r, slopes)
    }
}

/// Which regime hypothesis failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RegimeBullet {
    Large,
    Divisible,
    NodalNontrivial,
}

impl fmt::Display for RegimeBullet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RegimeBullet::Large => "r is not sufficiently large",
            RegimeBullet::Divisible => "some edge slope does not divide r",
            RegimeBullet::NodalNontrivial => "some nodal contact is trivial",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RegimeReport {
    pub large: bool,
    pub divisible: bool,
    pub nodal_nontrivial: bool,
    /// max over External v and edges e at v of d_v - m_e + sum of c_i at v.
    pub size_bound: Option<i64>,
}

impl RegimeReport {
    pub fn holds(&self) -> bool {
        self.large && self.divisible && self.nodal_nontrivial
    }

    pub fn first_failure(&self) -> Option<RegimeBullet> {
        if !self.large {
            Some(RegimeBullet::Large)
        } else if !self.divisible {
            Some(RegimeBullet::Divisible)
        } else if !self.nodal_nontrivial {
            Some(RegimeBullet::NodalNontrivial)
        } else {
            None
        }
    }

    pub fn require(&self) -> Result<()> {
        match self.first_failure() {
            Some(b) => Err(Error::Regime(b)),
            None => Ok(()),
        }
    }
}

/// Size bound under which lifts are unique, slopes read in canonical orientation.
pub fn size_bound(t: &ModRType) -> Option<i64> {
    let g = t.graph();
    let mut best: Option<i64> = None;
    for v in (0..g.vertices().len()).filter(|&v| g.cone(v) == Cone::External) {
        let legs: i64 = g.legs_at(v).map(|l| t.leg_coarse()[g.legs()[l].leg_index]).sum();
        for e in g.incident(v) {
            let value = g.vertices()[v].degree - t.canonical_slope(e) as i64 + legs;
            best = Some(best.map_or(value, |b| b.max(value)));
        }
    }
    best
}

pub fn regime_check(t: &ModRType) -> RegimeReport {
    let r = t.r();
    let bound = size_bound(t);
    let canonical: Vec<u64> = (0..t.slopes().len()).map(|e| t.canonical_slope(e)).collect();
    RegimeReport {
        large: bound.map_or(true, |b| i128::from(r) > i128::from(b)),
        divisible: canonical.iter().all(|&m| m != 0 && r % m == 0),
        nodal_nontrivial: canonical.iter().all(|&m| m != 0),
        size_bound: bound,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftReport {
    /// Whether r exceeds the size bound; the lift is attempted regardless.
    pub size_bound_ok: bool,
    /// The mod-(lambda r) type, or None when balancing fails there.
    pub lifted: Option<ModRType>,
}

/// Integer slopes from the canonical residues in {0, ..., r-1}, in stored orientation.
pub fn canonical_integer_slopes(t: &ModRType) -> Vec<i64> {
    (0..t.slopes().len())
        .map(|e| {
            let m = t.canonical_slope(e) as i64;
            if t.graph().stored_is_canonical(e) {
                m
            } else {
                -m
            }
        })
        .collect()
}

pub fn canonical_lift(t: &ModRType, lambda: u64) -> Result<LiftReport> {
    if lambda == 0 {
        return Err(Error::Argument("lambda must be positive".into()));
    }
    let r = t.r();
    let size_bound_ok = size_bound(t).map_or(true, |b| i128::from(r) > i128::from(b));
    let big = r.checked_mul(lambda).ok_or_else(|| Error::Argument("lambda r overflows".into()))?;
    let contact = scale_contact(t.contact(), r, lambda)?;
    let bi = big as i64;
    let slopes = canonical_integer_slopes(t).iter().map(|&m| m.rem_euclid(bi) as u64).collect();
    let lifted = match ModRType::new(t.graph_arc().clone(), contact, big, slopes) {
        Ok(l) => Some(l),
        Err(Error::Unbalanced { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(LiftReport { size_bound_ok, lifted })
}

/// Packages the canonical integer slopes as a Z-hat type when the lift
/// succeeds at every lambda given and balancing holds over Z.
pub fn canonical_zhat(t: &ModRType, lambdas: &[u64]) -> Result<Option<ZhatType>> {
    for &l in lambdas {
        if canonical_lift(t, l)?.lifted.is_none() {
            return Ok(None);
        }
    }
    match ZhatType::new(t.graph_arc().clone(), t.contact_arc().clone(), t.r(), canonical_integer_slopes(t)) {
        Ok(z) => Ok(Some(z)),
        Err(Error::Domain(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LiftOracle {
    pub size_bound_ok: bool,
    /// Mod-(lambda r) weightings reducing to the input with non-negative push-forward degrees.
    pub passing: Vec<Vec<u64>>,
    pub canonical: Option<Vec<u64>>,
    /// At most one passes and it is the canonical lift (vacuous without the size bound).
    pub holds: bool,
}

/// Brute force over every mod-(lambda r) weighting that reduces to `t`.
pub fn lift_uniqueness_oracle(t: &ModRType, lambda: u64, cap: u64) -> Result<LiftOracle> {
    let lift = canonical_lift(t, lambda)?;
    let big_r = t.r() * lambda;
    let contact = Arc::new(scale_contact(t.contact(), t.r(), lambda)?);
    let mut passing = Vec::new();
    for big in BruteForceEnumerator.enumerate(t.graph_arc(), &contact, big_r, cap)? {
        if weighting_reduce(&big, lambda)?.slopes() == t.slopes() && key_point_ok(&big)? {
            passing.push(big.slopes().to_vec());
        }
    }
    let canonical = lift.lifted.map(|l| l.slopes().to_vec());
    let holds = !lift.size_bound_ok || (passing.len() <= 1 && passing.first().map_or(true, |p| Some(p) == canonical.as_ref()));
    Ok(LiftOracle { size_bound_ok: lift.size_bound_ok, passing, canonical, holds })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Age {
    SmallAge,
    LargeAge,
    Zero,
}

pub fn age_classify(z: &ZhatType) -> BTreeMap<String, Age> {
    z.graph
        .edges()
        .iter()
        .zip(&z.islope)
        .map(|(e, &m)| {
            let age = match m.signum() {
                1 => Age::SmallAge,
                -1 => Age::LargeAge,
                _ => Age::Zero,
            };
            (e.id.clone(), age)
        })
        .collect()
}

/// |E^b| - b0(Gamma dagger) + 1 + b1(Gamma+) + 2 sum_{V+} g_v.
pub fn jac_torsion_exponent(g: &DecoratedGraph) -> Result<i64> {
    let inv = compute_invariants(g)?;
    let internal_genus: i64 = g.vertices().iter().filter(|v| v.cone == Cone::Internal).map(|v| i64::from(v.genus)).sum();
    Ok(inv.bipartite_edges.len() as i64 - inv.b0_gamma_dagger as i64 + 1 + inv.b1_gammaplus as i64 + 2 * internal_genus)
}

/// 1 iff every vertex is Internal.
pub fn epsilon(g: &DecoratedGraph) -> i64 {
    i64::from(g.vertices().iter().all(|v| v.cone == Cone::Internal))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DegreeExponent {
    /// jac - epsilon + (b0(Gamma0) - 1 when V0 is nonempty).
    pub corrected: i64,
    /// jac - epsilon, without the section-scaling factor.
    pub raw: i64,
}

pub fn degree_exponent(g: &DecoratedGraph) -> Result<DegreeExponent> {
    let inv = compute_invariants(g)?;
    let raw = jac_torsion_exponent(g)? - epsilon(g);
    let scaling = if inv.is_v0_empty() { 0 } else { inv.b0_gamma0 as i64 - 1 };
    Ok(DegreeExponent { corrected: raw + scaling, raw })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct KTau {
    pub k: i64,
    pub genus: u64,
    /// max(2g - 1, 0).
    pub bound: i64,
    /// One Internal vertex, no cycles, genus-0 External vertices.
    pub star_shape: bool,
    pub top_degree: bool,
}

/// b1 + 2 sum_{V+} g_v - |V+| for an essential graph.
pub fn k_tau(g: &DecoratedGraph) -> Result<KTau> {
    let class = classify_graph(g);
    if !class.essential {
        return Err(Error::Domain(format!("type is not essential: {}", class.reasons.join("; "))));
    }
    let b1 = g.first_betti() as i64;
    let internal: Vec<_> = g.vertices().iter().filter(|v| v.cone == Cone::Internal).collect();
    let internal_genus: i64 = internal.iter().map(|v| i64::from(v.genus)).sum();
    let k = b1 + 2 * internal_genus - internal.len() as i64;
    let genus = g.genus_labels_total() + b1 as u64;
    let bound = (2 * genus as i64 - 1).max(0);
    if k < 0 || k > bound {
        return Err(Error::Domain(format!("k = {k} outside [0, {bound}]")));
    }
    let star_shape = internal.len() == 1
        && b1 == 0
        && g.vertices().iter().all(|v| v.cone == Cone::Internal || v.genus == 0);
    Ok(KTau { k, genus, bound, star_shape, top_degree: k == 2 * genus as i64 - 1 })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeMonomial {
    /// |Sh(reduced)| / |Sh(T_big)|.
    #[serde(serialize_with = "crate::rational::serialize")]
    pub coefficient: BigRational,
    pub exponent: i64,
    pub raw_exponent: i64,
    /// coefficient * lambda^exponent.
    #[serde(serialize_with = "crate::rational::serialize")]
    pub total: BigRational,
    /// exponent - (|E| - b1) when the Sh ratio equals lambda^-(|E| - b1) here.
    pub lambda_degree: Option<i64>,
    pub k_tau: Option<i64>,
    pub regime_certified: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

fn lambda_pow(lambda: u64, k: i64) -> BigRational {
    let base = BigRational::from_integer(BigInt::from(lambda));
    if k >= 0 {
        Pow::pow(base, k as u64)
    } else {
        Pow::pow(base.recip(), k.unsigned_abs())
    }
}

/// Degree of the comparison map on the stratum of `t_big` (at lambda r).
pub fn comparison_degree(t_big: &ModRType, lambda: u64) -> Result<DegreeMonomial> {
    let small = weighting_reduce(t_big, lambda)?;
    let g = t_big.graph();
    let coefficient = BigRational::new(sh_order(&small)?.into(), sh_order(t_big)?.into());
    let exp = degree_exponent(g)?;
    let total = &coefficient * lambda_pow(lambda, exp.corrected);
    let edge_excess = g.edges().len() as i64 - g.first_betti() as i64;
    let lambda_degree = (&coefficient * lambda_pow(lambda, edge_excess)).is_one().then_some(exp.corrected - edge_excess);
    let mut warnings = Vec::new();
    let k = match k_tau(g) {
        Ok(k) => Some(k.k),
        Err(_) => {
            warnings.push("type is not essential; degree not certified".to_string());
            None
        }
    };
    let regime = regime_check(&small);
    if let Some(b) = regime.first_failure() {
        warnings.push(format!("regime not certified: {b}"));
    }
    let regime_certified = k.is_some() && regime.holds() && lambda_degree.is_some() && lambda_degree == k;
    if k.is_some() && regime.holds() && !regime_certified {
        warnings.push(format!("lambda-degree {lambda_degree:?} differs from k_tau {k:?}"));
    }
    Ok(DegreeMonomial {
        coefficient,
        exponent: exp.corrected,
        raw_exponent: exp.raw,
        total,
        lambda_degree,
        k_tau: k,
        regime_certified,
        warnings,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepSample {
    pub lambda: u64,
    #[serde(serialize_with = "crate::rational::serialize")]
    pub total: BigRational,
    #[serde(serialize_with = "crate::rational::serialize")]
    pub sh_ratio: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub samples: Vec<SweepSample>,
    #[serde(rename = "C", serialize_with = "serialize_opt_rational")]
    pub c: Option<BigRational>,
    pub k: Option<i64>,
    pub k_tau: Option<i64>,
    /// Every sample equals C lambda^k.
    pub monomial: bool,
    pub regime: RegimeReport,
    pub certified: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

fn serialize_opt_rational<S: serde::Serializer>(q: &Option<BigRational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match q {
        Some(q) => crate::rational::serialize(q, s),
        None => s.serialize_none(),
    }
}

/// Fits D(lambda) = C lambda^k with integer |k| <= 64 from two samples and
/// checks the fit on all of them.
pub fn fit_monomial(samples: &[(u64, BigRational)]) -> Option<(BigRational, i64)> {
    let &(a, ref da) = samples.first()?;
    let &(b, ref db) = samples.iter().find(|(l, _)| *l != a)?;
    if da.is_zero() || db.is_zero() {
        return None;
    }
    let ratio = db / da;
    let base = BigRational::new(BigInt::from(b), BigInt::from(a));
    let k = (-64i64..=64).find(|&k| {
        let p = if k >= 0 { Pow::pow(base.clone(), k as u64) } else { Pow::pow(base.recip(), k.unsigned_abs()) };
        p == ratio
    })?;
    let c = da / lambda_pow(a, k);
    samples.iter().all(|(l, d)| &c * lambda_pow(*l, k) == *d).then_some((c, k))
}

pub fn monomiality_sweep(z: &ZhatType, r: u64, lambdas: &[u64]) -> Result<SweepReport> {
    if lambdas.iter().any(|&l| l == 0) {
        return Err(Error::Argument("lambda must be positive".into()));
    }
    let distinct: std::collections::BTreeSet<u64> = lambdas.iter().copied().collect();
    if distinct.len() < 2 {
        return Err(Error::Argument("a sweep needs at least two distinct lambda values".into()));
    }
    let base = z.reduce(r)?;
    let regime = regime_check(&base);
    let mut warnings = Vec::new();
    if let Some(b) = regime.first_failure() {
        warnings.push(format!("regime not certified: {b}"));
    }
    let k = match k_tau(z.graph()) {
        Ok(k) => Some(k.k),
        Err(e) => {
            warnings.push(e.to_string());
            None
        }
    };
    let mut samples = Vec::new();
    for &l in &distinct {
        let big = z.reduce_scaled(r, l)?;
        if weighting_reduce(&big, l)?.slopes() != base.slopes() {
            return Err(Error::Domain(format!("reductions at {} and {r} are inconsistent", big.r())));
        }
        let deg = comparison_degree(&big, l)?;
        samples.push(SweepSample { lambda: l, total: deg.total, sh_ratio: deg.coefficient });
    }
    let points: Vec<(u64, BigRational)> = samples.iter().map(|s| (s.lambda, s.total.clone())).collect();
    let fit = fit_monomial(&points);
    let monomial = fit.is_some();
    if !monomial {
        warnings.push("samples do not fit a single monomial".to_string());
    }
    let (c, fitted_k) = match fit {
        Some((c, k)) => (Some(c), Some(k)),
        None => (None, None),
    };
    let certified = monomial && regime.holds() && k.is_some() && fitted_k == k;
    if monomial && regime.holds() && k.is_some() && !certified {
        warnings.push(format!("fitted degree {fitted_k:?} differs from k_tau {k:?}"));
    }
    Ok(SweepReport { samples, c, k: fitted_k, k_tau: k, monomial, regime, certified, warnings })
}

/// 3g-3+n + b0(Gamma0) - |E| + |E^b| - b0(Gamma dagger) + b1(Gamma+) + sum_{V+} g_v.
pub fn dim_stratum(t: &ModRType) -> Result<i64> {
    dim_of(t.graph(), t.contact())
}

pub fn dim_of(g: &DecoratedGraph, contact: &ContactData) -> Result<i64> {
    let inv = compute_invariants(g)?;
    let genus = i64::from(contact.genus());
    let internal_genus: i64 = g.vertices().iter().filter(|v| v.cone == Cone::Internal).map(|v| i64::from(v.genus)).sum();
    Ok(3 * genus - 3 + contact.n() as i64 + inv.b0_gamma0 as i64 - g.edges().len() as i64
        + inv.bipartite_edges.len() as i64
        - inv.b0_gamma_dagger as i64
        + inv.b1_gammaplus as i64
        + internal_genus)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Trichotomy {
    pub g: u32,
    pub n: usize,
    /// 3g - 3 + n.
    pub main: i64,
    pub dims: Vec<i64>,
    pub max_dim: i64,
    pub equidimensional: bool,
    /// max_dim - main.
    pub excess: i64,
}

pub fn equidimensionality_report(g: u32, n: usize, types: &[ModRType]) -> Result<Trichotomy> {
    let pairs: Vec<(&DecoratedGraph, &ContactData)> = types.iter().map(|t| (t.graph(), t.contact())).collect();
    equidimensionality_of(g, n, &pairs)
}

/// Same report from bare graphs; the dimension does not depend on the weighting.
pub fn equidimensionality_of(g: u32, n: usize, types: &[(&DecoratedGraph, &ContactData)]) -> Result<Trichotomy> {
    let mut dims = Vec::with_capacity(types.len());
    for &(graph, contact) in types {
        if contact.genus() != g || contact.n() != n {
            return Err(Error::Argument(format!(
                "type has (g, n) = ({}, {}), expected ({g}, {n})",
                contact.genus(),
                contact.n()
            )));
        }
        let class = classify_graph(graph);
        if !class.essential {
            return Err(Error::Domain(format!("type is not essential: {}", class.reasons.join("; "))));
        }
        dims.push(dim_of(graph, contact)?);
    }
    let main = 3 * i64::from(g) - 3 + n as i64;
    let max_dim = dims.iter().copied().max().unwrap_or(main);
    Ok(Trichotomy {
        g,
        n,
        main,
        equidimensional: dims.iter().all(|&d| d == max_dim),
        max_dim,
        excess: max_dim - main,
        dims,
    })
}
