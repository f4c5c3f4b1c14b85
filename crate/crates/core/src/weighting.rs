//! Mod-r tropical types: balancing congruences, the spanning-tree solver,
//! enumeration of r-weightings, derived edge data and classification.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigUint;
use num_integer::gcd;
use serde::Serialize;

use crate::contact::{coarsen_contact, ContactData};
use crate::error::{Error, Result};
use crate::graph::{Cone, DecoratedGraph, SpanningTree};
use crate::registry::{Named, Registry};

/// A decorated graph with a coarse slope in Z/rZ on every edge, relative to
/// the edge's stored orientation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModRType {
    graph: Arc<DecoratedGraph>,
    contact: Arc<ContactData>,
    r: u64,
    slopes: Vec<u64>,
    coarse: Vec<i64>,
}

impl ModRType {
    /// `slopes[e]` is the residue for the e-th edge in id order. Fails unless
    /// every residue is below r and every vertex balances modulo r.
    pub fn new(
        graph: impl Into<Arc<DecoratedGraph>>,
        contact: impl Into<Arc<ContactData>>,
        r: u64,
        slopes: Vec<u64>,
    ) -> Result<Self> {
        let graph = graph.into();
        let contact = contact.into();
        if r == 0 {
            return Err(Error::Argument("r must be positive".into()));
        }
        if slopes.len() != graph.edges().len() {
            return Err(Error::Argument(format!(
                "{} slopes given for {} edges",
                slopes.len(),
                graph.edges().len()
            )));
        }
        if let Some(e) = slopes.iter().position(|&m| m >= r) {
            return Err(Error::Argument(format!(
                "slope {} on edge {} is not a residue mod {r}",
                slopes[e],
                graph.edges()[e].id
            )));
        }
        let coarse = leg_orders(&graph, &contact, r)?;
        for v in 0..graph.vertices().len() {
            if residual(&graph, &coarse, &slopes, v).rem_euclid(i128::from(r)) != 0 {
                return Err(Error::Unbalanced { vertex: graph.vertices()[v].id.clone(), modulus: r });
            }
        }
        Ok(Self { graph, contact, r, slopes, coarse })
    }

    /// Builds from an edge-id keyed map; every edge must be assigned.
    pub fn from_map(
        graph: impl Into<Arc<DecoratedGraph>>,
        contact: impl Into<Arc<ContactData>>,
        r: u64,
        weighting: &BTreeMap<String, u64>,
    ) -> Result<Self> {
        let graph = graph.into();
        let slopes = slopes_from_map(&graph, weighting)?;
        Self::new(graph, contact, r, slopes)
    }

    pub fn graph(&self) -> &DecoratedGraph {
        &self.graph
    }

    pub fn graph_arc(&self) -> &Arc<DecoratedGraph> {
        &self.graph
    }

    pub fn contact(&self) -> &ContactData {
        &self.contact
    }

    pub fn contact_arc(&self) -> &Arc<ContactData> {
        &self.contact
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn slopes(&self) -> &[u64] {
        &self.slopes
    }

    /// Coarse contact order c_i at this type's r, per contact index.
    pub fn leg_coarse(&self) -> &[i64] {
        &self.coarse
    }

    /// Residue of the slope leaving `v` along `e` (the reverse orientation negates).
    pub fn slope_from(&self, e: usize, v: usize) -> u64 {
        let (s, _) = self.graph.ends(e);
        if s == v {
            self.slopes[e]
        } else {
            (self.r - self.slopes[e]) % self.r
        }
    }

    /// Residue in the External -> Internal orientation for bipartite edges,
    /// the stored one otherwise.
    pub fn canonical_slope(&self, e: usize) -> u64 {
        if self.graph.stored_is_canonical(e) {
            self.slopes[e]
        } else {
            (self.r - self.slopes[e]) % self.r
        }
    }

    pub fn weighting_map(&self) -> BTreeMap<String, u64> {
        self.graph.edges().iter().map(|e| e.id.clone()).zip(self.slopes.iter().copied()).collect()
    }

    pub fn edge_data(&self) -> Vec<EdgeDerived> {
        self.slopes.iter().map(|&m| EdgeDerived::new(self.r, m)).collect()
    }

    pub fn isotropy(&self) -> Vec<u64> {
        self.edge_data().iter().map(|d| d.t).collect()
    }
}

pub(crate) fn slopes_from_map(g: &DecoratedGraph, weighting: &BTreeMap<String, u64>) -> Result<Vec<u64>> {
    if let Some(k) = weighting.keys().find(|k| g.edge_index(k).is_none()) {
        return Err(Error::Argument(format!("weighting names unknown edge {k:?}")));
    }
    g.edges()
        .iter()
        .map(|e| {
            weighting
                .get(&e.id)
                .copied()
                .ok_or_else(|| Error::Argument(format!("edge {:?} has no slope", e.id)))
        })
        .collect()
}

/// Coarse order of every leg at its contact index, resolved against r.
fn leg_orders(g: &DecoratedGraph, contact: &ContactData, r: u64) -> Result<Vec<i64>> {
    let coarse = contact.coarse_orders(r)?;
    for l in g.legs() {
        if l.leg_index >= coarse.len() {
            return Err(Error::Structure(format!("leg {} refers to missing contact index {}", l.id, l.leg_index)));
        }
    }
    Ok(coarse)
}

/// d_v - (sum out) + (sum in) - (sum of legs' c_i) over the integers, using the
/// given slope representatives. Self-loops contribute nothing.
pub(crate) fn residual<S: Copy + Into<i128>>(g: &DecoratedGraph, coarse: &[i64], slopes: &[S], v: usize) -> i128 {
    let mut acc = i128::from(g.vertices()[v].degree);
    for e in g.incident(v) {
        let (s, t) = g.ends(e);
        let m: i128 = slopes[e].into();
        if s == v && t != v {
            acc -= m;
        } else if t == v && s != v {
            acc += m;
        }
    }
    for l in g.legs_at(v) {
        acc -= i128::from(coarse[g.legs()[l].leg_index]);
    }
    acc
}

/// Isotropy order and gerby slope of one edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EdgeDerived {
    /// t_e = r / gcd(r, m), with gcd(r, 0) = r.
    pub t: u64,
    /// The residue g in Z/tZ with (r/t) g = m mod r.
    pub gerby_slope: u64,
}

impl EdgeDerived {
    pub fn new(r: u64, m: u64) -> Self {
        let m = m % r;
        let g = gcd(r, m);
        Self { t: r / g, gerby_slope: m / g }
    }
}

pub fn derive_edge_data(t: &ModRType) -> BTreeMap<String, EdgeDerived> {
    t.graph.edges().iter().map(|e| e.id.clone()).zip(t.edge_data()).collect()
}

/// Outcome of the spanning-tree solver.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solution {
    Solved(ModRType),
    /// The redundant root equation failed: the input degrees and contact
    /// orders are globally inconsistent.
    Infeasible,
}

/// Solves for the tree-edge slopes given a slope on every non-tree edge.
pub fn solve_weighting(
    g: impl Into<Arc<DecoratedGraph>>,
    contact: impl Into<Arc<ContactData>>,
    r: u64,
    free: &BTreeMap<String, u64>,
) -> Result<Solution> {
    let g = g.into();
    let contact = contact.into();
    if r == 0 {
        return Err(Error::Argument("r must be positive".into()));
    }
    let tree = SpanningTree::build(&g)?;
    let coarse = leg_orders(&g, &contact, r)?;
    let mut values = Vec::with_capacity(tree.free_edges.len());
    for &e in &tree.free_edges {
        let id = &g.edges()[e].id;
        let m = free
            .get(id)
            .ok_or_else(|| Error::Argument(format!("no value for non-tree edge {id:?}")))?;
        values.push(m % r);
    }
    if let Some(k) = free.keys().find(|k| g.edge_index(k).map_or(true, |e| tree.in_tree[e])) {
        return Err(Error::Argument(format!("{k:?} is not a non-tree edge")));
    }
    Ok(match solve_on_tree(&g, &tree, &coarse, r, &values) {
        Some(slopes) => Solution::Solved(ModRType { graph: g, contact, r, slopes, coarse }),
        None => Solution::Infeasible,
    })
}

/// Leaf-to-root elimination along the tree. `free_values` follows `tree.free_edges`.
pub(crate) fn solve_on_tree(
    g: &DecoratedGraph,
    tree: &SpanningTree,
    coarse: &[i64],
    r: u64,
    free_values: &[u64],
) -> Option<Vec<u64>> {
    let ri = i128::from(r);
    let mut slopes = vec![0u64; g.edges().len()];
    for (&e, &m) in tree.free_edges.iter().zip(free_values) {
        slopes[e] = m;
    }
    // Tree slopes are still zero, so this is the target each vertex's tree edges must meet.
    let need: Vec<i128> = (0..g.vertices().len()).map(|v| residual(g, coarse, &slopes, v)).collect();
    // acc[v]: signed contribution (out - in) of the tree edges already solved at v.
    let mut acc = vec![0i128; g.vertices().len()];
    for &v in tree.order.iter().skip(1).rev() {
        let pe = tree.parent_edge[v].expect("non-root vertex has a parent edge");
        let p = tree.parent[v].expect("non-root vertex has a parent");
        let want = (need[v] - acc[v]).rem_euclid(ri);
        let outgoing = g.ends(pe).0 == v;
        let m = if outgoing { want } else { (-want).rem_euclid(ri) };
        slopes[pe] = m as u64;
        acc[p] += if outgoing { -m } else { m };
    }
    let root = tree.order[0];
    ((need[root] - acc[root]).rem_euclid(ri) == 0).then_some(slopes)
}

/// Number of r-weightings, always r^{b1} for consistent input.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WeightingCount {
    pub base: u64,
    pub exp: u32,
}

impl WeightingCount {
    pub fn value(&self) -> BigUint {
        BigUint::from(self.base).pow(self.exp)
    }

    /// The count when it is at most `cap`.
    pub fn within(&self, cap: u64) -> Option<u64> {
        let v = self.value();
        (v <= BigUint::from(cap)).then(|| u64::try_from(v).unwrap())
    }
}

#[derive(Debug, Clone)]
pub struct Enumeration {
    pub count: WeightingCount,
    pub weightings: Vec<ModRType>,
}

/// All r-weightings, ordered lexicographically by the non-tree slope vector.
pub fn enumerate_weightings(
    g: impl Into<Arc<DecoratedGraph>>,
    contact: impl Into<Arc<ContactData>>,
    r: u64,
    cap: u64,
) -> Result<Enumeration> {
    let g = g.into();
    let contact = contact.into();
    let count = count_weightings(&g, r)?;
    let weightings = SpanningTreeEnumerator.enumerate(&g, &contact, r, cap)?;
    Ok(Enumeration { count, weightings })
}

pub fn count_weightings(g: &DecoratedGraph, r: u64) -> Result<WeightingCount> {
    let tree = SpanningTree::build(g)?;
    Ok(WeightingCount { base: r, exp: tree.free_edges.len() as u32 })
}

/// A way to produce the full set of r-weightings of a pre-type.
pub trait WeightingEnumerator: Named + Send + Sync {
    fn enumerate(
        &self,
        g: &Arc<DecoratedGraph>,
        contact: &Arc<ContactData>,
        r: u64,
        cap: u64,
    ) -> Result<Vec<ModRType>>;
}

/// Free choice on non-tree edges, tree edges solved.
pub struct SpanningTreeEnumerator;

/// Scans all of (Z/rZ)^|E| and keeps the balanced assignments.
pub struct BruteForceEnumerator;

impl Named for SpanningTreeEnumerator {
    fn name(&self) -> &'static str {
        "spanning-tree"
    }
}

impl Named for BruteForceEnumerator {
    fn name(&self) -> &'static str {
        "brute-force"
    }
}

fn budget(r: u64, exp: usize, cap: u64) -> Result<()> {
    let count = WeightingCount { base: r, exp: exp as u32 };
    match count.within(cap) {
        Some(_) => Ok(()),
        None => Err(Error::Budget { count: count.value().to_string(), cap }),
    }
}

/// Advances `digits` as a base-r odometer, last digit fastest. Returns false on wrap.
fn odometer(digits: &mut [u64], r: u64) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < r {
            return true;
        }
        *d = 0;
    }
    false
}

impl WeightingEnumerator for SpanningTreeEnumerator {
    fn enumerate(
        &self,
        g: &Arc<DecoratedGraph>,
        contact: &Arc<ContactData>,
        r: u64,
        cap: u64,
    ) -> Result<Vec<ModRType>> {
        if r == 0 {
            return Err(Error::Argument("r must be positive".into()));
        }
        let tree = SpanningTree::build(g)?;
        budget(r, tree.free_edges.len(), cap)?;
        let coarse = leg_orders(g, contact, r)?;
        let mut free = vec![0u64; tree.free_edges.len()];
        let mut out = Vec::new();
        loop {
            match solve_on_tree(g, &tree, &coarse, r, &free) {
                Some(slopes) => out.push(ModRType {
                    graph: g.clone(),
                    contact: contact.clone(),
                    r,
                    slopes,
                    coarse: coarse.clone(),
                }),
                // The root equation does not involve the free values.
                None => return Err(Error::Domain("degrees and contact orders are inconsistent".into())),
            }
            if !odometer(&mut free, r) {
                break;
            }
        }
        Ok(out)
    }
}

impl WeightingEnumerator for BruteForceEnumerator {
    fn enumerate(
        &self,
        g: &Arc<DecoratedGraph>,
        contact: &Arc<ContactData>,
        r: u64,
        cap: u64,
    ) -> Result<Vec<ModRType>> {
        if r == 0 {
            return Err(Error::Argument("r must be positive".into()));
        }
        budget(r, g.edges().len(), cap)?;
        let coarse = leg_orders(g, contact, r)?;
        let ri = i128::from(r);
        let mut slopes = vec![0u64; g.edges().len()];
        let mut out = Vec::new();
        loop {
            if (0..g.vertices().len()).all(|v| residual(g, &coarse, &slopes, v).rem_euclid(ri) == 0) {
                out.push(ModRType {
                    graph: g.clone(),
                    contact: contact.clone(),
                    r,
                    slopes: slopes.clone(),
                    coarse: coarse.clone(),
                });
            }
            if !odometer(&mut slopes, r) {
                break;
            }
        }
        Ok(out)
    }
}

pub fn enumerators() -> Registry<dyn WeightingEnumerator> {
    let mut reg: Registry<dyn WeightingEnumerator> = Registry::new();
    reg.register(Box::new(SpanningTreeEnumerator));
    reg.register(Box::new(BruteForceEnumerator));
    reg
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub essential: bool,
    pub trivial: bool,
    pub reasons: Vec<String>,
}

/// Essential: every edge joins V0 to V+ and every internal vertex has
/// positive genus. Trivial: one External vertex and no edges.
pub fn classify_graph(g: &DecoratedGraph) -> Classification {
    let mut reasons = Vec::new();
    for (e, edge) in g.edges().iter().enumerate() {
        if !g.is_bipartite_edge(e) {
            let kind = match g.cone(g.ends(e).0) {
                Cone::External => "external",
                Cone::Internal => "internal",
            };
            reasons.push(format!("edge {} is purely {kind}", edge.id));
        }
    }
    for v in g.vertices() {
        if v.cone == Cone::Internal && v.genus == 0 {
            reasons.push(format!("internal vertex {} has genus 0", v.id));
        }
    }
    let trivial = g.vertices().len() == 1 && g.edges().is_empty() && g.vertices()[0].cone == Cone::External;
    Classification { essential: reasons.is_empty(), trivial, reasons }
}

pub fn classify_type(t: &ModRType) -> Classification {
    classify_graph(&t.graph)
}

/// Image of a mod-(lambda r) type under the comparison map: coarse slopes
/// reduced mod r, contact coarsened by lambda.
pub fn weighting_reduce(t: &ModRType, lambda: u64) -> Result<ModRType> {
    if lambda == 0 || t.r % lambda != 0 {
        return Err(Error::Domain(format!("lambda = {lambda} does not divide r = {}", t.r)));
    }
    let r = t.r / lambda;
    let contact = if lambda == 1 { t.contact.clone() } else { Arc::new(coarsen_contact(&t.contact, lambda)?) };
    ModRType::new(t.graph.clone(), contact, r, t.slopes.iter().map(|m| m % r).collect())
}
