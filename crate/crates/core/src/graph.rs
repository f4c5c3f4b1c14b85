//! Decorated multigraphs (pre-tropical types) and their graph invariants.
//!
//! Vertices, edges and legs are kept sorted by id, so every derived object
//! (spanning tree, cycle basis, enumeration order) depends only on the ids
//! and not on the order in which the input listed them.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::contact::ContactData;
use crate::error::{Error, Result};
use crate::validation::{ValidationReport, Violation};

/// Largest vertex count for which the exhaustive subset-window check runs.
pub const WINDOW_VERTEX_CAP: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Cone {
    /// Section not identically zero on the component (cone 0, the set V0).
    #[serde(alias = "external", alias = "EXTERNAL")]
    External,
    /// Section vanishes identically (cone R>0, the set V+).
    #[serde(alias = "internal", alias = "INTERNAL")]
    Internal,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    pub id: String,
    pub genus: u32,
    pub degree: i64,
    pub cone: Cone,
}

/// An edge; `source -> target` is its reference orientation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub id: String,
    pub source: String,
    pub target: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Leg {
    pub id: String,
    pub vertex: String,
    pub leg_index: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecoratedGraph {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    legs: Vec<Leg>,
    ends: Vec<(usize, usize)>,
    leg_at: Vec<usize>,
}

impl DecoratedGraph {
    /// Builds a graph, checking that ids are unique and that every edge
    /// endpoint and leg attachment resolves. Connectivity is not required
    /// here; see [`compute_invariants`].
    pub fn new(mut vertices: Vec<Vertex>, mut edges: Vec<Edge>, mut legs: Vec<Leg>) -> Result<Self> {
        vertices.sort_by(|a, b| a.id.cmp(&b.id));
        edges.sort_by(|a, b| a.id.cmp(&b.id));
        legs.sort_by(|a, b| a.id.cmp(&b.id));
        if vertices.is_empty() {
            return Err(Error::Structure("graph has no vertices".into()));
        }
        for (kind, ids) in [
            ("vertex", vertices.iter().map(|v| &v.id).collect::<Vec<_>>()),
            ("edge", edges.iter().map(|e| &e.id).collect()),
            ("leg", legs.iter().map(|l| &l.id).collect()),
        ] {
            if let Some(w) = ids.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::Structure(format!("duplicate {kind} id {:?}", w[0])));
            }
        }
        let find = |id: &str| -> Result<usize> {
            vertices
                .binary_search_by(|v| v.id.as_str().cmp(id))
                .map_err(|_| Error::Structure(format!("unknown vertex id {id:?}")))
        };
        let ends = edges
            .iter()
            .map(|e| Ok((find(&e.source)?, find(&e.target)?)))
            .collect::<Result<Vec<_>>>()?;
        let leg_at = legs.iter().map(|l| find(&l.vertex)).collect::<Result<Vec<_>>>()?;
        Ok(Self { vertices, edges, legs, ends, leg_at })
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn legs(&self) -> &[Leg] {
        &self.legs
    }

    /// (source, target) vertex indices of edge `e`.
    pub fn ends(&self, e: usize) -> (usize, usize) {
        self.ends[e]
    }

    /// Vertex index carrying leg `l`.
    pub fn leg_vertex(&self, l: usize) -> usize {
        self.leg_at[l]
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertices.binary_search_by(|v| v.id.as_str().cmp(id)).ok()
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        self.edges.binary_search_by(|e| e.id.as_str().cmp(id)).ok()
    }

    pub fn is_self_loop(&self, e: usize) -> bool {
        let (s, t) = self.ends[e];
        s == t
    }

    pub fn cone(&self, v: usize) -> Cone {
        self.vertices[v].cone
    }

    /// Edge indices incident to `v`, self-loops once, in id order.
    pub fn incident(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.ends
            .iter()
            .enumerate()
            .filter(move |(_, &(s, t))| s == v || t == v)
            .map(|(e, _)| e)
    }

    /// Legs attached to `v`, as indices into `legs()`.
    pub fn legs_at(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.leg_at.iter().enumerate().filter(move |(_, &w)| w == v).map(|(l, _)| l)
    }

    /// An edge joins V0 to V+.
    pub fn is_bipartite_edge(&self, e: usize) -> bool {
        let (s, t) = self.ends[e];
        self.cone(s) != self.cone(t)
    }

    /// Whether the stored orientation already points from the External
    /// endpoint to the Internal one (or the edge is not bipartite).
    pub fn stored_is_canonical(&self, e: usize) -> bool {
        let (s, t) = self.ends[e];
        !(self.cone(s) == Cone::Internal && self.cone(t) == Cone::External)
    }

    pub fn genus_labels_total(&self) -> u64 {
        self.vertices.iter().map(|v| u64::from(v.genus)).sum()
    }

    pub fn degree_total(&self) -> i64 {
        self.vertices.iter().map(|v| v.degree).sum()
    }

    /// Connected components of the subgraph on `keep_vertex` using only
    /// edges accepted by `keep_edge` whose ends are both kept.
    pub(crate) fn component_count(
        &self,
        keep_vertex: impl Fn(usize) -> bool,
        keep_edge: impl Fn(usize) -> bool,
    ) -> usize {
        let n = self.vertices.len();
        let mut uf = UnionFind::new(n);
        for (e, &(s, t)) in self.ends.iter().enumerate() {
            if keep_edge(e) && keep_vertex(s) && keep_vertex(t) {
                uf.union(s, t);
            }
        }
        (0..n).filter(|&v| keep_vertex(v) && uf.find(v) == v).count()
    }

    /// Betti number b1 = |E| - |V| + b0 of the whole graph.
    pub fn first_betti(&self) -> usize {
        let b0 = self.component_count(|_| true, |_| true);
        self.edges.len() + b0 - self.vertices.len()
    }

    pub fn is_connected(&self) -> bool {
        self.component_count(|_| true, |_| true) == 1
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

/// One step of a basis cycle: edge index and +1 when the cycle runs along
/// the stored orientation, -1 against it.
pub type CycleStep = (usize, i8);

/// Breadth-first spanning tree together with its fundamental cycles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanningTree {
    pub in_tree: Vec<bool>,
    /// Vertices in the order the search reached them; `order[0]` is the root.
    pub order: Vec<usize>,
    /// Tree edge joining each non-root vertex to its parent.
    pub parent_edge: Vec<Option<usize>>,
    pub parent: Vec<Option<usize>>,
    /// Non-tree edges in id order.
    pub free_edges: Vec<usize>,
    /// One cycle per free edge, starting with that edge traversed forward.
    pub cycles: Vec<Vec<CycleStep>>,
}

impl SpanningTree {
    /// Root is the smallest vertex id; at each vertex edges are scanned in id order.
    pub fn build(g: &DecoratedGraph) -> Result<Self> {
        let n = g.vertices.len();
        let mut parent = vec![None; n];
        let mut parent_edge = vec![None; n];
        let mut seen = vec![false; n];
        let mut in_tree = vec![false; g.edges.len()];
        let mut order = Vec::with_capacity(n);
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for e in g.incident(v) {
                let (s, t) = g.ends[e];
                let w = if s == v { t } else { s };
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(v);
                    parent_edge[w] = Some(e);
                    in_tree[e] = true;
                    queue.push_back(w);
                }
            }
        }
        if order.len() != n {
            return Err(Error::Connectivity { components: g.component_count(|_| true, |_| true) });
        }
        let mut depth = vec![0usize; n];
        for &v in order.iter().skip(1) {
            depth[v] = depth[parent[v].unwrap()] + 1;
        }
        let free_edges: Vec<usize> = (0..g.edges.len()).filter(|&e| !in_tree[e]).collect();
        let cycles = free_edges
            .iter()
            .map(|&e| {
                let (s, t) = g.ends[e];
                let mut cycle = vec![(e, 1i8)];
                // Walk t -> s through the tree: climb from both ends to the meeting vertex.
                let (mut a, mut b) = (t, s);
                let mut up_from_t = Vec::new();
                let mut up_from_s = Vec::new();
                while a != b {
                    if depth[a] >= depth[b] {
                        let pe = parent_edge[a].unwrap();
                        up_from_t.push((pe, a));
                        a = parent[a].unwrap();
                    } else {
                        let pe = parent_edge[b].unwrap();
                        up_from_s.push((pe, b));
                        b = parent[b].unwrap();
                    }
                }
                // Going up from child c to its parent along tree edge pe.
                for (pe, child) in up_from_t {
                    let sign = if g.ends[pe].0 == child { 1 } else { -1 };
                    cycle.push((pe, sign));
                }
                // Then down from the meeting vertex towards s.
                for (pe, child) in up_from_s.into_iter().rev() {
                    let sign = if g.ends[pe].1 == child { 1 } else { -1 };
                    cycle.push((pe, sign));
                }
                cycle
            })
            .collect();
        Ok(Self { in_tree, order, parent_edge, parent, free_edges, cycles })
    }

    pub fn tree_edge_count(&self) -> usize {
        self.in_tree.iter().filter(|&&b| b).count()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphInvariants {
    pub b0: usize,
    pub b1: usize,
    pub v0: Vec<String>,
    pub vplus: Vec<String>,
    pub bipartite_edges: Vec<String>,
    /// Components after deleting all bipartite edges.
    pub b0_gamma_dagger: usize,
    /// Components of the subgraph induced on V0 (0 when V0 is empty).
    pub b0_gamma0: usize,
    /// First Betti number of the subgraph induced on V+.
    pub b1_gammaplus: usize,
    pub spanning_tree: Vec<String>,
    pub cycle_basis: Vec<Vec<(String, i8)>>,
}

impl GraphInvariants {
    pub fn is_v0_empty(&self) -> bool {
        self.v0.is_empty()
    }
}

pub fn compute_invariants(g: &DecoratedGraph) -> Result<GraphInvariants> {
    let tree = SpanningTree::build(g)?;
    let ext = |v: usize| g.cone(v) == Cone::External;
    let int = |v: usize| g.cone(v) == Cone::Internal;
    let bip: BTreeSet<usize> = (0..g.edges.len()).filter(|&e| g.is_bipartite_edge(e)).collect();

    let b0_gamma_dagger = g.component_count(|_| true, |e| !bip.contains(&e));
    let b0_gamma0 = g.component_count(ext, |_| true);
    let b0_plus = g.component_count(int, |_| true);
    let e_plus = (0..g.edges.len())
        .filter(|&e| {
            let (s, t) = g.ends(e);
            int(s) && int(t)
        })
        .count();
    let v_plus = (0..g.vertices.len()).filter(|&v| int(v)).count();

    let name = |e: usize| g.edges[e].id.clone();
    Ok(GraphInvariants {
        b0: 1,
        b1: tree.free_edges.len(),
        v0: g.vertices.iter().filter(|v| v.cone == Cone::External).map(|v| v.id.clone()).collect(),
        vplus: g.vertices.iter().filter(|v| v.cone == Cone::Internal).map(|v| v.id.clone()).collect(),
        bipartite_edges: bip.iter().map(|&e| name(e)).collect(),
        b0_gamma_dagger,
        b0_gamma0,
        b1_gammaplus: e_plus + b0_plus - v_plus,
        spanning_tree: (0..g.edges.len()).filter(|&e| tree.in_tree[e]).map(name).collect(),
        cycle_basis: tree
            .cycles
            .iter()
            .map(|c| c.iter().map(|&(e, s)| (name(e), s)).collect())
            .collect(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum WindowCheck {
    /// All 2^|V| subsets; refuses graphs above [`WINDOW_VERTEX_CAP`].
    #[default]
    Exhaustive,
    /// Singletons and connected components only; the report is marked partial.
    Approximate,
}

/// Checks the pre-type conditions: connectivity, genus sum, degree sum,
/// leg bookkeeping, the subset degree window and r > 2d.
pub fn validate_pretype(
    g: &DecoratedGraph,
    contact: &ContactData,
    r: u64,
    window: WindowCheck,
) -> Result<ValidationReport> {
    if r == 0 {
        return Err(Error::Argument("r must be positive".into()));
    }
    let n = g.vertices.len();
    if window == WindowCheck::Exhaustive && n > WINDOW_VERTEX_CAP {
        return Err(Error::Budget { count: format!("2^{n}"), cap: 1 << WINDOW_VERTEX_CAP });
    }
    let mut report = ValidationReport::default();
    let b0 = g.component_count(|_| true, |_| true);
    if b0 != 1 {
        report.violations.push(Violation::Disconnected { components: b0 });
    }
    let found = g.genus_labels_total() + (g.edges.len() + b0 - n) as u64;
    if found != u64::from(contact.genus()) {
        report.violations.push(Violation::GenusSum { expected: contact.genus().into(), found });
    }
    if g.degree_total() != contact.degree() {
        report
            .violations
            .push(Violation::DegreeSum { expected: contact.degree(), found: g.degree_total() });
    }
    let mut used = vec![0usize; contact.n()];
    let mut bad = Vec::new();
    for l in &g.legs {
        match used.get_mut(l.leg_index) {
            Some(c) => *c += 1,
            None => bad.push(format!("leg {} refers to missing contact index {}", l.id, l.leg_index)),
        }
    }
    for (i, &c) in used.iter().enumerate() {
        if c != 1 {
            bad.push(format!("contact index {i} used {c} times"));
        }
    }
    if !bad.is_empty() {
        report.violations.push(Violation::LegIndices { detail: bad.join("; ") });
    }

    let outside = |sum: i64| 2 * i128::from(sum).abs() >= i128::from(r);
    let degrees: Vec<i64> = g.vertices.iter().map(|v| v.degree).collect();
    match window {
        WindowCheck::Exhaustive => {
            let mut first: Option<(u64, i64)> = None;
            let mut count = 0u64;
            for mask in 1u64..(1u64 << n) {
                let sum: i64 = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| degrees[i]).sum();
                if outside(sum) {
                    count += 1;
                    first.get_or_insert((mask, sum));
                }
            }
            if let Some((mask, sum)) = first {
                let subset = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| g.vertices[i].id.clone()).collect();
                report.violations.push(Violation::Window { subset, sum, r, violating_subsets: count });
            }
        }
        WindowCheck::Approximate => {
            report.partial = true;
            let mut uf = UnionFind::new(n);
            for &(s, t) in &g.ends {
                uf.union(s, t);
            }
            let mut candidates: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
            let roots: BTreeSet<usize> = (0..n).map(|v| uf.find(v)).collect();
            for root in roots {
                candidates.push((0..n).filter(|&v| uf.find(v) == root).collect());
            }
            let bad: Vec<(Vec<usize>, i64)> = candidates
                .into_iter()
                .map(|s| {
                    let sum = s.iter().map(|&v| degrees[v]).sum();
                    (s, sum)
                })
                .filter(|&(_, sum)| outside(sum))
                .collect();
            if let Some((s, sum)) = bad.first() {
                report.violations.push(Violation::Window {
                    subset: s.iter().map(|&v| g.vertices[v].id.clone()).collect(),
                    sum: *sum,
                    r,
                    violating_subsets: bad.len() as u64,
                });
            }
        }
    }
    if i128::from(r) <= 2 * i128::from(contact.degree()) {
        report.violations.push(Violation::RootVsDegree { r, d: contact.degree() });
    }
    Ok(report)
}
