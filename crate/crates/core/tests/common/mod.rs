#![allow(dead_code)]

use std::path::PathBuf;
use std::sync::Arc;

use modr::cli::Problem;
use modr::compare::ZhatType;
use modr::contact::ContactData;
use modr::graph::{Cone, DecoratedGraph, Edge, Vertex};
use modr::weighting::ModRType;
use rand::rngs::StdRng;
use rand::Rng;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(format!("{name}.json"))
}

pub fn problem(name: &str) -> Problem {
    Problem::load(&fixture_path(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn mod_type(name: &str) -> ModRType {
    problem(name).mod_type().unwrap()
}

pub fn zhat(name: &str) -> ZhatType {
    problem(name).zhat().unwrap()
}

pub fn vertex(id: &str, genus: u32, degree: i64, cone: Cone) -> Vertex {
    Vertex { id: id.into(), genus, degree, cone }
}

pub fn edge(id: &str, source: &str, target: &str) -> Edge {
    Edge { id: id.into(), source: source.into(), target: target.into() }
}

pub fn no_legs(d: i64, g: u32) -> Arc<ContactData> {
    Arc::new(ContactData::new(vec![], d, g).unwrap())
}

/// A legless graph whose degrees balance the given integer slopes exactly.
pub fn balanced_graph(cones: &[Cone], genera: &[u32], ends: &[(usize, usize)], slopes: &[i64]) -> DecoratedGraph {
    let mut deg = vec![0i64; cones.len()];
    for (&(s, t), &m) in ends.iter().zip(slopes) {
        deg[s] += m;
        deg[t] -= m;
    }
    let vertices = (0..cones.len()).map(|i| vertex(&format!("v{i}"), genera[i], deg[i], cones[i])).collect();
    let edges = ends.iter().enumerate().map(|(k, &(s, t))| edge(&format!("e{k}"), &format!("v{s}"), &format!("v{t}"))).collect();
    DecoratedGraph::new(vertices, edges, vec![]).unwrap()
}

/// Two vertices joined by two parallel edges with slopes m1, m2 (mod r).
pub fn banana(r: u64, m1: u64, m2: u64) -> ModRType {
    let g = balanced_graph(&[Cone::External, Cone::Internal], &[0, 1], &[(0, 1), (0, 1)], &[m1 as i64, m2 as i64]);
    ModRType::new(g, no_legs(0, 2), r, vec![m1 % r, m2 % r]).unwrap()
}

/// Random connected multigraph with the given first Betti number; loops allowed.
pub fn random_ends(rng: &mut StdRng, n: usize, b1: usize) -> Vec<(usize, usize)> {
    let mut ends: Vec<(usize, usize)> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
    for _ in 0..b1 {
        ends.push((rng.gen_range(0..n), rng.gen_range(0..n)));
    }
    for e in ends.iter_mut() {
        if rng.gen_bool(0.5) {
            *e = (e.1, e.0);
        }
    }
    ends
}

/// Genus total of a graph: labels plus first Betti number.
pub fn genus_of(g: &DecoratedGraph) -> u32 {
    (g.genus_labels_total() + g.first_betti() as u64) as u32
}
