//! Command-line front end: problem-file parsing and a registry of subcommands.

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::Parser;
use num_bigint::BigUint;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::autgroup::{counters, reduction_kernel_order, ShSystem};
use crate::compare::{
    canonical_lift, canonical_zhat, comparison_degree, dim_of, equidimensionality_of, k_tau, lift_uniqueness_oracle,
    monomiality_sweep, regime_check, ZhatType,
};
use crate::congruence::enumerate_solutions;
use crate::contact::{validate_contact, ContactData, LegContact};
use crate::error::{Error, Result};
use crate::graph::{compute_invariants, validate_pretype, DecoratedGraph, Edge, Leg, Vertex, WindowCheck};
use crate::polyassemble::{assemble_family_polynomial, genus1_virtual_polynomial, maulik_total_degree};
use crate::pushfwd::inducibility_necessary;
use crate::registry::{Named, Registry};
use crate::weighting::{
    classify_graph, count_weightings, derive_edge_data, enumerators, weighting_reduce, BruteForceEnumerator,
    ModRType, WeightingEnumerator,
};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProblemFile {
    contact: ContactJson,
    graph: GraphJson,
    r: u64,
    #[serde(default)]
    weighting: Option<BTreeMap<String, u64>>,
    #[serde(default)]
    islope: Option<BTreeMap<String, i64>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ContactJson {
    #[serde(default)]
    legs: Vec<LegJson>,
    d: i64,
    g: u32,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct LegJson {
    s: u64,
    a: RationalJson,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum RationalJson {
    Text(String),
    Int(i64),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphJson {
    vertices: Vec<Vertex>,
    #[serde(default)]
    edges: Vec<Edge>,
    #[serde(default)]
    legs: Vec<Leg>,
}

/// A parsed problem file.
#[derive(Debug, Clone)]
pub struct Problem {
    pub graph: Arc<DecoratedGraph>,
    pub contact: Arc<ContactData>,
    pub r: u64,
    pub weighting: Option<BTreeMap<String, u64>>,
    pub islope: Option<BTreeMap<String, i64>>,
}

impl Problem {
    pub fn parse(text: &str) -> Result<Self> {
        let file: ProblemFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if file.r == 0 {
            return Err(Error::Parse("r must be positive".into()));
        }
        let legs = file
            .contact
            .legs
            .into_iter()
            .map(|l| {
                let a = match l.a {
                    RationalJson::Text(t) => crate::rational::parse(&t)?,
                    RationalJson::Int(i) => num_rational::BigRational::from_integer(i.into()),
                };
                Ok(LegContact { s: l.s, a })
            })
            .collect::<Result<Vec<_>>>()?;
        let contact = ContactData::new(legs, file.contact.d, file.contact.g).map_err(as_parse)?;
        let graph = DecoratedGraph::new(file.graph.vertices, file.graph.edges, file.graph.legs)?;
        if let Some(w) = &file.weighting {
            if let Some((k, m)) = w.iter().find(|(_, &m)| m >= file.r) {
                return Err(Error::Parse(format!("weighting of {k:?} is {m}, not a residue mod {}", file.r)));
            }
        }
        Ok(Self {
            graph: Arc::new(graph),
            contact: Arc::new(contact),
            r: file.r,
            weighting: file.weighting,
            islope: file.islope,
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text =
            std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn has_type(&self) -> bool {
        self.weighting.is_some() || self.islope.is_some()
    }

    /// The mod-r type from `weighting`, or the residues of `islope`.
    pub fn mod_type(&self) -> Result<ModRType> {
        match (&self.weighting, &self.islope) {
            (Some(w), _) => ModRType::from_map(self.graph.clone(), self.contact.clone(), self.r, w),
            (None, Some(_)) => self.zhat()?.reduce(self.r),
            (None, None) => Err(Error::Argument("problem has no weighting or islope".into())),
        }
    }

    pub fn zhat(&self) -> Result<ZhatType> {
        let islope = self.islope.as_ref().ok_or_else(|| Error::Argument("problem has no islope".into()))?;
        ZhatType::from_map(self.graph.clone(), self.contact.clone(), self.r, islope)
    }

    /// `islope` if given, else the canonical lift of `weighting` when it lifts at every lambda.
    pub fn zhat_or_lift(&self, lambdas: &[u64]) -> Result<ZhatType> {
        if self.islope.is_some() {
            return self.zhat();
        }
        canonical_zhat(&self.mod_type()?, lambdas)?
            .ok_or_else(|| Error::Domain("the weighting has no canonical integer lift".into()))
    }
}

fn as_parse(e: Error) -> Error {
    match e {
        Error::Domain(m) => Error::Parse(m),
        other => other,
    }
}

#[derive(Debug, Parser)]
#[command(name = "modr", about = "Exact combinatorics of mod-r tropical types")]
pub struct Invocation {
    /// One of: validate, weightings, classify, dims, sh, degree, lift, sweep, poly, maulik, oracle.
    pub command: String,
    /// Problem files.
    pub files: Vec<PathBuf>,
    /// Enumeration budget.
    #[arg(long, default_value_t = 100_000)]
    pub cap: u64,
    /// Range "a..b" (inclusive) or comma-separated list.
    #[arg(long)]
    pub lambdas: Option<String>,
    #[arg(long)]
    pub lambda: Option<u64>,
    /// Check the degree window on singletons and components only.
    #[arg(long)]
    pub no_window: bool,
    /// Also report the exponent without the section-scaling factor.
    #[arg(long)]
    pub raw_exponent: bool,
    /// Strategy name for enumerators and counters.
    #[arg(long)]
    pub method: Option<String>,
    #[arg(long)]
    pub r: Option<u64>,
    #[arg(long)]
    pub s: Option<u64>,
    /// Assemble the genus-1 virtual polynomial instead of a general family.
    #[arg(long)]
    pub genus1: bool,
}

impl Invocation {
    fn window(&self) -> WindowCheck {
        if self.no_window {
            WindowCheck::Approximate
        } else {
            WindowCheck::Exhaustive
        }
    }

    fn problem(&self) -> Result<Problem> {
        match self.files.as_slice() {
            [one] => Problem::load(one),
            [] => Err(Error::Argument(format!("{} needs a problem file", self.command))),
            _ => Err(Error::Argument(format!("{} takes exactly one problem file", self.command))),
        }
    }

    fn lambdas(&self, default: &[u64]) -> Result<Vec<u64>> {
        match &self.lambdas {
            Some(text) => parse_lambdas(text),
            None => Ok(self.lambda.map_or_else(|| default.to_vec(), |l| vec![l])),
        }
    }

    fn lambda(&self) -> Result<u64> {
        self.lambda.ok_or_else(|| Error::Argument(format!("{} needs --lambda", self.command)))
    }
}

/// "1..6" (inclusive) or "2,3,5".
pub fn parse_lambdas(text: &str) -> Result<Vec<u64>> {
    let bad = || Error::Argument(format!("bad lambda list {text:?}"));
    let values: Vec<u64> = if let Some((a, b)) = text.split_once("..") {
        let a: u64 = a.trim().parse().map_err(|_| bad())?;
        let b: u64 = b.trim().parse().map_err(|_| bad())?;
        (a..=b).collect()
    } else {
        text.split(',').map(|x| x.trim().parse().map_err(|_| bad())).collect::<Result<_>>()?
    };
    if values.is_empty() || values.contains(&0) {
        return Err(bad());
    }
    Ok(values)
}

/// What a subcommand produced: a result value, warnings, and whether the
/// input failed validation.
pub struct Output {
    pub result: Value,
    pub warnings: Vec<String>,
    pub invalid: bool,
}

impl Output {
    fn ok(result: Value) -> Self {
        Self { result, warnings: Vec::new(), invalid: false }
    }
}

pub trait Command: Named + Send + Sync {
    fn run(&self, inv: &Invocation) -> Result<Output>;
}

macro_rules! command {
    ($ty:ident, $name:literal) => {
        struct $ty;
        impl Named for $ty {
            fn name(&self) -> &'static str {
                $name
            }
        }
    };
}

command!(Validate, "validate");
command!(Weightings, "weightings");
command!(Classify, "classify");
command!(Dims, "dims");
command!(Sh, "sh");
command!(Degree, "degree");
command!(Lift, "lift");
command!(Sweep, "sweep");
command!(Poly, "poly");
command!(Maulik, "maulik");
command!(Oracle, "oracle");

pub fn commands() -> Registry<dyn Command> {
    let mut reg: Registry<dyn Command> = Registry::new();
    reg.register(Box::new(Validate));
    reg.register(Box::new(Weightings));
    reg.register(Box::new(Classify));
    reg.register(Box::new(Dims));
    reg.register(Box::new(Sh));
    reg.register(Box::new(Degree));
    reg.register(Box::new(Lift));
    reg.register(Box::new(Sweep));
    reg.register(Box::new(Poly));
    reg.register(Box::new(Maulik));
    reg.register(Box::new(Oracle));
    reg
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

/// Plain integer up to 2^63, decimal string beyond.
fn big_value(n: &BigUint) -> Value {
    match u64::try_from(n) {
        Ok(v) if v < (1u64 << 63) => json!(v),
        _ => json!(n.to_string()),
    }
}

impl Command for Validate {
    fn run(&self, inv: &Invocation) -> Result<Output> {
        let p = inv.problem()?;
        let mut report = validate_pretype(&p.graph, &p.contact, p.r, inv.window())?;
        report.merge(validate_contact(&p.contact, p.r));
        let mut result = to_value(&report);
        let mut invalid = !report.is_valid();
        if p.has_type() {
            match p.mod_type() {
                Ok(_) => result["balanced"] = json!(true),
                Err(Error::Unbalanced { vertex, modulus }) => {
                    result["balanced"] = json!(false);
                    result["unbalanced_vertex"] = json!({ "vertex": vertex, "modulus": modulus });
                    invalid = true;
                }
                Err(e) => return Err(e),
            }
        }
        result["valid"] = json!(!invalid);
        Ok(Output { result, warnings: Vec::new(), invalid })
    }
}

impl Command for Weightings {
    fn run(&self, inv: &Invocation) -> Result<Output> {
        let p = inv.problem()?;
        let method = inv.method.as_deref().unwrap_or("spanning-tree");
        let reg = enumerators();
        let strategy = reg
            .get(method)
            .ok_or_else(|| Error::Argument(format!("unknown method {method:?}; known: {:?}", reg.names())))?;
        let count = count_weightings(&p.graph, p.r)?;
        let list = strategy.enumerate(&p.graph, &p.contact, p.r, inv.cap)?;
        let weightings: Vec<Value> = list.iter().map(|t| to_value(&t.weighting_map())).collect();
        Ok(Output::ok(json!({
            "count": { "base": count.base, "exp": count.exp, "total": big_value(&count.value()) },
            "method": method,
            "weightings": weightings,
        })))
    }
}

impl Command for Classify {
    fn run(&self, inv: &Invocation) -> Result<Output> {
        let p = inv.problem()?;
        let class = classify_graph(&p.graph);
        let mut result = json!({
            "classification": to_value(&class),
            "invariants": to_value(&compute_invariants(&p.graph)?),
        });
        if class.essential {
            result["k_tau"] = to_value(&k_tau(&p.graph)?);
        }
        if p.has_type() {
            let t = p.mod_type()?;
            result["inducibility"] = to_value(&inducibility_necessary(&t, inv.window())?);
            result["regime"] = to_value(&regime_check(&t));
            result["edge_data"] = to_value(&derive_edge_data(&t));
        }
        if let Some(z) = p.islope.as_ref().map(|_| p.zhat()).transpose()? {
            result["ages"] = to_value(&crate::compare::age_classify(&z));
        }
        Ok(Output::ok(result))
    }
}

impl Command for Dims {
    fn run(&self, inv: &Invocation) -> Result<Output> {
        if inv.files.is_empty() {
            return Err(Error::Argument("dims needs at least one problem file".into()));
        }
        let problems = inv.files.iter().map(|f| Problem::load(f)).collect::<Result<Vec<_>>>()?;
        let dims: Vec<Value> = inv
            .files
            .iter()
            .zip(&problems)
            .map(|(f, p)| Ok(json!({ "file": f.display().to_string(), "dim": dim_of(&p.graph, &p.contact)? })))
            .collect::<Result<_>>()?;
        let mut result = json!({ "dims": dims });
        let all_essential = problems.iter().all(|p| classify_graph(&p.graph).essential);
        if all_essential {
            let (g, n) = (problems[0].contact.genus(), problems[0].contact.n());
            let pairs: Vec<_> = problems.iter().map(|p| (p.graph.as_ref(), p.contact.as_ref())).collect();
            result["trichotomy"] = to_value(&equidimensionality_of(g, n, &pairs)?);
        }
        Ok(Output::ok(result))
    }
}

impl Command for Sh {
    fn run(&self, inv: &Invocation) -> Result<Output> {
        let p = inv.problem()?;
        let t = p.mod_type()?;
        let method = inv.method.as_deref().unwrap_or("lattice");
        let reg = counters();
        let counter = reg
            .get(method)
            .ok_or_else(|| Error::Argument(format!("unknown method {method:?}; known: {:?}", reg.names())))?;
        let sys = ShSystem::of(&t)?;
        let order = counter.count(&sys, inv.cap)?;
        let isotropy: BTreeMap<&str, u64> = sys.edge_ids.iter().map(String::as_str).zip(sys.moduli.iter().copied()).collect();
        let mut result = json!({ "order": big_value(&order), "method": method, "isotropy": isotropy });
        if method == "exhaustive" {
            result["elements"] = to_value(&enumerate_solutions(&sys.rows, &sys.moduli, sys.modulus, inv.cap)?);
        }
        let mut warnings = Vec::new();
        if let Some(l) = inv.lambda {
            let kernel = reduction_kernel_order(&t, l)?;
            result["kernel_order"] = big_value(&kernel);
            let small = weighting_reduce(&t, l)?;
            let regime = regime_check(&small);
            if regime.divisible && regime.nodal_nontrivial {
                let tree_edges = t.graph().edges().len() - t.graph().first_betti();
                result["kernel_claim"] = json!(kernel == BigUint::from(l).pow(tree_edges as u32));
            } else {
                warnings.push("regime not satisfied; kernel claim not checked".to_string());
            }
        }
        Ok(Output { result, warnings, invalid: false })
    }
}

impl Command for Degree {
    fn run(&self, inv: &Invocation) -> Result<Output> {
        let p = inv.problem()?;
        let l = inv.lambda()?;
        let big = if p.islope.is_some() {
            p.zhat()?.reduce_scaled(p.r, l)?
        } else {
            p.mod_type()?
        };
        let deg = comparison_degree(&big, l)?;
        let mut result = to_value(&deg);
        let obj = result.as_object_mut().expect("object");
        let warnings = obj.remove("warnings").map(|w| serde_json::from_value(w).unwrap_or_default()).unwrap_or_default();
        if !inv.raw_exponent {
            obj.remove("raw_exponent");
        }
        Ok(Output { result, warnings, invalid: false })
    }
}

impl Command for Lift {
    fn run(&self, inv: &Invocation) -> Result<Output> {
        let p = inv.problem()?;
        let t = p.mod_type()?;
        let lambdas = inv.lambdas(&[2])?;
        let mut lifts = serde_json::Map::new();
        let mut size_ok = true;
        for &l in &lambdas {
            let rep = canonical_lift(&t, l)?;
            size_ok = rep.size_bound_ok;
            lifts.insert(l.to_string(), rep.lifted.map_or(Value::Null, |x| to_value(&x.weighting_map())));
        }
        let zhat = canonical_zhat(&t, &lambdas)?;
        let mut warnings = Vec::new();
        if !size_ok {
            warnings.push("r does not exceed the size bound; uniqueness of the lift is not guaranteed".to_string());
        }
        Ok(Output {
            result: json!({
                "size_bound_ok": size_ok,
                "lifts": lifts,
                "islope": zhat.map_or(Value::Null, |z| to_value(&z.islope_map())),
            }),
            warnings,
            invalid: false,
        })
    }
}

impl Command for Sweep {
    fn run(&self, inv: &Invocation) -> Result<Output> {
        let p = inv.problem()?;
        let lambdas = inv.lambdas(&[1, 2, 3, 4, 5, 6])?;
        let z = p.zhat_or_lift(&lambdas)?;
        let mut rep = monomiality_sweep(&z, p.r, &lambdas)?;
        let warnings = std::mem::take(&mut rep.warnings);
        Ok(Output { result: to_value(&rep), warnings, invalid: false })
    }
}

impl Command for Poly {
    fn run(&self, inv: &Invocation) -> Result<Output> {
        if inv.files.is_empty() {
            return Err(Error::Argument("poly needs at least one problem file".into()));
        }
        let lambdas = inv.lambdas(&[1, 2, 3, 4, 5, 6])?;
        let mut family = Vec::new();
        let mut r: Option<u64> = None;
        for f in &inv.files {
            let p = Problem::load(f)?;
            if r.is_some_and(|r| r != p.r) {
                return Err(Error::Argument("all family members must share r".into()));
            }
            r = Some(p.r);
            let label = f.file_stem().map_or_else(|| f.display().to_string(), |s| s.to_string_lossy().into_owned());
            family.push((label, p.zhat_or_lift(&lambdas)?));
        }
        let r = r.expect("nonempty family");
        let poly = if inv.genus1 {
            genus1_virtual_polynomial(&family, r, &lambdas)?
        } else {
            assemble_family_polynomial(&family, r, &lambdas)?
        };
        let values: BTreeMap<String, String> =
            lambdas.iter().map(|&l| (l.to_string(), poly.evaluate(l).to_string())).collect();
        Ok(Output::ok(json!({ "polynomial": to_value(&poly), "degree": poly.degree(), "values": values })))
    }
}

impl Command for Maulik {
    fn run(&self, inv: &Invocation) -> Result<Output> {
        let r = inv.r.ok_or_else(|| Error::Argument("maulik needs --r".into()))?;
        let s = inv.s.ok_or_else(|| Error::Argument("maulik needs --s".into()))?;
        let m = maulik_total_degree(r, s)?;
        Ok(Output::ok(json!({
            "total": m.total.to_string(),
            "summands": m.summands,
            "torsion_exponent": m.torsion_exponent,
        })))
    }
}

/// One cross-check between a fast route and its brute-force oracle.
fn check(name: &str, outcome: Result<std::result::Result<Value, Value>>) -> (Value, bool) {
    match outcome {
        Ok(Ok(detail)) => (json!({ "check": name, "status": "pass", "detail": detail }), true),
        Ok(Err(detail)) => (json!({ "check": name, "status": "fail", "detail": detail }), false),
        Err(Error::Budget { count, cap }) => {
            (json!({ "check": name, "status": "skipped", "detail": format!("{count} items exceed cap {cap}") }), true)
        }
        Err(e) => (json!({ "check": name, "status": "error", "detail": e.to_string() }), false),
    }
}

impl Command for Oracle {
    fn run(&self, inv: &Invocation) -> Result<Output> {
        let p = inv.problem()?;
        let cap = inv.cap;
        let mut checks = Vec::new();
        let mut all_ok = true;
        let mut push = |(v, ok): (Value, bool)| {
            all_ok &= ok;
            checks.push(v);
        };

        push(check(
            "weightings",
            (|| {
                let fast = enumerators().get("spanning-tree").expect("registered").enumerate(&p.graph, &p.contact, p.r, cap)?;
                let slow = BruteForceEnumerator.enumerate(&p.graph, &p.contact, p.r, cap)?;
                let a: BTreeSet<Vec<u64>> = fast.iter().map(|t| t.slopes().to_vec()).collect();
                let b: BTreeSet<Vec<u64>> = slow.iter().map(|t| t.slopes().to_vec()).collect();
                let detail = json!({ "spanning_tree": fast.len(), "brute_force": slow.len() });
                Ok(if a == b && fast.len() == a.len() { Ok(detail) } else { Err(detail) })
            })(),
        ));

        if p.has_type() {
            let t = p.mod_type()?;
            push(check(
                "sh_order",
                (|| {
                    let sys = ShSystem::of(&t)?;
                    let reg = counters();
                    let a = reg.get("lattice").expect("registered").count(&sys, cap)?;
                    let b = reg.get("exhaustive").expect("registered").count(&sys, cap)?;
                    let detail = json!({ "lattice": a.to_string(), "exhaustive": b.to_string() });
                    Ok(if a == b { Ok(detail) } else { Err(detail) })
                })(),
            ));
            for l in inv.lambdas(&[2, 3])? {
                push(check(&format!("lift_uniqueness_{l}"), lift_uniqueness(&t, l, cap)));
            }
        }
        let result = json!({ "checks": checks, "all_passed": all_ok });
        Ok(Output { result, warnings: Vec::new(), invalid: !all_ok })
    }
}

fn lift_uniqueness(t: &ModRType, lambda: u64, cap: u64) -> Result<std::result::Result<Value, Value>> {
    let oracle = lift_uniqueness_oracle(t, lambda, cap)?;
    let detail = to_value(&oracle);
    Ok(if oracle.holds { Ok(detail) } else { Err(detail) })
}

pub const USAGE: &str = "usage: modr <validate|weightings|classify|dims|sh|degree|lift|sweep|poly|maulik|oracle> [FILES...] \
[--cap N] [--lambdas a..b|l1,l2,...] [--lambda L] [--no-window] [--raw-exponent] [--method NAME] [--r R] [--s S] [--genus1]";

/// Exit status for an error: 1 validation, 2 budget, 3 malformed input.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Budget { .. } => 2,
        Error::Parse(_) | Error::Structure(_) | Error::Argument(_) => 3,
        Error::Connectivity { .. } | Error::Domain(_) | Error::Unbalanced { .. } | Error::Regime(_) => 1,
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Structure(_) => "structure",
        Error::Connectivity { .. } => "connectivity",
        Error::Budget { .. } => "budget",
        Error::Domain(_) => "domain",
        Error::Argument(_) => "argument",
        Error::Unbalanced { .. } => "unbalanced",
        Error::Regime(_) => "regime",
        Error::Parse(_) => "parse",
    }
}

/// Result of one invocation: exit status and the two output streams.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs one command; `argv` excludes the program name.
pub fn run<S: AsRef<str>>(argv: &[S]) -> RunOutcome {
    let args = std::iter::once("modr").chain(argv.iter().map(AsRef::as_ref));
    let inv = match Invocation::try_parse_from(args) {
        Ok(inv) => inv,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                RunOutcome { code, stdout: text, stderr: String::new() }
            } else {
                RunOutcome { code, stdout: String::new(), stderr: format!("{text}\n{USAGE}\n") }
            };
        }
    };
    let reg = commands();
    let Some(cmd) = reg.get(&inv.command) else {
        return RunOutcome {
            code: 3,
            stdout: String::new(),
            stderr: format!("unknown subcommand {:?}\n{USAGE}\n", inv.command),
        };
    };
    match cmd.run(&inv) {
        Ok(out) => {
            let mut doc = json!({ "result": out.result });
            if !out.warnings.is_empty() {
                doc["warnings"] = json!(out.warnings);
            }
            RunOutcome { code: if out.invalid { 1 } else { 0 }, stdout: format!("{doc}\n"), stderr: String::new() }
        }
        Err(e) => {
            let code = exit_code(&e);
            let mut doc = json!({ "error": { "kind": error_kind(&e), "message": e.to_string() } });
            if let Error::Budget { count, cap } = &e {
                doc["error"]["count"] = json!(count);
                doc["error"]["cap"] = json!(cap);
            }
            let stderr = if code == 3 { format!("{e}\n{USAGE}\n") } else { format!("{e}\n") };
            RunOutcome { code, stdout: format!("{doc}\n"), stderr }
        }
    }
}
