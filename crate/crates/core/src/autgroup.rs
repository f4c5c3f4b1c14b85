//! The shadow group Sh(T): edge isotropy labels a_e in Z/t_e subject to one
//! congruence per basis cycle, sum sign * gcd(r, m_e) * a_e = 0 mod r.

use num_bigint::BigUint;
use num_integer::gcd;
use serde::Serialize;

use crate::congruence::{count_solutions, enumerate_solutions};
use crate::error::{Error, Result};
use crate::graph::SpanningTree;
use crate::registry::{Named, Registry};
use crate::weighting::ModRType;

/// A congruence system over prod Z/moduli[j].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShSystem {
    pub edge_ids: Vec<String>,
    pub moduli: Vec<u64>,
    pub rows: Vec<Vec<i64>>,
    pub modulus: u64,
}

impl ShSystem {
    pub fn of(t: &ModRType) -> Result<Self> {
        let g = t.graph();
        let tree = SpanningTree::build(g)?;
        let r = t.r();
        let coeff: Vec<i64> = t.slopes().iter().map(|&m| gcd(r, m) as i64).collect();
        let rows = tree
            .cycles
            .iter()
            .map(|cycle| {
                let mut row = vec![0i64; g.edges().len()];
                for &(e, sign) in cycle {
                    row[e] += i64::from(sign) * coeff[e];
                }
                row
            })
            .collect();
        Ok(Self {
            edge_ids: g.edges().iter().map(|e| e.id.clone()).collect(),
            moduli: t.isotropy(),
            rows,
            modulus: r,
        })
    }

    /// The subsystem of labels that vanish modulo t_e at r = R / lambda:
    /// substitute a_e = t_e(r) b_e with b_e in Z/(t_e(R) / t_e(r)).
    pub fn reduction_kernel(t_big: &ModRType, lambda: u64) -> Result<Self> {
        let big = Self::of(t_big)?;
        let r_big = t_big.r();
        if lambda == 0 || r_big % lambda != 0 {
            return Err(Error::Domain(format!("lambda = {lambda} does not divide r = {r_big}")));
        }
        let r = r_big / lambda;
        let small: Vec<u64> = t_big.slopes().iter().map(|&m| r / gcd(r, m % r)).collect();
        let moduli = big.moduli.iter().zip(&small).map(|(&tb, &ts)| tb / ts).collect();
        let rows = big
            .rows
            .iter()
            .map(|row| row.iter().zip(&small).map(|(&a, &ts)| a * ts as i64).collect())
            .collect();
        Ok(Self { edge_ids: big.edge_ids, moduli, rows, modulus: r_big })
    }

    pub fn ambient_order(&self) -> BigUint {
        self.moduli.iter().map(|&n| BigUint::from(n)).product()
    }
}

/// A way to compute |Sh| from its congruence system.
pub trait ShCounter: Named + Send + Sync {
    fn count(&self, sys: &ShSystem, cap: u64) -> Result<BigUint>;
}

/// Column-lattice index computation; no enumeration.
pub struct LatticeCounter;

/// Direct scan of prod Z/t_e, bounded by the cap.
pub struct ExhaustiveCounter;

impl Named for LatticeCounter {
    fn name(&self) -> &'static str {
        "lattice"
    }
}

impl Named for ExhaustiveCounter {
    fn name(&self) -> &'static str {
        "exhaustive"
    }
}

impl ShCounter for LatticeCounter {
    fn count(&self, sys: &ShSystem, _cap: u64) -> Result<BigUint> {
        count_solutions(&sys.rows, &sys.moduli, sys.modulus)
    }
}

impl ShCounter for ExhaustiveCounter {
    fn count(&self, sys: &ShSystem, cap: u64) -> Result<BigUint> {
        Ok(BigUint::from(enumerate_solutions(&sys.rows, &sys.moduli, sys.modulus, cap)?.len()))
    }
}

pub fn counters() -> Registry<dyn ShCounter> {
    let mut reg: Registry<dyn ShCounter> = Registry::new();
    reg.register(Box::new(LatticeCounter));
    reg.register(Box::new(ExhaustiveCounter));
    reg
}

pub fn sh_order(t: &ModRType) -> Result<BigUint> {
    LatticeCounter.count(&ShSystem::of(t)?, u64::MAX)
}

/// Elements of Sh(T) as label vectors in edge-id order.
pub fn sh_enumerate(t: &ModRType, cap: u64) -> Result<Vec<Vec<u64>>> {
    let sys = ShSystem::of(t)?;
    enumerate_solutions(&sys.rows, &sys.moduli, sys.modulus, cap)
}

/// Order of the kernel of Sh(T_big) -> Sh(reduced) for T_big at lambda r.
pub fn reduction_kernel_order(t_big: &ModRType, lambda: u64) -> Result<BigUint> {
    LatticeCounter.count(&ShSystem::reduction_kernel(t_big, lambda)?, u64::MAX)
}
