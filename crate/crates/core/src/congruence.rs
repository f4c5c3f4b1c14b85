//! Counting solutions of homogeneous linear congruence systems
//! sum_j A[k][j] x_j = 0 (mod m), x_j in Z/n_j.

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};

/// Extended gcd on i128: returns (g, u, v) with u a + v b = g >= 0.
fn egcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// Checks that every term A[k][j] x_j is well defined on Z/n_j.
pub fn check_well_defined(rows: &[Vec<i64>], moduli: &[u64], m: u64) -> Result<()> {
    if m == 0 {
        return Err(Error::Argument("modulus must be positive".into()));
    }
    for row in rows {
        if row.len() != moduli.len() {
            return Err(Error::Argument("coefficient row length differs from number of unknowns".into()));
        }
        for (&a, &n) in row.iter().zip(moduli) {
            if n == 0 {
                return Err(Error::Argument("unknown modulus must be positive".into()));
            }
            if (i128::from(a) * i128::from(n)).rem_euclid(i128::from(m)) != 0 {
                return Err(Error::Argument(format!("coefficient {a} is not well defined on Z/{n} modulo {m}")));
            }
        }
    }
    Ok(())
}

/// Index of the lattice spanned by the columns of `rows` plus m Z^K inside Z^K.
/// Column echelon elimination with entries below the current row kept mod m.
pub fn column_lattice_index(rows: &[Vec<i64>], m: u64) -> BigUint {
    let k = rows.len();
    let mi = i128::from(m);
    let width = rows.first().map_or(0, Vec::len);
    let mut gens: Vec<Vec<i128>> = (0..width)
        .map(|j| rows.iter().map(|row| i128::from(row[j]).rem_euclid(mi)).collect())
        .collect();
    for i in 0..k {
        let mut e = vec![0i128; k];
        e[i] = mi;
        gens.push(e);
    }
    let mut index = BigUint::one();
    for row in 0..k {
        let mut pivot: Option<usize> = None;
        for idx in 0..gens.len() {
            if gens[idx][row] == 0 {
                continue;
            }
            let Some(p) = pivot else {
                pivot = Some(idx);
                continue;
            };
            let (a, b) = (gens[p][row], gens[idx][row]);
            let (g, u, v) = egcd(a, b);
            let (ag, bg) = (a / g, b / g);
            for j in row..k {
                let (x, y) = (gens[p][j], gens[idx][j]);
                let mut nx = u * x + v * y;
                let mut ny = bg * x - ag * y;
                if j > row {
                    nx = nx.rem_euclid(mi);
                    ny = ny.rem_euclid(mi);
                }
                gens[p][j] = nx;
                gens[idx][j] = ny;
            }
        }
        let p = pivot.expect("m e_row keeps every row nonzero");
        index *= BigUint::from(gens[p][row].unsigned_abs());
        gens.swap_remove(p);
    }
    index
}

/// Number of x in prod Z/n_j solving every row modulo m.
pub fn count_solutions(rows: &[Vec<i64>], moduli: &[u64], m: u64) -> Result<BigUint> {
    check_well_defined(rows, moduli, m)?;
    let total: BigUint = moduli.iter().map(|&n| BigUint::from(n)).product();
    let full = BigUint::from(m).pow(rows.len() as u32);
    // |image| = m^K / index, so count = total * index / m^K.
    Ok(total * column_lattice_index(rows, m) / full)
}

/// Every solution, by direct scan in lexicographic order.
pub fn enumerate_solutions(rows: &[Vec<i64>], moduli: &[u64], m: u64, cap: u64) -> Result<Vec<Vec<u64>>> {
    check_well_defined(rows, moduli, m)?;
    let total: BigUint = moduli.iter().map(|&n| BigUint::from(n)).product();
    if total > BigUint::from(cap) {
        return Err(Error::Budget { count: total.to_string(), cap });
    }
    let mi = i128::from(m);
    let mut x = vec![0u64; moduli.len()];
    let mut out = Vec::new();
    loop {
        let ok = rows.iter().all(|row| {
            row.iter().zip(&x).map(|(&a, &xi)| i128::from(a) * i128::from(xi)).sum::<i128>().rem_euclid(mi) == 0
        });
        if ok {
            out.push(x.clone());
        }
        let mut pos = moduli.len();
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            x[pos] += 1;
            if x[pos] < moduli[pos] {
                break;
            }
            x[pos] = 0;
        }
    }
}
