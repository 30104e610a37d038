//! Dense univariate polynomials, coefficients stored low degree first.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::ntheory::divisors;
use crate::rat::Rat;

/// The `n`-th cyclotomic polynomial with integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycloPoly {
    n: u64,
    coeffs: Vec<BigInt>,
}

impl CycloPoly {
    pub fn n(&self) -> u64 {
        self.n
    }

    /// Equals φ(n).
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn to_rat(&self) -> Vec<Rat> {
        self.coeffs.iter().cloned().map(Rat::from_integer).collect()
    }
}

fn cache() -> &'static Mutex<HashMap<u64, Arc<CycloPoly>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<CycloPoly>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Φ_n, by exact division of `x^n - 1` by the product of Φ_d over proper divisors `d`.
///
/// Results are memoized; the memo is a pure cache and never changes a value.
pub fn cyclotomic_poly(n: u64) -> Arc<CycloPoly> {
    assert!(n >= 1, "cyclotomic_poly needs n >= 1");
    if let Some(p) = cache().lock().unwrap().get(&n) {
        return Arc::clone(p);
    }
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::one();
    for d in divisors(n) {
        if d == n {
            continue;
        }
        let phi_d = cyclotomic_poly(d);
        num = int_div_monic(&num, phi_d.coeffs());
    }
    let p = Arc::new(CycloPoly { n, coeffs: num });
    cache().lock().unwrap().insert(n, Arc::clone(&p));
    p
}

/// Exact quotient by a monic integer polynomial. Panics if the division leaves a remainder.
pub(crate) fn int_div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    if rem.len() <= dd {
        assert!(rem.iter().all(Zero::is_zero), "inexact polynomial division");
        return vec![BigInt::zero()];
    }
    let mut q = vec![BigInt::zero(); rem.len() - dd];
    for i in (0..q.len()).rev() {
        let c = rem[i + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[i + j] -= &c * dj;
        }
        q[i] = c;
    }
    assert!(rem.iter().all(Zero::is_zero), "inexact polynomial division");
    q
}

#[cfg(test)]
pub(crate) fn int_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

pub(crate) fn trim(p: &mut Vec<Rat>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

/// Degree of a trimmed polynomial; `None` for zero.
fn degree(p: &[Rat]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

/// Remainder of `p` modulo a monic integer polynomial, in place. Leaves `p.len()` unchanged.
pub(crate) fn reduce_monic_in_place(p: &mut [Rat], modulus: &[BigInt]) {
    let dm = modulus.len() - 1;
    for k in (dm..p.len()).rev() {
        if p[k].is_zero() {
            continue;
        }
        let c = std::mem::replace(&mut p[k], Rat::zero());
        let shift = k - dm;
        for (j, mj) in modulus.iter().enumerate().take(dm) {
            if mj.is_zero() {
                continue;
            }
            p[shift + j] -= &c * Rat::from_integer(mj.clone());
        }
    }
}

pub(crate) fn divrem(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let db = degree(b).expect("polynomial division by zero");
    let mut rem = a.to_vec();
    trim(&mut rem);
    if rem.len() <= db {
        return (Vec::new(), rem);
    }
    let lead_inv = b[db].recip();
    let mut q = vec![Rat::zero(); rem.len() - db];
    for i in (0..q.len()).rev() {
        let c = &rem[i + db] * &lead_inv;
        if c.is_zero() {
            continue;
        }
        for j in 0..=db {
            if !b[j].is_zero() {
                rem[i + j] -= &c * &b[j];
            }
        }
        q[i] = c;
    }
    trim(&mut rem);
    trim(&mut q);
    (q, rem)
}

pub(crate) fn mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    trim(&mut out);
    out
}

fn sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(&mut out);
    out
}

/// Inverse of `a` modulo `m` by the extended Euclidean algorithm, or `None`
/// when `gcd(a, m)` is not a unit.
pub(crate) fn inverse_mod(a: &[Rat], m: &[Rat]) -> Option<Vec<Rat>> {
    let mut r0 = m.to_vec();
    let mut r1 = a.to_vec();
    trim(&mut r0);
    trim(&mut r1);
    if r1.is_empty() {
        return None;
    }
    let mut s0: Vec<Rat> = Vec::new();
    let mut s1: Vec<Rat> = vec![Rat::one()];
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1);
        let s2 = sub(&s0, &mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    if r0.len() != 1 {
        return None;
    }
    let c = r0[0].recip();
    Some(s0.into_iter().map(|x| x * &c).collect())
}
