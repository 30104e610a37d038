//! Bernoulli numbers, Bernoulli polynomials at rational points, and
//! generalized Bernoulli numbers attached to Dirichlet characters.
//!
//! Convention: B_1 = −1/2, so B_1(x) = x − 1/2.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::characters::DirichletChar;
use crate::cycfield::CycElem;
use crate::rat::Rat;

/// Largest index kept in the memo table; larger indices are computed on demand.
pub const CACHE_MAX: u32 = 64;

fn binomial_row(m: u32) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for k in 1..=m {
        let next = &row[k as usize - 1] * BigInt::from(m - k + 1) / BigInt::from(k);
        row.push(next);
    }
    row
}

/// B_0..=B_max from Σ_{j=0}^{m} C(m+1, j) B_j = 0.
pub fn bernoulli_numbers(max: u32) -> Vec<Rat> {
    let mut b: Vec<Rat> = Vec::with_capacity(max as usize + 1);
    b.push(Rat::one());
    for m in 1..=max {
        let row = binomial_row(m + 1);
        let s: Rat = (0..m as usize)
            .map(|j| &b[j] * Rat::from_integer(row[j].clone()))
            .fold(Rat::zero(), |a, x| a + x);
        b.push(-s / Rat::from_integer(BigInt::from(m + 1)));
    }
    b
}

fn cache() -> &'static [Rat] {
    static CACHE: OnceLock<Vec<Rat>> = OnceLock::new();
    CACHE.get_or_init(|| bernoulli_numbers(CACHE_MAX))
}

pub fn bernoulli_number(r: u32) -> Rat {
    if r <= CACHE_MAX {
        cache()[r as usize].clone()
    } else {
        bernoulli_numbers(r).pop().expect("non-empty")
    }
}

/// B_r(x) = Σ_k C(r,k) B_k x^{r−k}, evaluated exactly.
pub fn bernoulli_poly(r: u32, x: &Rat) -> Rat {
    let owned;
    let b: &[Rat] = if r <= CACHE_MAX {
        &cache()[..=r as usize]
    } else {
        owned = bernoulli_numbers(r);
        &owned
    };
    let row = binomial_row(r);
    // Horner; the coefficient of x^{r-k} is C(r,k) B_k.
    let mut acc = Rat::zero();
    for k in 0..=r as usize {
        acc = acc * x + Rat::from_integer(row[k].clone()) * &b[k];
    }
    acc
}

/// B_{r,χ} = f^{r−1} Σ_{j=1}^{f} χ(j) B_r(j/f) for a primitive character of conductor f.
///
/// The result lives in Q(ζ_m), m the order of χ.
pub fn gen_bernoulli(r: u32, chi: &DirichletChar) -> CycElem {
    let f = chi.modulus();
    let m = chi.order();
    let mut acc = CycElem::zero(m);
    for j in 1..=f {
        let Some(e) = chi.value_exp(j as i64) else {
            continue;
        };
        let b = bernoulli_poly(r, &Rat::new(BigInt::from(j), BigInt::from(f)));
        acc = &acc + &CycElem::zeta_pow(m, e as i64).scale(&b);
    }
    let scale = Rat::from_integer(BigInt::from(f).pow(r - 1));
    acc.scale(&scale).canonicalize()
}
