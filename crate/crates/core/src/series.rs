//! Floating-point partial sums of the Möbius series defining ĉt_j, and of the
//! series whose values are entries of B̂. These are numeric cross-checks for
//! the exact routes, not a source of exact values.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::ntheory::{coprime, gcd, is_squarefree, mod_inverse};

pub const MAX_LIMIT: u64 = 10_000_000;

/// Möbius values μ(0..=limit) from a linear sieve. μ(0) is stored as 0.
#[derive(Debug, Clone)]
pub struct MobiusSieve {
    mu: Vec<i8>,
}

impl MobiusSieve {
    pub fn new(limit: u64) -> Result<Self> {
        if limit > MAX_LIMIT {
            return Err(Error::Limit {
                limit,
                min: 1,
                max: MAX_LIMIT,
            });
        }
        let n = limit as usize;
        let mut mu = vec![0i8; n + 1];
        let mut composite = vec![false; n + 1];
        let mut primes: Vec<usize> = Vec::new();
        if n >= 1 {
            mu[1] = 1;
        }
        for i in 2..=n {
            if !composite[i] {
                primes.push(i);
                mu[i] = -1;
            }
            for &p in &primes {
                let ip = i * p;
                if ip > n {
                    break;
                }
                composite[ip] = true;
                if i % p == 0 {
                    mu[ip] = 0;
                    break;
                }
                mu[ip] = -mu[i];
            }
        }
        Ok(MobiusSieve { mu })
    }

    pub fn limit(&self) -> u64 {
        self.mu.len() as u64 - 1
    }

    pub fn mu(&self, m: u64) -> i8 {
        self.mu[m as usize]
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesResult {
    pub n: u64,
    pub r: u32,
    pub j: i64,
    pub limit: u64,
    pub value: Complex64,
    /// Bound on the omitted tail Σ_{|m| > limit}; `None` for r = 1, where
    /// the series converges only conditionally.
    pub tail_bound: Option<f64>,
    /// Bound on accumulated floating-point rounding in the partial sum.
    pub rounding_bound: f64,
}

/// Flat, serializable form of a [`SeriesResult`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesRecord {
    pub n: u64,
    pub r: u32,
    pub j: i64,
    pub limit: u64,
    pub re: f64,
    pub im: f64,
    pub tail_bound: Option<f64>,
    pub rounding_bound: f64,
}

impl From<&SeriesResult> for SeriesRecord {
    fn from(s: &SeriesResult) -> Self {
        SeriesRecord {
            n: s.n,
            r: s.r,
            j: s.j,
            limit: s.limit,
            // + 0.0 turns −0.0 into 0.0
            re: s.value.re + 0.0,
            im: s.value.im + 0.0,
            tail_bound: s.tail_bound,
            rounding_bound: s.rounding_bound,
        }
    }
}

impl SeriesResult {
    /// Tail plus rounding, when the tail is bounded.
    pub fn error_bound(&self) -> Option<f64> {
        self.tail_bound.map(|t| t + self.rounding_bound)
    }
}

/// Σ_{m > limit, m ≡ a mod n} m^{−r} ≤ (limit+1)^{−r} + (limit+1)^{1−r} / (n (r−1)), r ≥ 2.
pub fn progression_tail(n: u64, r: u32, limit: u64) -> f64 {
    assert!(r >= 2);
    let x = (limit + 1) as f64;
    x.powi(-(r as i32)) + x.powi(1 - r as i32) / (n as f64 * (r - 1) as f64)
}

/// Σ_{m > limit} m^{−r} ≤ limit^{1−r} / (r−1), r ≥ 2.
pub fn full_tail(r: u32, limit: u64) -> f64 {
    assert!(r >= 2);
    (limit as f64).powi(1 - r as i32) / (r - 1) as f64
}

fn check(n: u64, j: i64, limit: u64) -> Result<()> {
    if n < 3 {
        return Err(Error::ModulusTooSmall(n));
    }
    if !coprime(j, n) {
        return Err(Error::NotCoprime { k: j, n });
    }
    if limit < n || limit > MAX_LIMIT {
        return Err(Error::Limit {
            limit,
            min: n,
            max: MAX_LIMIT,
        });
    }
    Ok(())
}

impl MobiusSieve {
    /// Σ_{|m| ≤ limit, m ≡ j mod n} μ(|m|) / m^r over a symmetric window.
    pub fn dhat(&self, n: u64, r: u32, j: i64, limit: u64) -> Result<SeriesResult> {
        check(n, j, limit)?;
        if limit > self.limit() {
            return Err(Error::Limit {
                limit,
                min: n,
                max: self.limit(),
            });
        }
        let neg_sign = if r.is_multiple_of(2) { 1.0 } else { -1.0 };
        let pos_start = j.rem_euclid(n as i64) as u64;
        let neg_start = (-j).rem_euclid(n as i64) as u64;
        let mut sum = 0.0f64;
        let mut abs_sum = 0.0f64;
        let mut terms = 0u64;
        for (start, sign) in [(pos_start, 1.0), (neg_start, neg_sign)] {
            let mut m = if start == 0 { n } else { start };
            while m <= limit {
                let mu = self.mu(m);
                if mu != 0 {
                    let t = sign * mu as f64 / (m as f64).powi(r as i32);
                    sum += t;
                    abs_sum += t.abs();
                    terms += 1;
                }
                m += n;
            }
        }
        let tail_bound = (r >= 2).then(|| 2.0 * progression_tail(n, r, limit));
        let rounding_bound = rounding(terms, abs_sum);
        Ok(SeriesResult {
            n,
            r,
            j,
            limit,
            value: Complex64::new(sum, 0.0),
            tail_bound,
            rounding_bound,
        })
    }
}

/// Recursive summation error bound γ_N Σ|t|, with one extra ulp per term for the power.
fn rounding(terms: u64, abs_sum: f64) -> f64 {
    let eps = f64::EPSILON / 2.0;
    let n = (terms + 2) as f64 * 4.0;
    n * eps * abs_sum / (1.0 - n * eps)
}

pub fn dhat_series(n: u64, r: u32, j: i64, limit: u64) -> Result<SeriesResult> {
    MobiusSieve::new(limit)?.dhat(n, r, j, limit)
}

/// −i^r π^r / ((r−1)! n^r), the factor taking D̂_j to ĉt_j.
pub fn normalization(n: u64, r: u32) -> Complex64 {
    let fact: f64 = (1..r).map(|k| k as f64).product();
    let mag = (PI / n as f64).powi(r as i32) / fact;
    -Complex64::new(0.0, 1.0).powu(r) * mag
}

/// ĉt_j ≈ normalization · D̂_j, with the error bound scaled alongside.
pub fn ict_numeric_with_bound(n: u64, r: u32, j: i64, limit: u64) -> Result<SeriesResult> {
    let s = dhat_series(n, r, j, limit)?;
    Ok(scale_result(s, normalization(n, r)))
}

fn scale_result(s: SeriesResult, factor: Complex64) -> SeriesResult {
    let k = factor.norm();
    SeriesResult {
        value: s.value * factor,
        tail_bound: s.tail_bound.map(|t| t * k),
        rounding_bound: s.rounding_bound * k + 4.0 * f64::EPSILON * (s.value * factor).norm(),
        ..s
    }
}

impl MobiusSieve {
    pub fn ict_numeric(&self, n: u64, r: u32, j: i64, limit: u64) -> Result<SeriesResult> {
        Ok(scale_result(
            self.dhat(n, r, j, limit)?,
            normalization(n, r),
        ))
    }
}

pub fn ict_numeric(n: u64, r: u32, j: i64, limit: u64) -> Result<Complex64> {
    Ok(ict_numeric_with_bound(n, r, j, limit)?.value)
}

/// Truncated series for B̂_{1,1}, square-free n:
/// σ · 2π^r / (n^r (r−1)!) Σ_{m ≤ limit, (m,n)=1} μ(m) f(2π m*/n) / m^r,
/// with f = sin, σ = (−1)^{(r−1)/2} for odd r and f = cos, σ = (−1)^{r/2−1} for even r.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BhatSeries {
    pub value: f64,
    pub tail_bound: Option<f64>,
    pub rounding_bound: f64,
}

pub fn bhat_series(n: u64, r: u32, limit: u64) -> Result<BhatSeries> {
    if !is_squarefree(n) {
        return Err(Error::NotSquareFree(n));
    }
    check(n, 1, limit)?;
    if r == 0 {
        return Err(Error::WeightTooSmall);
    }
    let sieve = MobiusSieve::new(limit)?;
    let mut sum = 0.0f64;
    let mut abs_sum = 0.0f64;
    let mut terms = 0u64;
    for m in 1..=limit {
        let mu = sieve.mu(m);
        if mu == 0 || gcd(m, n) != 1 {
            continue;
        }
        let minv = mod_inverse(m as i64, n)? as f64;
        let theta = 2.0 * PI * minv / n as f64;
        let f = if r % 2 == 1 { theta.sin() } else { theta.cos() };
        let t = mu as f64 * f / (m as f64).powi(r as i32);
        sum += t;
        abs_sum += t.abs();
        terms += 1;
    }
    // (−1)^{(r−1)/2} for odd r and (−1)^{r/2−1} for even r are both (−1)^{⌊(r−1)/2⌋}.
    let sign = if ((r - 1) / 2).is_multiple_of(2) {
        1.0
    } else {
        -1.0
    };
    let fact: f64 = (1..r).map(|k| k as f64).product();
    let scale = 2.0 * PI.powi(r as i32) / ((n as f64).powi(r as i32) * fact);
    let value = sign * scale * sum;
    Ok(BhatSeries {
        value,
        tail_bound: (r >= 2).then(|| scale * full_tail(r, limit)),
        rounding_bound: scale * rounding(terms, abs_sum) + 4.0 * f64::EPSILON * value.abs(),
    })
}

/// The value of [`bhat_series`] alone.
pub fn prop4_value(n: u64, r: u32, limit: u64) -> Result<f64> {
    Ok(bhat_series(n, r, limit)?.value)
}
