//! Cross-checks between the independent routes to ĉt_1.

use std::fmt;
use std::str::FromStr;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::characters::theorem2_ict;
use crate::cotangent::{self, build_ct_matrix, matrix_ict, theorem1_ict};
use crate::cycfield::CycElem;
use crate::error::{Error, Result};
use crate::ntheory::is_squarefree;
use crate::series::{bhat_series, MobiusSieve};

/// Agreement demanded from r = 1 partial sums. The series converges only
/// conditionally there, so this is an empirical tolerance, not a bound.
pub const R1_TOLERANCE: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Theorem1,
    Theorem2,
    Matrix,
    Series,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Theorem1 => "theorem1",
            Method::Theorem2 => "theorem2",
            Method::Matrix => "matrix",
            Method::Series => "series",
        }
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "theorem1" => Ok(Method::Theorem1),
            "theorem2" => Ok(Method::Theorem2),
            "matrix" => Ok(Method::Matrix),
            "series" => Ok(Method::Series),
            other => Err(Error::Parse(format!("unknown method {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        if self.detail.is_empty() {
            write!(f, "{tag} {}", self.name)
        } else {
            write!(f, "{tag} {}: {}", self.name, self.detail)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub n: u64,
    pub r: u32,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Runs the requested routes and compares every pair of exact results.
///
/// With `Method::Matrix`, CT·ĈT = I is checked as well. `Method::Series` compares the
/// partial sum of the Möbius series for ĉt_1 with the exact value, and for square-free n
/// also the series for B̂_{1,1}.
pub fn verify(n: u64, r: u32, methods: &[Method], series_limit: u64) -> Result<Report> {
    let mut exact: Vec<(Method, CycElem)> = Vec::new();
    let mut checks = Vec::new();
    for &m in methods {
        match m {
            Method::Theorem1 => exact.push((m, theorem1_ict(n, r)?.to_cyc().canonicalize())),
            Method::Theorem2 => exact.push((m, theorem2_ict(n, r)?)),
            Method::Matrix => {
                let (ict, inv) = matrix_ict(n, r)?;
                let ct = build_ct_matrix(n, r)?;
                checks.push(Check::new(
                    "orthogonality CT*ICT = I",
                    ct.mul(&inv)?.is_identity(),
                    "",
                ));
                exact.push((m, ict));
            }
            Method::Series => {}
        }
    }
    for i in 0..exact.len() {
        for j in i + 1..exact.len() {
            let (ma, a) = &exact[i];
            let (mb, b) = &exact[j];
            checks.push(Check::new(
                format!("{} = {}", ma.name(), mb.name()),
                a == b,
                "",
            ));
        }
    }
    if methods.contains(&Method::Series) {
        let reference = match exact.first() {
            Some((_, e)) => e.clone(),
            None => cotangent::ict_one(n, r)?,
        };
        checks.extend(series_checks(n, r, &reference, series_limit)?);
    }
    Ok(Report { n, r, checks })
}

fn series_checks(n: u64, r: u32, exact: &CycElem, limit: u64) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let sieve = MobiusSieve::new(limit)?;
    let numeric = sieve.ict_numeric(n, r, 1, limit)?;
    let want = exact.embed();
    let err = (numeric.value - want).norm();
    let tol = numeric
        .error_bound()
        .map_or(R1_TOLERANCE, |b| b + exact.embed_error_bound());
    out.push(Check::new(
        format!("series ict_1 (limit {limit})"),
        err <= tol,
        format!(
            "numeric {:.16e}{:+.16e}i vs exact {:.16e}{:+.16e}i, |diff| {err:.3e} <= {tol:.3e}",
            numeric.value.re, numeric.value.im, want.re, want.im
        ),
    ));
    if is_squarefree(n) {
        let bhat = cotangent::bhat_matrix(n, r)?;
        let exact11 = bhat.get(0, 0);
        let exact_f = exact11.to_f64().unwrap_or(f64::NAN);
        let s = bhat_series(n, r, limit)?;
        let err = (s.value - exact_f).abs();
        let tol = s.tail_bound.map_or(R1_TOLERANCE, |t| t + s.rounding_bound);
        out.push(Check::new(
            format!("series Bhat_11 (limit {limit})"),
            err <= tol,
            format!(
                "numeric {:.19} vs exact {} = {:.19}, |diff| {err:.3e} <= {tol:.3e}",
                s.value, exact11, exact_f
            ),
        ));
    }
    Ok(out)
}
