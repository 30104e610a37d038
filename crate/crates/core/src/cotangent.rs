//! Cotangent numbers ct_j, the generalized Bernoulli matrix, and the inverse
//! cotangent numbers ĉt_j.
//!
//! All matrices are indexed by the residue set R = {j : 1 ≤ j ≤ n/2, gcd(j, n) = 1}
//! in ascending order, and the entry at (j, k) carries the subscript j·k*
//! reduced to {1, …, n}, where k* is the inverse of k mod n.
//!
//! Two routes produce ĉt_1:
//! - [`theorem1_ict`], square-free n only: invert the rational matrix B̃ and
//!   combine its first column with the closed-form rows of S⁻¹ or C⁻¹;
//! - [`matrix_ict`], any n ≥ 3: invert the cotangent matrix over Q(ζ_n).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::bernoulli::bernoulli_poly;
use crate::cycfield::CycElem;
use crate::error::{Error, Result};
use crate::matrix::{CycMatrix, RatMatrix};
use crate::ntheory::{coprime, divisors, gcd, is_squarefree, mobius, mod_inverse, modn};
use crate::rat::{format_rat, parse_rat, Rat};
use crate::render::render_terms;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Odd,
    Even,
}

impl Parity {
    pub fn from_weight(r: u32) -> Self {
        if r.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// (−1)^r.
    pub fn sign(self) -> i8 {
        match self {
            Parity::Odd => -1,
            Parity::Even => 1,
        }
    }

    pub fn basis(self) -> Basis {
        match self {
            Parity::Odd => Basis::S,
            Parity::Even => Basis::C,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueSet {
    n: u64,
    elems: Vec<u64>,
}

impl ResidueSet {
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn elems(&self) -> &[u64] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn index_of(&self, j: u64) -> Option<usize> {
        self.elems.binary_search(&j).ok()
    }

    /// Representative of j·k* in {1, …, n}.
    pub fn sub_index(&self, j: u64, k: u64) -> u64 {
        let kinv = mod_inverse(k as i64, self.n).expect("k is a unit");
        let v = j * kinv % self.n;
        if v == 0 {
            self.n
        } else {
            v
        }
    }
}

pub fn residue_set(n: u64) -> Result<ResidueSet> {
    if n < 3 {
        return Err(Error::ModulusTooSmall(n));
    }
    let elems = (1..=n / 2).filter(|&j| gcd(j, n) == 1).collect();
    Ok(ResidueSet { n, elems })
}

fn check_args(n: u64, r: u32) -> Result<()> {
    if n < 3 {
        return Err(Error::ModulusTooSmall(n));
    }
    if r == 0 {
        return Err(Error::WeightTooSmall);
    }
    Ok(())
}

fn check_squarefree(n: u64) -> Result<()> {
    if !is_squarefree(n) {
        return Err(Error::NotSquareFree(n));
    }
    Ok(())
}

fn big(v: u64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

fn frac(a: u64, b: u64) -> Rat {
    Rat::new(BigInt::from(a), BigInt::from(b))
}

/// 2^r n^{r−1} / r.
fn ct_scale(n: u64, r: u32) -> Rat {
    Rat::new(
        BigInt::from(2).pow(r) * BigInt::from(n).pow(r - 1),
        BigInt::from(r),
    )
}

/// ct_1 = i^r cot^{(r−1)}(π/n) as an element of Q(ζ_n), for any n ≥ 3:
/// (2^r n^{r−1}/r) Σ_{k=1}^{n} B_r(k/n) ζ_n^{−k} − δ_{r,1}.
pub fn ct_zeta(n: u64, r: u32) -> Result<CycElem> {
    check_args(n, r)?;
    let mut acc = CycElem::zero(n);
    for k in 1..=n {
        let b = bernoulli_poly(r, &frac(k, n));
        acc = &acc + &CycElem::zeta_pow(n, -(k as i64)).scale(&b);
    }
    let mut ct = acc.scale(&ct_scale(n, r));
    if r == 1 {
        ct = &ct - &CycElem::one(n);
    }
    Ok(ct.canonicalize())
}

/// ct_k = σ_k(ct_1).
pub fn ct_k(n: u64, r: u32, k: i64) -> Result<CycElem> {
    if !coprime(k, n) {
        return Err(Error::NotCoprime { k, n });
    }
    ct_zeta(n, r)?.galois(k)
}

/// B̃_j for every residue j mod n (entries at non-units are zero).
pub fn btilde_table(n: u64, r: u32) -> Result<Vec<Rat>> {
    check_args(n, r)?;
    check_squarefree(n)?;
    let top = if r % 2 == 1 { n - 1 } else { n };
    let mut table = vec![Rat::zero(); n as usize];
    for k in 1..=top {
        let d = gcd(k, n);
        let mu = mobius(d);
        if mu == 0 {
            continue;
        }
        let step = n / d;
        let b = bernoulli_poly(r, &frac(k, n));
        let signed = if mu > 0 { b } else { -b };
        for j in (0..n).filter(|&j| gcd(j, n) == 1 && (j + step - k % step).is_multiple_of(step)) {
            table[j as usize] += &signed;
        }
    }
    let sign = if r.is_multiple_of(2) {
        Rat::one()
    } else {
        -Rat::one()
    };
    let scale = sign * ct_scale(n, r);
    Ok(table.into_iter().map(|x| x * &scale).collect())
}

/// Coefficient of ζ_n^j in ct_1, square-free n.
pub fn btilde_coeff(n: u64, r: u32, j: i64) -> Result<Rat> {
    if !coprime(j, n) {
        return Err(Error::NotCoprime { k: j, n });
    }
    Ok(btilde_table(n, r)?[modn(j, n) as usize].clone())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Basis {
    /// s_j = ζ^j − ζ^{−j}
    #[serde(rename = "s")]
    S,
    /// c_j = ζ^j + ζ^{−j}
    #[serde(rename = "c")]
    C,
}

impl Basis {
    pub fn element(self, n: u64, j: i64) -> CycElem {
        match self {
            Basis::S => CycElem::s(n, j),
            Basis::C => CycElem::c(n, j),
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            Basis::S => "s",
            Basis::C => "c",
        }
    }
}

/// Σ_{j ∈ R} b_j s_j or Σ_{j ∈ R} b_j c_j with rational b_j.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SinCosRepr", into = "SinCosRepr")]
pub struct SinCosExpr {
    pub n: u64,
    pub r: u32,
    pub basis: Basis,
    pub coeffs: BTreeMap<u64, Rat>,
}

#[derive(Serialize, Deserialize)]
struct SinCosRepr {
    n: u64,
    r: u32,
    basis: Basis,
    coeffs: BTreeMap<u64, String>,
}

impl TryFrom<SinCosRepr> for SinCosExpr {
    type Error = Error;

    fn try_from(v: SinCosRepr) -> Result<Self> {
        let coeffs = v
            .coeffs
            .into_iter()
            .map(|(k, s)| Ok((k, parse_rat(&s)?)))
            .collect::<Result<_>>()?;
        Ok(SinCosExpr {
            n: v.n,
            r: v.r,
            basis: v.basis,
            coeffs,
        })
    }
}

impl From<SinCosExpr> for SinCosRepr {
    fn from(v: SinCosExpr) -> Self {
        let coeffs = v.coeffs.iter().map(|(&k, q)| (k, format_rat(q))).collect();
        SinCosRepr {
            n: v.n,
            r: v.r,
            basis: v.basis,
            coeffs,
        }
    }
}

impl SinCosExpr {
    pub fn coeff(&self, j: u64) -> Rat {
        self.coeffs.get(&j).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn to_cyc(&self) -> CycElem {
        let mut acc = CycElem::zero(self.n);
        for (&j, b) in &self.coeffs {
            acc = &acc + &self.basis.element(self.n, j as i64).scale(b);
        }
        acc
    }

    /// Recovers the coefficients of `a` over {s_j} or {c_j}, j ∈ R.
    ///
    /// Fails with [`Error::NotInSubfield`] when `a` is not in their span; for
    /// square-free n the span is the whole purely imaginary (resp. real) part.
    pub fn from_cyc(a: &CycElem, r: u32) -> Result<Self> {
        let n = a.order();
        let rs = residue_set(n)?;
        let basis = Parity::from_weight(r).basis();
        let deg = crate::ntheory::totient(n) as usize;
        let cols: Vec<CycElem> = rs
            .elems()
            .iter()
            .map(|&j| basis.element(n, j as i64).canonicalize())
            .collect();
        let m = RatMatrix::from_fn(deg, cols.len(), |i, j| cols[j].coeffs()[i].clone());
        let target = a.canonicalize();
        let x = m
            .solve(&target.coeffs()[..deg])
            .ok_or(Error::NotInSubfield(n))?;
        Ok(SinCosExpr {
            n,
            r,
            basis,
            coeffs: rs.elems().iter().copied().zip(x).collect(),
        })
    }

    pub fn render(&self) -> String {
        let terms: Vec<(String, Rat)> = self
            .coeffs
            .iter()
            .map(|(j, q)| (format!("{}_{}", self.basis.symbol(), j), q.clone()))
            .collect();
        render_terms(&terms)
    }
}

/// ct_1 over {s_j} (odd r) or {c_j} (even r), square-free n.
pub fn ct_sincos(n: u64, r: u32) -> Result<SinCosExpr> {
    let table = btilde_table(n, r)?;
    let rs = residue_set(n)?;
    Ok(SinCosExpr {
        n,
        r,
        basis: Parity::from_weight(r).basis(),
        coeffs: rs
            .elems()
            .iter()
            .map(|&j| (j, table[j as usize].clone()))
            .collect(),
    })
}

/// B̃ = (B̃_{jk*})_{j,k ∈ R}.
pub fn build_btilde_matrix(n: u64, r: u32) -> Result<RatMatrix> {
    let table = btilde_table(n, r)?;
    let rs = residue_set(n)?;
    let e = rs.elems();
    Ok(RatMatrix::from_fn(rs.len(), rs.len(), |i, j| {
        table[(rs.sub_index(e[i], e[j]) % n) as usize].clone()
    }))
}

/// CT = (ct_{jk*})_{j,k ∈ R}.
pub fn build_ct_matrix(n: u64, r: u32) -> Result<CycMatrix> {
    let ct1 = ct_zeta(n, r)?;
    let rs = residue_set(n)?;
    let e = rs.elems();
    CycMatrix::from_fn(n, rs.len(), rs.len(), |i, j| {
        ct1.galois(rs.sub_index(e[i], e[j]) as i64)
            .expect("unit")
            .canonicalize()
    })
}

/// S = (s_{jk*}) for odd parity, C = (c_{jk*}) for even parity.
pub fn build_sc_matrix(n: u64, parity: Parity) -> Result<CycMatrix> {
    let rs = residue_set(n)?;
    let e = rs.elems();
    let basis = parity.basis();
    CycMatrix::from_fn(n, rs.len(), rs.len(), |i, j| {
        basis.element(n, rs.sub_index(e[i], e[j]) as i64)
    })
}

pub fn invert_rat_matrix(m: &RatMatrix) -> Result<RatMatrix> {
    m.inverse()
}

/// B̂ = B̃⁻¹.
pub fn bhat_matrix(n: u64, r: u32) -> Result<RatMatrix> {
    build_btilde_matrix(n, r)?.inverse()
}

/// λ(k) = #{q ≥ 3 : q | n, k ≡ 1 mod q}, counting every such divisor q.
pub fn lambda_count(n: u64, k: i64) -> u64 {
    divisors(n)
        .into_iter()
        .filter(|&q| q >= 3 && modn(k - 1, q) == 0)
        .count() as u64
}

/// ρ_n = 2 for odd n, 4 for even n.
pub fn rho(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        4
    } else {
        2
    }
}

/// Coefficients of ŝ_k (odd) or ĉ_k (even) over s_l / c_l, l ∈ R.
pub fn sc_inverse_row(n: u64, k: i64, parity: Parity) -> Result<Vec<Rat>> {
    check_squarefree(n)?;
    if !coprime(k, n) {
        return Err(Error::NotCoprime { k, n });
    }
    let rs = residue_set(n)?;
    let inv_n = frac(1, n);
    Ok(rs
        .elems()
        .iter()
        .map(|&l| {
            let plus = lambda_count(n, k * l as i64) as i64;
            let minus = lambda_count(n, -k * l as i64) as i64;
            match parity {
                Parity::Odd => -Rat::from_integer(BigInt::from(plus - minus)) * &inv_n,
                Parity::Even => big(plus as u64 + minus as u64 + rho(n)) * &inv_n,
            }
        })
        .collect())
}

fn combine(n: u64, basis: Basis, coeffs: &[Rat]) -> Result<CycElem> {
    let rs = residue_set(n)?;
    let mut acc = CycElem::zero(n);
    for (&l, b) in rs.elems().iter().zip(coeffs) {
        acc = &acc + &basis.element(n, l as i64).scale(b);
    }
    Ok(acc)
}

/// ŝ_k = (−1/n) Σ_{l ∈ R} (λ(kl) − λ(−kl)) s_l.
pub fn shat(n: u64, k: i64) -> Result<CycElem> {
    combine(n, Basis::S, &sc_inverse_row(n, k, Parity::Odd)?)
}

/// ĉ_k = (1/n) Σ_{l ∈ R} (λ(kl) + λ(−kl) + ρ_n) c_l.
pub fn chat(n: u64, k: i64) -> Result<CycElem> {
    combine(n, Basis::C, &sc_inverse_row(n, k, Parity::Even)?)
}

/// S⁻¹ = (ŝ_{jk*}) or C⁻¹ = (ĉ_{jk*}) from the λ formulas, square-free n.
pub fn build_sc_inverse(n: u64, parity: Parity) -> Result<CycMatrix> {
    check_squarefree(n)?;
    let rs = residue_set(n)?;
    let e = rs.elems();
    let rows: Vec<CycElem> = (1..=n)
        .map(|k| {
            if gcd(k, n) != 1 {
                return Ok(CycElem::zero(n));
            }
            match parity {
                Parity::Odd => shat(n, k as i64),
                Parity::Even => chat(n, k as i64),
            }
        })
        .collect::<Result<_>>()?;
    CycMatrix::from_fn(n, rs.len(), rs.len(), |i, j| {
        rows[(rs.sub_index(e[i], e[j]) - 1) as usize].clone()
    })
}

/// ĉt_1 over {s_j} (odd r) or {c_j} (even r) for square-free n:
/// Σ_{j ∈ R} B̂_{j,1} ŝ_j, resp. Σ_{j ∈ R} B̂_{j,1} ĉ_j.
pub fn theorem1_ict(n: u64, r: u32) -> Result<SinCosExpr> {
    check_args(n, r)?;
    check_squarefree(n)?;
    let bhat = bhat_matrix(n, r)?;
    ict_from_bhat(n, r, &bhat)
}

/// Same as [`theorem1_ict`], reusing an already inverted B̃.
pub fn ict_from_bhat(n: u64, r: u32, bhat: &RatMatrix) -> Result<SinCosExpr> {
    let rs = residue_set(n)?;
    let parity = Parity::from_weight(r);
    let mut coeffs = vec![Rat::zero(); rs.len()];
    for (row, &j) in rs.elems().iter().enumerate() {
        let weight = bhat.get(row, 0);
        if weight.is_zero() {
            continue;
        }
        for (acc, c) in coeffs.iter_mut().zip(sc_inverse_row(n, j as i64, parity)?) {
            *acc += weight * c;
        }
    }
    Ok(SinCosExpr {
        n,
        r,
        basis: parity.basis(),
        coeffs: rs.elems().iter().copied().zip(coeffs).collect(),
    })
}

/// ĈT = CT⁻¹ over Q(ζ_n), any n ≥ 3, together with its (1,1) entry ĉt_1.
pub fn matrix_ict(n: u64, r: u32) -> Result<(CycElem, CycMatrix)> {
    check_args(n, r)?;
    let ct = build_ct_matrix(n, r)?;
    let inv = ct.inverse().map_err(|e| match e {
        // CT is invertible for every n ≥ 3; reaching this means an arithmetic bug.
        Error::Singular => panic!("cotangent matrix for n={n}, r={r} came out singular"),
        other => other,
    })?;
    Ok((inv.get(0, 0).clone(), inv))
}

/// ĉt_1 by the cheapest available route: the B̃ route for square-free n, matrix inversion otherwise.
pub fn ict_one(n: u64, r: u32) -> Result<CycElem> {
    if is_squarefree(n) {
        Ok(theorem1_ict(n, r)?.to_cyc().canonicalize())
    } else {
        Ok(matrix_ict(n, r)?.0)
    }
}

/// ĉt_k = σ_{k*}(ĉt_1).
pub fn ict_galois(n: u64, r: u32, k: i64) -> Result<CycElem> {
    let kinv = mod_inverse(k, n)?;
    ict_one(n, r)?.galois(kinv as i64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum HalfBasis {
    /// sa_m = i sin(πm/n)
    #[serde(rename = "sa")]
    Sa,
    /// ca_m = cos(πm/n)
    #[serde(rename = "ca")]
    Ca,
}

impl HalfBasis {
    pub fn symbol(self) -> &'static str {
        match self {
            HalfBasis::Sa => "sa",
            HalfBasis::Ca => "ca",
        }
    }
}

/// Σ b_m sa_m or Σ b_m ca_m.
#[derive(Debug, Clone, PartialEq)]
pub struct HalfAngleExpr {
    pub n: u64,
    pub r: u32,
    pub basis: HalfBasis,
    pub coeffs: BTreeMap<u64, Rat>,
}

impl HalfAngleExpr {
    pub fn render(&self) -> String {
        let terms: Vec<(String, Rat)> = self
            .coeffs
            .iter()
            .map(|(m, q)| (format!("{}_{}", self.basis.symbol(), m), q.clone()))
            .collect();
        render_terms(&terms)
    }

    pub fn embed(&self) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (&m, q) in &self.coeffs {
            let theta = std::f64::consts::PI * m as f64 / self.n as f64;
            let v = q.to_f64().unwrap_or(f64::NAN);
            acc += match self.basis {
                HalfBasis::Sa => Complex64::new(0.0, v * theta.sin()),
                HalfBasis::Ca => Complex64::new(v * theta.cos(), 0.0),
            };
        }
        acc
    }

    /// Drops zero coefficients.
    pub fn nonzero(&self) -> BTreeMap<u64, Rat> {
        self.coeffs
            .iter()
            .filter(|(_, q)| !q.is_zero())
            .map(|(&m, q)| (m, q.clone()))
            .collect()
    }
}

/// Rewrites s_l = 2 sa_{m} and c_l = ±2 ca_{m} with m = min(2l, n − 2l); the cosine
/// picks up a minus sign when m = n − 2l.
pub fn half_angle_convert(expr: &SinCosExpr) -> HalfAngleExpr {
    let n = expr.n;
    let two = big(2);
    let mut coeffs: BTreeMap<u64, Rat> = BTreeMap::new();
    for (&l, b) in &expr.coeffs {
        let (m, flipped) = if 2 * l <= n - 2 * l {
            (2 * l, false)
        } else {
            (n - 2 * l, true)
        };
        let v = match (expr.basis, flipped) {
            (Basis::C, true) => -(b * &two),
            _ => b * &two,
        };
        *coeffs.entry(m).or_insert_with(Rat::zero) += v;
    }
    let basis = match expr.basis {
        Basis::S => HalfBasis::Sa,
        Basis::C => HalfBasis::Ca,
    };
    HalfAngleExpr {
        n,
        r: expr.r,
        basis,
        coeffs,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, rat};
    use std::f64::consts::PI;

    /// i^r cot^{(r−1)}(x) from the polynomial recursion of the cotangent derivatives:
    /// with u = cot x, d/dx P(u) = −(1 + u²) P'(u).
    fn ct_float(n: u64, r: u32, k: i64) -> Complex64 {
        let mut poly = vec![0.0, 1.0]; // P(u) = u
        for _ in 1..r {
            let deriv: Vec<f64> = (1..poly.len()).map(|i| i as f64 * poly[i]).collect();
            let mut next = vec![0.0; deriv.len() + 2];
            for (i, d) in deriv.iter().enumerate() {
                next[i] -= d;
                next[i + 2] -= d;
            }
            poly = next;
        }
        let u = 1.0 / (PI * k as f64 / n as f64).tan();
        let val: f64 = poly.iter().rev().fold(0.0, |acc, c| acc * u + c);
        Complex64::new(0.0, 1.0).powu(r) * val
    }

    #[test]
    fn residue_sets() {
        assert_eq!(residue_set(11).unwrap().elems(), &[1, 2, 3, 4, 5]);
        assert_eq!(residue_set(14).unwrap().elems(), &[1, 3, 5]);
        assert_eq!(residue_set(15).unwrap().elems(), &[1, 2, 4, 7]);
        assert_eq!(residue_set(2), Err(Error::ModulusTooSmall(2)));
        for n in 3..100 {
            assert_eq!(
                residue_set(n).unwrap().len() as u64,
                crate::ntheory::totient(n) / 2
            );
        }
    }

    #[test]
    fn ct_small_values() {
        assert_eq!(ct_zeta(4, 1).unwrap(), CycElem::zeta_pow(4, 1));
        assert_eq!(ct_zeta(3, 2).unwrap().as_rational(), Some(rat(4, 3)));
        let e = ct_zeta(5, 1).unwrap().embed();
        assert!(e.re.abs() < 1e-14 && (e.im - 1.3763819204711736).abs() < 1e-13);
        let e = ct_k(5, 1, 2).unwrap().embed();
        assert!((e.im - 0.3249196962329063).abs() < 1e-13);
        assert!(ct_k(15, 2, 3).is_err());
    }

    #[test]
    fn ct_matches_cotangent_derivatives() {
        for n in 3..=16u64 {
            for r in 1..=5u32 {
                let ct = ct_zeta(n, r).unwrap();
                for k in (1..n as i64).filter(|&k| coprime(k, n)) {
                    let got = ct.galois(k).unwrap().embed();
                    let want = ct_float(n, r, k);
                    assert!(
                        (got - want).norm() < 1e-8 * (1.0 + want.norm()),
                        "n={n} r={r} k={k}"
                    );
                }
            }
        }
    }

    #[test]
    fn ct_conjugation_sign() {
        for n in [7u64, 9, 12, 15] {
            for r in 1..=4 {
                let ct = ct_zeta(n, r).unwrap();
                let flipped = ct_k(n, r, n as i64 - 1).unwrap();
                let expect = if r % 2 == 0 { ct.clone() } else { -ct.clone() };
                assert_eq!(flipped, expect);
            }
        }
    }

    #[test]
    fn btilde_examples() {
        assert_eq!(btilde_coeff(3, 2, 1).unwrap(), rat(-4, 3));
        assert_eq!(ct_sincos(3, 2).unwrap().render(), "-4/3*c_1");
        assert_eq!(btilde_coeff(12, 2, 1), Err(Error::NotSquareFree(12)));
        for p in [3u64, 5, 7, 11, 13] {
            for r in 1..=4u32 {
                let scale = ct_scale(p, r);
                for j in 1..p {
                    let x = frac(j, p);
                    let expect = if r % 2 == 1 {
                        -(&scale * bernoulli_poly(r, &x))
                    } else {
                        &scale * (bernoulli_poly(r, &x) - bernoulli_poly(r, &int(1)))
                    };
                    assert_eq!(
                        btilde_coeff(p, r, j as i64).unwrap(),
                        expect,
                        "p={p} r={r} j={j}"
                    );
                }
            }
        }
    }

    #[test]
    fn btilde_reflection() {
        for n in [5u64, 6, 10, 14, 15, 21, 30] {
            for r in 1..=4u32 {
                let t = btilde_table(n, r).unwrap();
                for j in (1..n).filter(|&j| gcd(j, n) == 1) {
                    let expect = if r % 2 == 0 {
                        t[j as usize].clone()
                    } else {
                        -t[j as usize].clone()
                    };
                    assert_eq!(t[(n - j) as usize], expect);
                }
            }
        }
    }

    #[test]
    fn sincos_equals_zeta_form() {
        for n in (5..=30u64).filter(|&n| is_squarefree(n)) {
            for r in 1..=4 {
                let sc = ct_sincos(n, r).unwrap();
                let ct = ct_zeta(n, r).unwrap();
                assert_eq!(sc.to_cyc(), ct, "n={n} r={r}");
                assert_eq!(SinCosExpr::from_cyc(&ct, r).unwrap(), sc);
            }
        }
    }

    #[test]
    fn ct_factors_through_btilde() {
        for n in [11u64, 13, 14, 15] {
            for r in 1..=4 {
                let ct = build_ct_matrix(n, r).unwrap();
                let sc = build_sc_matrix(n, Parity::from_weight(r)).unwrap();
                let bt = build_btilde_matrix(n, r).unwrap().transpose();
                let bt_cyc = CycMatrix::from_fn(n, bt.rows(), bt.cols(), |i, j| {
                    CycElem::from_rat(n, bt.get(i, j).clone())
                })
                .unwrap();
                assert_eq!(sc.mul(&bt_cyc).unwrap(), ct, "n={n} r={r}");
            }
        }
    }

    #[test]
    fn ct_matrix_entries() {
        let m = build_ct_matrix(3, 2).unwrap();
        assert_eq!((m.rows(), m.cols()), (1, 1));
        assert_eq!(m.get(0, 0), &ct_zeta(3, 2).unwrap());
        let n = 13;
        let rs = residue_set(n).unwrap();
        let m = build_ct_matrix(n, 3).unwrap();
        for (i, &j) in rs.elems().iter().enumerate() {
            for (c, &k) in rs.elems().iter().enumerate() {
                let sub = (j * mod_inverse(k as i64, n).unwrap()) as i64;
                assert_eq!(m.get(i, c), &ct_k(n, 3, sub).unwrap());
            }
        }
    }

    #[test]
    fn lambda_examples() {
        assert_eq!(lambda_count(15, 1), 3);
        assert_eq!(lambda_count(11, 1), 1);
        assert_eq!(lambda_count(15, 4), 1);
        assert_eq!(lambda_count(15, 2), 0);
    }

    #[test]
    fn prime_inverse_rows() {
        for p in [5u64, 7, 11, 13] {
            for j in 1..p as i64 {
                let jinv = mod_inverse(j, p).unwrap() as i64;
                let s_expect = -CycElem::s(p, jinv).scale(&frac(1, p));
                assert_eq!(shat(p, j).unwrap(), s_expect);
                let c_expect =
                    (&CycElem::c(p, jinv) - &CycElem::from_rat(p, int(2))).scale(&frac(1, p));
                assert_eq!(chat(p, j).unwrap(), c_expect);
            }
        }
    }

    #[test]
    fn closed_inverse_rows_match_matrix_inverse() {
        let n = 15;
        let s = build_sc_matrix(n, Parity::Odd).unwrap();
        let inv = s.inverse().unwrap();
        let formula = build_sc_inverse(n, Parity::Odd).unwrap();
        assert_eq!(inv, formula);
        assert_eq!(formula.get(0, 0), &shat(15, 1).unwrap());
    }

    #[test]
    fn theorem1_rows() {
        let e = theorem1_ict(14, 1).unwrap();
        assert_eq!(e.coeff(1), Rat::zero());
        assert_eq!(e.coeff(3), rat(-1, 14));
        assert_eq!(e.coeff(5), rat(-1, 14));
        assert_eq!(half_angle_convert(&e).render(), "-1/7*sa_4 - 1/7*sa_6");
        let e = theorem1_ict(15, 2).unwrap();
        assert_eq!(
            half_angle_convert(&e).render(),
            "1/192*ca_1 + 7/192*ca_2 + 11/960*ca_4 - 19/960*ca_7"
        );
        assert_eq!(theorem1_ict(9, 2), Err(Error::NotSquareFree(9)));
    }

    #[test]
    fn half_angle_single_term() {
        let e = SinCosExpr {
            n: 9,
            r: 1,
            basis: Basis::S,
            coeffs: [(1, rat(3, 5))].into(),
        };
        let h = half_angle_convert(&e);
        assert_eq!(h.coeffs, [(2, rat(6, 5))].into());
        assert!((h.embed() - e.to_cyc().embed()).norm() < 1e-12);
    }

    #[test]
    fn half_angle_embedding_agrees() {
        for n in [11u64, 12, 13, 14, 15, 21, 30] {
            let rs = residue_set(n).unwrap();
            for basis in [Basis::S, Basis::C] {
                let coeffs = rs
                    .elems()
                    .iter()
                    .map(|&j| (j, rat(j as i64 * 7 - 20, 3 + j as i64)))
                    .collect();
                let e = SinCosExpr {
                    n,
                    r: 1,
                    basis,
                    coeffs,
                };
                let h = half_angle_convert(&e);
                assert!((h.embed() - e.to_cyc().embed()).norm() < 1e-10, "n={n}");
            }
        }
    }

    #[test]
    fn sincos_serialization() {
        let e = theorem1_ict(15, 3).unwrap();
        let json = serde_json::to_string(&e).unwrap();
        assert!(
            json.starts_with(r#"{"n":15,"r":3,"basis":"s","coeffs":{"1":"#),
            "{json}"
        );
        let back: SinCosExpr = serde_json::from_str(&json).unwrap();
        assert_eq!(back, e);
        assert_eq!(serde_json::to_string(&back).unwrap(), json);
    }

    #[test]
    fn parity_of_ict() {
        for n in [11u64, 14, 15] {
            for r in 1..=4 {
                let v = theorem1_ict(n, r).unwrap().to_cyc().embed();
                if r % 2 == 0 {
                    assert!(v.im.abs() < 1e-14, "n={n} r={r}");
                } else {
                    assert!(v.re.abs() < 1e-14, "n={n} r={r}");
                }
            }
        }
    }

    #[test]
    fn galois_conjugates_of_ict_are_independent() {
        for n in [11u64, 13, 14, 15] {
            for r in 1..=4 {
                let ict = ict_one(n, r).unwrap();
                let rs = residue_set(n).unwrap();
                let vecs: Vec<SinCosExpr> = rs
                    .elems()
                    .iter()
                    .map(|&j| SinCosExpr::from_cyc(&ict.galois(j as i64).unwrap(), r).unwrap())
                    .collect();
                let m = RatMatrix::from_fn(rs.len(), rs.len(), |i, c| vecs[i].coeff(rs.elems()[c]));
                assert!(m.inverse().is_ok(), "n={n} r={r}");
            }
        }
    }

    #[test]
    fn ict_galois_action() {
        let (n, r) = (13u64, 3u32);
        let (ict1, m) = matrix_ict(n, r).unwrap();
        assert_eq!(ict_galois(n, r, 1).unwrap(), ict1);
        let rs = residue_set(n).unwrap();
        for (i, &j) in rs.elems().iter().enumerate() {
            let cj = ict_galois(n, r, j as i64).unwrap();
            assert_eq!(ict_galois(n, r, -(j as i64)).unwrap(), cj.scale(&int(-1)));
            // ĉt_j sits at (j, 1) of ĈT, and (ĈT)^T has entries σ_{jk*}(ĉt_1)
            assert_eq!(m.get(i, 0), &cj);
            for (c, &k) in rs.elems().iter().enumerate() {
                let sub = rs.sub_index(j, k) as i64;
                assert_eq!(m.get(c, i), &ict1.galois(sub).unwrap());
            }
        }
    }
}
