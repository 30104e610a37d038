//! Dirichlet characters, Gauss sums, and character coordinates.
//!
//! Characters are encoded by exponents on a fixed set of generators of
//! (Z/nZ)*; values are powers of a primitive root of unity whose order is the
//! order of the character. A factor 2 of n contributes no generator, so for
//! n ≡ 2 mod 4 the characters mod n coincide with those mod n/2.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bernoulli::gen_bernoulli;
use crate::cotangent::{self, residue_set, Parity};
use crate::cycfield::CycElem;
use crate::error::{Error, Result};
use crate::matrix::CycMatrix;
use crate::ntheory::{coprime, factorize, gcd, lcm, modn, mult_order, prime_divisors, totient};
use crate::rat::Rat;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnitFactor {
    pub prime_power: u64,
    /// Generator as a residue modulo the prime power.
    pub local_generator: u64,
    /// The same generator lifted to n: ≡ local_generator mod prime_power, ≡ 1 elsewhere.
    pub generator: u64,
    pub order: u64,
}

/// CRT decomposition of (Z/nZ)* into cyclic factors with chosen generators.
#[derive(Debug, Clone)]
pub struct UnitGroup {
    modulus: u64,
    factors: Vec<UnitFactor>,
    exponent: u64,
    dlog: Vec<Option<Vec<u64>>>,
}

fn primitive_root(q: u64) -> u64 {
    let phi = totient(q);
    (2..q)
        .find(|&g| gcd(g, q) == 1 && mult_order(g, q) == phi)
        .unwrap_or(1)
}

fn crt_lift(local: u64, q: u64, n: u64) -> u64 {
    let rest = n / q;
    if rest == 1 {
        return local % n;
    }
    // x = 1 + rest * t with x ≡ local (mod q)
    let inv = crate::ntheory::mod_inverse(rest as i64, q).expect("coprime parts");
    let t = modn((local as i64 - 1) * inv as i64, q);
    (1 + rest * t) % n
}

impl UnitGroup {
    pub fn new(modulus: u64) -> Self {
        assert!(modulus >= 1);
        let mut factors = Vec::new();
        for (p, e) in factorize(modulus) {
            let q = p.pow(e);
            let mut push = |g: u64, order: u64| {
                factors.push(UnitFactor {
                    prime_power: q,
                    local_generator: g,
                    generator: crt_lift(g, q, modulus),
                    order,
                })
            };
            if p == 2 {
                if e >= 2 {
                    push(q - 1, 2);
                }
                if e >= 3 {
                    push(5, q / 4);
                }
            } else {
                push(primitive_root(q), totient(q));
            }
        }
        let exponent = factors.iter().fold(1, |a, f| lcm(a, f.order));
        let mut dlog = vec![None; modulus as usize];
        let orders: Vec<u64> = factors.iter().map(|f| f.order).collect();
        let mut exps = vec![0u64; factors.len()];
        loop {
            let u = factors.iter().zip(&exps).fold(1 % modulus, |acc, (f, &e)| {
                acc * crate::ntheory::pow_mod(f.generator, e, modulus) % modulus
            });
            dlog[u as usize] = Some(exps.clone());
            if !advance(&mut exps, &orders) {
                break;
            }
        }
        UnitGroup {
            modulus,
            factors,
            exponent,
            dlog,
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn factors(&self) -> &[UnitFactor] {
        &self.factors
    }

    /// Exponent of the group: lcm of the factor orders.
    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().map(|f| f.order).product()
    }

    /// Exponents of `u` on the generators; `None` for non-units.
    pub fn dlog(&self, u: i64) -> Option<&[u64]> {
        self.dlog[modn(u, self.modulus) as usize].as_deref()
    }
}

/// Odometer step over mixed radices; the last digit moves fastest.
fn advance(digits: &mut [u64], radices: &[u64]) -> bool {
    for i in (0..digits.len()).rev() {
        digits[i] += 1;
        if digits[i] < radices[i] {
            return true;
        }
        digits[i] = 0;
    }
    false
}

#[derive(Clone)]
pub struct DirichletChar {
    group: Arc<UnitGroup>,
    exponents: Vec<u64>,
    order: u64,
    conductor: u64,
    parity: i8,
}

impl fmt::Debug for DirichletChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "chi(mod {}, exps {:?})", self.modulus(), self.exponents)
    }
}

impl fmt::Display for DirichletChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl PartialEq for DirichletChar {
    fn eq(&self, other: &Self) -> bool {
        self.modulus() == other.modulus() && self.exponents == other.exponents
    }
}

impl Eq for DirichletChar {}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharInfo {
    pub modulus: u64,
    pub exponents: Vec<u64>,
    pub conductor: u64,
    pub parity: i8,
    pub order: u64,
}

impl DirichletChar {
    pub fn new(group: Arc<UnitGroup>, exponents: Vec<u64>) -> Self {
        assert_eq!(
            exponents.len(),
            group.factors.len(),
            "one exponent per generator"
        );
        let exponents: Vec<u64> = exponents
            .iter()
            .zip(&group.factors)
            .map(|(&e, f)| e % f.order)
            .collect();
        let order = exponents
            .iter()
            .zip(&group.factors)
            .fold(1, |acc, (&e, f)| lcm(acc, f.order / gcd(e, f.order)));
        let mut chi = DirichletChar {
            group,
            exponents,
            order,
            conductor: 0,
            parity: 1,
        };
        chi.parity = if chi.value_exp(-1) == Some(0) { 1 } else { -1 };
        chi.conductor = chi.find_conductor();
        chi
    }

    pub fn principal(modulus: u64) -> Self {
        let g = Arc::new(UnitGroup::new(modulus));
        let k = g.factors.len();
        Self::new(g, vec![0; k])
    }

    pub fn modulus(&self) -> u64 {
        self.group.modulus
    }

    pub fn group(&self) -> &Arc<UnitGroup> {
        &self.group
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    /// Order of χ in the character group; its values are order-th roots of unity.
    pub fn order(&self) -> u64 {
        self.order
    }

    /// χ(−1) as ±1.
    pub fn parity(&self) -> i8 {
        self.parity
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor == self.modulus()
    }

    pub fn is_principal(&self) -> bool {
        self.order == 1
    }

    /// χ(j) = ζ_order^e; `None` when gcd(j, n) > 1.
    pub fn value_exp(&self, j: i64) -> Option<u64> {
        let logs = self.group.dlog(j)?;
        let e_big = self.group.exponent;
        let t = logs
            .iter()
            .zip(&self.exponents)
            .zip(&self.group.factors)
            .fold(0u64, |acc, ((&l, &e), f)| {
                (acc + l * e % f.order * (e_big / f.order)) % e_big
            });
        Some(t / (e_big / self.order))
    }

    /// χ(j) as an element of Q(ζ_m); requires the order of χ to divide `m`.
    pub fn value(&self, j: i64, m: u64) -> CycElem {
        assert_eq!(
            m % self.order,
            0,
            "character order must divide the field order"
        );
        match self.value_exp(j) {
            Some(e) => CycElem::zeta_pow(m, (e * (m / self.order)) as i64),
            None => CycElem::zero(m),
        }
    }

    pub fn conj(&self) -> Self {
        let exps = self
            .exponents
            .iter()
            .zip(&self.group.factors)
            .map(|(&e, f)| (f.order - e) % f.order)
            .collect();
        DirichletChar::new(Arc::clone(&self.group), exps)
    }

    fn find_conductor(&self) -> u64 {
        let n = self.modulus();
        crate::ntheory::divisors(n)
            .into_iter()
            .find(|&d| {
                (1..n)
                    .filter(|&u| gcd(u, n) == 1 && u % d == 1 % d)
                    .all(|u| self.value_exp(u as i64) == Some(0))
            })
            .unwrap_or(n)
    }

    /// The primitive character χ_f mod the conductor inducing χ.
    pub fn primitive(&self) -> DirichletChar {
        let n = self.modulus();
        let f = self.conductor;
        if f == n {
            return self.clone();
        }
        let g = Arc::new(UnitGroup::new(f));
        let exps = g
            .factors
            .iter()
            .map(|fac| {
                let mut u = fac.generator;
                while gcd(u, n) != 1 {
                    u += f;
                }
                let v = self.value_exp(u as i64).expect("unit");
                // χ_f(g)^{order(g)} = 1, so v / order(χ) = e / order(g).
                v * fac.order / self.order
            })
            .collect();
        DirichletChar::new(g, exps)
    }

    pub fn info(&self) -> CharInfo {
        CharInfo {
            modulus: self.modulus(),
            exponents: self.exponents.clone(),
            conductor: self.conductor,
            parity: self.parity,
            order: self.order,
        }
    }
}

/// All φ(n) characters mod n, lexicographic in the generator exponents.
pub fn enumerate_chars(n: u64) -> Vec<DirichletChar> {
    let g = Arc::new(UnitGroup::new(n));
    let orders: Vec<u64> = g.factors.iter().map(|f| f.order).collect();
    let mut exps = vec![0u64; orders.len()];
    let mut out = Vec::new();
    loop {
        out.push(DirichletChar::new(Arc::clone(&g), exps.clone()));
        if !advance(&mut exps, &orders) {
            break;
        }
    }
    out
}

/// The characters with χ(−1) = (−1)^r.
pub fn chars_with_parity(n: u64, r: u32) -> Vec<DirichletChar> {
    let want = if r.is_multiple_of(2) { 1 } else { -1 };
    enumerate_chars(n)
        .into_iter()
        .filter(|c| c.parity() == want)
        .collect()
}

pub fn conductor(chi: &DirichletChar) -> u64 {
    chi.conductor()
}

pub fn primitive_char(chi: &DirichletChar) -> DirichletChar {
    chi.primitive()
}

/// τ(χ) = Σ_{j=1}^{f} χ(j) ζ_f^{−j} for primitive χ mod f, in Q(ζ_lcm(f, order)).
pub fn gauss_sum(chi: &DirichletChar) -> Result<CycElem> {
    if !chi.is_primitive() {
        return Err(Error::NotPrimitive(chi.to_string()));
    }
    let f = chi.modulus();
    let m = lcm(f, chi.order());
    let mut acc = CycElem::zero(m);
    for j in 1..=f {
        if chi.value_exp(j as i64).is_none() {
            continue;
        }
        let root = CycElem::zeta_pow(m, -((j * (m / f)) as i64));
        acc = &acc + &(&chi.value(j as i64, m) * &root);
    }
    Ok(acc)
}

fn check_modulus(chi: &DirichletChar, a: &CycElem) -> Result<()> {
    if chi.modulus() != a.order() {
        return Err(Error::CharacterModulus {
            chi: chi.modulus(),
            n: a.order(),
        });
    }
    Ok(())
}

/// Σ_{(j,n)=1} χ̄(j) σ_j(a), in Q(ζ_M) with M = lcm(n, order χ).
pub fn resolvent(chi: &DirichletChar, a: &CycElem) -> Result<CycElem> {
    check_modulus(chi, a)?;
    let n = a.order();
    let m = lcm(n, chi.order());
    let bar = chi.conj();
    let mut acc = CycElem::zero(m);
    for j in (1..=n).filter(|&j| gcd(j, n) == 1) {
        let term = &bar.value(j as i64, m) * &a.galois(j as i64)?.lift(m)?;
        acc = &acc + &term;
    }
    Ok(acc.canonicalize())
}

/// y(χ|a), defined by y(χ|a) τ(χ̄_f) = Σ χ̄(j) σ_j(a); lives in Q(ζ_M), M = lcm(n, order χ).
pub fn char_coordinate(chi: &DirichletChar, a: &CycElem) -> Result<CycElem> {
    let num = resolvent(chi, a)?;
    let m = num.order();
    if num.is_zero() {
        return Ok(CycElem::zero(m));
    }
    let tau = gauss_sum(&chi.conj().primitive())?.lift(m)?;
    num.field_div(&tau)
}

/// (1/φ(n)) Σ_χ y(χ|a) τ(χ̄_f), restricted back to Q(ζ_n).
pub fn reconstruct(a: &CycElem) -> Result<CycElem> {
    let n = a.order();
    let g = UnitGroup::new(n);
    let m = lcm(n, g.exponent());
    let mut acc = CycElem::zero(m);
    for chi in enumerate_chars(n) {
        let y = char_coordinate(&chi, a)?.lift(m)?;
        let tau = gauss_sum(&chi.conj().primitive())?.lift(m)?;
        acc = &acc + &(&y * &tau);
    }
    let phi = Rat::from_integer(BigInt::from(totient(n)));
    acc.scale(&phi.recip()).canonicalize().restrict(n)
}

/// ∏_{p | n} (1 − ψ(p)/p^r) for a character ψ (evaluated on its own modulus), in Q(ζ_order ψ).
fn euler_factor(n: u64, r: u32, psi: &DirichletChar) -> CycElem {
    let m = psi.order();
    let mut acc = CycElem::one(m);
    for p in prime_divisors(n) {
        let pr = Rat::from_integer(BigInt::from(p).pow(r));
        let term = &CycElem::one(m) - &psi.value(p as i64, m).scale(&pr.recip());
        acc = &acc * &term;
    }
    acc.canonicalize()
}

/// Closed form of y(χ|ct_1): (2n/f)^r ∏_{p|n} (1 − χ̄_f(p)/p^r) B_{r,χ_f} / r for χ of parity
/// (−1)^r, zero otherwise. Returned in Q(ζ_M), M = lcm(n, order χ).
pub fn y_ct1_closed(n: u64, r: u32, chi: &DirichletChar) -> Result<CycElem> {
    if chi.modulus() != n {
        return Err(Error::CharacterModulus {
            chi: chi.modulus(),
            n,
        });
    }
    let m = lcm(n, chi.order());
    if Parity::from_weight(r).sign() != chi.parity() {
        return Ok(CycElem::zero(m));
    }
    let f = chi.conductor();
    let prim = chi.primitive();
    let scale =
        Rat::from_integer(BigInt::from(2 * n / f).pow(r)) / Rat::from_integer(BigInt::from(r));
    let val = &euler_factor(n, r, &prim.conj()) * &gen_bernoulli(r, &prim);
    Ok(val.scale(&scale).lift(m)?.canonicalize())
}

/// ĉt_1 from the character sum
/// (−1)^r 2^{2−r} r / (φ(n) n^r) Σ_{χ(−1)=(−1)^r} f^{r−1} ∏_{p|n}(1 − χ_f(p)/p^r)^{−1} τ(χ̄_f) / B_{r,χ̄_f}.
///
/// Terms are summed in Q(ζ_M), M = lcm(n, exponent of (Z/nZ)*); the sum is then restricted to Q(ζ_n).
pub fn theorem2_ict(n: u64, r: u32) -> Result<CycElem> {
    if n < 3 {
        return Err(Error::ModulusTooSmall(n));
    }
    if r == 0 {
        return Err(Error::WeightTooSmall);
    }
    let m = lcm(n, UnitGroup::new(n).exponent());
    let chars = chars_with_parity(n, r);
    let terms: Vec<CycElem> = chars
        .par_iter()
        .map(|chi| -> Result<CycElem> {
            let prim = chi.primitive();
            let bar = prim.conj();
            let f = prim.modulus();
            let b = gen_bernoulli(r, &bar);
            if b.is_zero() {
                return Err(Error::ZeroBernoulli {
                    r,
                    chi: bar.to_string(),
                });
            }
            let euler_inv = euler_factor(n, r, &prim).inverse()?;
            let b_inv = b.inverse()?;
            let weight = Rat::from_integer(BigInt::from(f).pow(r - 1));
            let local = (&euler_inv * &b_inv).scale(&weight);
            let tau = gauss_sum(&bar)?;
            Ok(&local.lift(m)? * &tau.lift(m)?)
        })
        .collect::<Result<_>>()?;
    let mut acc = CycElem::zero(m);
    for t in &terms {
        acc = &acc + t;
    }
    let sign = if r.is_multiple_of(2) {
        Rat::one()
    } else {
        -Rat::one()
    };
    let two_pow = if r <= 2 {
        Rat::from_integer(BigInt::from(1u64 << (2 - r)))
    } else {
        Rat::new(BigInt::one(), BigInt::from(2).pow(r - 2))
    };
    let denom = Rat::from_integer(BigInt::from(totient(n)) * BigInt::from(n).pow(r));
    let scale = sign * two_pow * Rat::from_integer(BigInt::from(r)) / denom;
    acc.scale(&scale).canonicalize().restrict(n)
}

/// Checks y(χ|ĉt_1) = 4(−1)^r / f_χ · y(χ̄|ct_1)^{−1}, with ĉt_1 from the matrix inversion.
///
/// For χ of the wrong parity both coordinates must vanish instead.
pub fn inversion_relation_check(n: u64, r: u32, chi: &DirichletChar) -> Result<bool> {
    let (ict, _) = cotangent::matrix_ict(n, r)?;
    let ct = cotangent::ct_zeta(n, r)?;
    inversion_relation_holds(&ict, &ct, r, chi)
}

pub fn inversion_relation_holds(
    ict: &CycElem,
    ct: &CycElem,
    r: u32,
    chi: &DirichletChar,
) -> Result<bool> {
    let lhs = char_coordinate(chi, ict)?;
    let y_bar = char_coordinate(&chi.conj(), ct)?;
    if Parity::from_weight(r).sign() != chi.parity() {
        return Ok(lhs.is_zero() && y_bar.is_zero());
    }
    let f = chi.conductor() as i64;
    let sign = if r.is_multiple_of(2) { 4 } else { -4 };
    let rhs = y_bar
        .inverse()?
        .scale(&Rat::new(BigInt::from(sign), BigInt::from(f)));
    Ok(lhs == rhs)
}

/// Unscaled character matrix X₀ = (χ(k))_{k ∈ R, χ ∈ X_r}, in Q(ζ_M).
pub fn character_matrix(n: u64, r: u32) -> Result<CycMatrix> {
    let rs = residue_set(n)?;
    let chars = chars_with_parity(n, r);
    let m = lcm(n, UnitGroup::new(n).exponent());
    CycMatrix::from_fn(m, rs.len(), chars.len(), |i, j| {
        chars[j].value(rs.elems()[i] as i64, m)
    })
}

/// Checks X₀ X̄₀^T = (φ(n)/2) I and (2/φ(n)) X₀ Δ X̄₀^T = CT with
/// Δ = diag(½ y(χ|ct_1) τ(χ̄_f)), everything exact in Q(ζ_M).
pub fn spectral_check(n: u64, r: u32) -> Result<bool> {
    let x0 = character_matrix(n, r)?;
    let m = x0.order();
    let xh = x0.conj_transpose();
    let half_phi = Rat::from_integer(BigInt::from(totient(n) / 2));
    let unitary = x0
        .mul(&xh)?
        .map(|e| e.scale(&half_phi.recip()))?
        .is_identity();

    let ct1 = cotangent::ct_zeta(n, r)?;
    let chars = chars_with_parity(n, r);
    let half = Rat::new(BigInt::one(), BigInt::from(2));
    let diag: Vec<CycElem> = chars
        .iter()
        .map(|chi| -> Result<CycElem> {
            let y = char_coordinate(chi, &ct1)?.lift(m)?;
            let tau = gauss_sum(&chi.conj().primitive())?.lift(m)?;
            Ok((&y * &tau).scale(&half))
        })
        .collect::<Result<_>>()?;
    let k = chars.len();
    let delta = CycMatrix::from_fn(m, k, k, |i, j| {
        if i == j {
            diag[i].clone()
        } else {
            CycElem::zero(m)
        }
    })?;
    let scaled = x0
        .mul(&delta)?
        .mul(&xh)?
        .map(|e| e.scale(&half_phi.recip()))?;
    let ct = cotangent::build_ct_matrix(n, r)?.map(|e| e.lift(m).expect("n divides M"))?;
    Ok(unitary && scaled == ct)
}

/// A character with the Gauss sum of its primitive counterpart.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CharRecord {
    #[serde(flatten)]
    pub info: CharInfo,
    pub gauss_sum: CycElem,
}

/// One record per character mod n, in enumeration order.
pub fn char_records(n: u64) -> Result<Vec<CharRecord>> {
    if n == 0 {
        return Err(Error::ModulusTooSmall(n));
    }
    enumerate_chars(n)
        .iter()
        .map(|chi| {
            Ok(CharRecord {
                info: chi.info(),
                gauss_sum: gauss_sum(&chi.primitive())?,
            })
        })
        .collect()
}

/// χ(k) y(χ|a) = y(χ|σ_k(a)) for one k.
pub fn coordinate_equivariance(chi: &DirichletChar, a: &CycElem, k: i64) -> Result<bool> {
    if !coprime(k, a.order()) {
        return Err(Error::NotCoprime { k, n: a.order() });
    }
    let y = char_coordinate(chi, a)?;
    let yk = char_coordinate(chi, &a.galois(k)?)?;
    let m = y.order();
    Ok(yk == &chi.value(k, m) * &y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, rat};

    fn find(n: u64, pred: impl Fn(&DirichletChar) -> bool) -> DirichletChar {
        enumerate_chars(n)
            .into_iter()
            .find(|c| pred(c))
            .expect("character exists")
    }

    #[test]
    fn unit_group_shapes() {
        for n in 1..=200u64 {
            let g = UnitGroup::new(n);
            assert_eq!(g.order(), totient(n), "n = {n}");
            let units = (0..n).filter(|&u| gcd(u, n) == 1).count() as u64;
            let seen = (0..n).filter(|&u| g.dlog(u as i64).is_some()).count() as u64;
            assert_eq!(seen, units, "n = {n}");
        }
        let g = UnitGroup::new(16);
        assert_eq!(
            g.factors().iter().map(|f| f.order).collect::<Vec<_>>(),
            vec![2, 4]
        );
        assert!(UnitGroup::new(14)
            .factors()
            .iter()
            .all(|f| f.prime_power == 7));
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_chars(15).len(), 8);
        assert_eq!(chars_with_parity(15, 3).len(), 4);
        assert_eq!(enumerate_chars(3).len(), 2);
        assert_eq!(enumerate_chars(13).len(), 12);
        assert!(enumerate_chars(13).iter().any(|c| c.order() == 12));
    }

    #[test]
    fn multiplicativity() {
        for n in [12u64, 15, 16, 20, 21, 24] {
            for chi in enumerate_chars(n) {
                for a in 0..n as i64 {
                    for b in 0..n as i64 {
                        let va = chi.value(a, chi.order());
                        let vb = chi.value(b, chi.order());
                        assert_eq!(chi.value(a * b, chi.order()).coeffs(), (&va * &vb).coeffs());
                    }
                }
            }
        }
    }

    #[test]
    fn conductors() {
        let mut odd: Vec<u64> = chars_with_parity(15, 1)
            .iter()
            .map(|c| c.conductor())
            .collect();
        odd.sort();
        assert_eq!(odd, vec![3, 5, 5, 15]);
        assert_eq!(DirichletChar::principal(15).conductor(), 1);
        for chi in enumerate_chars(13)
            .into_iter()
            .filter(|c| !c.is_principal())
        {
            assert_eq!(chi.conductor(), 13);
        }
        // mod 14 characters factor through mod 7
        assert!(enumerate_chars(14)
            .iter()
            .all(|c| c.conductor() == 1 || c.conductor() == 7));
    }

    #[test]
    fn primitive_agrees_on_units() {
        for n in [9u64, 12, 15, 20, 28, 30, 36] {
            for chi in enumerate_chars(n) {
                let p = chi.primitive();
                assert_eq!(p.modulus(), chi.conductor());
                assert!(p.is_primitive());
                assert_eq!(p.order(), chi.order());
                for j in (1..n).filter(|&j| gcd(j, n) == 1) {
                    assert_eq!(
                        p.value_exp(j as i64),
                        chi.value_exp(j as i64),
                        "n={n} j={j}"
                    );
                }
            }
        }
    }

    #[test]
    fn gauss_sum_mod_3() {
        let chi = find(3, |c| !c.is_principal());
        let tau = gauss_sum(&chi).unwrap();
        assert_eq!(tau, -CycElem::s(3, 1));
        let prod = (&tau * &gauss_sum(&chi.conj()).unwrap()).canonicalize();
        assert_eq!(prod.as_rational(), Some(int(-3)));
        assert!(gauss_sum(&DirichletChar::principal(6)).is_err());
    }

    #[test]
    fn gauss_sum_mod_15() {
        // odd, conductor 15, χ(2) = 1
        let chi = find(15, |c| {
            c.conductor() == 15 && c.parity() == -1 && c.value_exp(2) == Some(0)
        });
        let tau = gauss_sum(&chi).unwrap();
        let s = |j| CycElem::s(15, j);
        let expect = &(&(&(-s(1)) - &s(2)) - &s(4)) + &s(7);
        assert_eq!(tau, expect);
    }

    #[test]
    fn gauss_sum_norms() {
        for n in 3..=20u64 {
            for chi in enumerate_chars(n)
                .into_iter()
                .filter(DirichletChar::is_primitive)
            {
                let t = gauss_sum(&chi).unwrap().embed();
                assert!((t.norm_sqr() - n as f64).abs() < 1e-9, "n={n}");
                let prod = &gauss_sum(&chi).unwrap()
                    * &gauss_sum(&chi.conj())
                        .unwrap()
                        .lift(lcm(n, chi.order()))
                        .unwrap();
                assert_eq!(
                    prod.as_rational(),
                    Some(int(chi.parity() as i64 * n as i64))
                );
            }
        }
    }

    #[test]
    fn generalized_bernoulli_examples() {
        let chi3 = find(3, |c| !c.is_principal());
        assert_eq!(gen_bernoulli(3, &chi3).as_rational(), Some(rat(2, 3)));

        // χ mod 5 with χ(2) = i: values in Q(ζ_4), i = ζ_4
        let chi5 = find(5, |c| c.order() == 4 && c.value_exp(2) == Some(1));
        let b = gen_bernoulli(3, &chi5);
        let expect = &CycElem::from_rat(4, rat(12, 5)) + &CycElem::zeta_pow(4, 1).scale(&rat(6, 5));
        assert_eq!(b, expect);

        let chi15 = find(15, |c| {
            c.conductor() == 15 && c.parity() == -1 && c.value_exp(2) == Some(0)
        });
        assert_eq!(gen_bernoulli(3, &chi15).as_rational(), Some(int(48)));
    }

    #[test]
    fn generalized_bernoulli_parity_vanishing() {
        for f in 1..=20u64 {
            for chi in enumerate_chars(f)
                .into_iter()
                .filter(DirichletChar::is_primitive)
            {
                for r in 1..=4u32 {
                    let wrong = chi.parity() != if r % 2 == 0 { 1 } else { -1 };
                    if wrong && !(r == 1 && chi.is_principal()) {
                        assert!(gen_bernoulli(r, &chi).is_zero(), "f={f} r={r} {chi:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn generalized_bernoulli_conjugation() {
        for f in [5u64, 7, 13, 15, 16] {
            for chi in enumerate_chars(f)
                .into_iter()
                .filter(DirichletChar::is_primitive)
            {
                for r in 1..=4 {
                    assert_eq!(gen_bernoulli(r, &chi).conj(), gen_bernoulli(r, &chi.conj()));
                }
            }
        }
    }

    #[test]
    fn character_serialization() {
        let chi = find(15, |c| c.conductor() == 15 && c.order() == 4);
        let json = serde_json::to_string(&chi.info()).unwrap();
        assert!(json.starts_with(r#"{"modulus":15,"exponents":["#));
        let back: CharInfo = serde_json::from_str(&json).unwrap();
        assert_eq!(serde_json::to_string(&back).unwrap(), json);
    }

    #[test]
    fn coordinates_of_ct_vanish_off_parity() {
        let ct = cotangent::ct_zeta(11, 1).unwrap();
        for chi in enumerate_chars(11).into_iter().filter(|c| c.parity() == 1) {
            assert!(char_coordinate(&chi, &ct).unwrap().is_zero());
        }
    }

    #[test]
    fn closed_form_matches_definition_small() {
        for (n, r) in [(5u64, 1u32), (7, 2), (9, 3), (12, 2)] {
            let ct = cotangent::ct_zeta(n, r).unwrap();
            for chi in enumerate_chars(n) {
                assert_eq!(
                    y_ct1_closed(n, r, &chi).unwrap(),
                    char_coordinate(&chi, &ct).unwrap(),
                    "n={n} r={r} {chi:?}"
                );
            }
        }
    }

    #[test]
    fn theorem2_small_matches_matrix_route() {
        for (n, r) in [
            (3u64, 1u32),
            (3, 2),
            (4, 1),
            (5, 3),
            (7, 2),
            (8, 1),
            (9, 2),
            (12, 3),
        ] {
            let (ict, _) = cotangent::matrix_ict(n, r).unwrap();
            assert_eq!(theorem2_ict(n, r).unwrap(), ict, "n={n} r={r}");
        }
    }

    #[test]
    fn spectral_small() {
        assert!(spectral_check(7, 1).unwrap());
        assert!(spectral_check(12, 2).unwrap());
    }
}
