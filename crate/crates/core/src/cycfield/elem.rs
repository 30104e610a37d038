use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::poly::{self, cyclotomic_poly};
use crate::error::{Error, Result};
use crate::matrix::RatMatrix;
use crate::ntheory::{coprime, lcm, modn, totient};
use crate::rat::{format_rat, parse_rat, Rat};

/// An element of Q(ζ_n) held as a group-ring vector: `coeffs[k]` multiplies ζ_n^k.
///
/// The vector representation is not unique. Equality compares canonical forms
/// (remainders modulo Φ_n); elements of different orders compare inside the
/// field of the least common multiple of both orders.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "CycElemRepr", into = "CycElemRepr")]
pub struct CycElem {
    order: u64,
    coeffs: Vec<Rat>,
}

#[derive(Serialize, Deserialize)]
struct CycElemRepr {
    order: u64,
    coeffs: Vec<String>,
}

impl TryFrom<CycElemRepr> for CycElem {
    type Error = Error;

    fn try_from(r: CycElemRepr) -> Result<Self> {
        let coeffs = r
            .coeffs
            .iter()
            .map(|s| parse_rat(s))
            .collect::<Result<Vec<_>>>()?;
        CycElem::from_coeffs(r.order, coeffs)
    }
}

impl From<CycElem> for CycElemRepr {
    fn from(a: CycElem) -> Self {
        CycElemRepr {
            order: a.order,
            coeffs: a.coeffs.iter().map(format_rat).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

pub fn arith(a: &CycElem, b: &CycElem, op: ArithOp) -> Result<CycElem> {
    match op {
        ArithOp::Add => a.checked_add(b),
        ArithOp::Sub => a.checked_sub(b),
        ArithOp::Mul => a.checked_mul(b),
    }
}

impl CycElem {
    pub fn zero(order: u64) -> Self {
        assert!(order >= 1, "cyclotomic order must be positive");
        CycElem {
            order,
            coeffs: vec![Rat::zero(); order as usize],
        }
    }

    pub fn from_rat(order: u64, q: Rat) -> Self {
        let mut a = Self::zero(order);
        a.coeffs[0] = q;
        a
    }

    pub fn one(order: u64) -> Self {
        Self::from_rat(order, Rat::one())
    }

    /// ζ_n^k, any integer `k`.
    pub fn zeta_pow(order: u64, k: i64) -> Self {
        let mut a = Self::zero(order);
        a.coeffs[modn(k, order) as usize] = Rat::one();
        a
    }

    pub fn from_coeffs(order: u64, coeffs: Vec<Rat>) -> Result<Self> {
        if order == 0 || coeffs.len() as u64 != order {
            return Err(Error::Dimension(format!(
                "order {order} needs {order} coefficients, got {}",
                coeffs.len()
            )));
        }
        Ok(CycElem { order, coeffs })
    }

    /// s_j = ζ^j − ζ^{−j}.
    pub fn s(order: u64, j: i64) -> Self {
        let mut a = Self::zeta_pow(order, j);
        a.coeffs[modn(-j, order) as usize] -= Rat::one();
        a
    }

    /// c_j = ζ^j + ζ^{−j}.
    pub fn c(order: u64, j: i64) -> Self {
        let mut a = Self::zeta_pow(order, j);
        a.coeffs[modn(-j, order) as usize] += Rat::one();
        a
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, k: i64) -> &Rat {
        &self.coeffs[modn(k, self.order) as usize]
    }

    fn same_order(&self, other: &Self) -> Result<()> {
        if self.order != other.order {
            return Err(Error::OrderMismatch {
                left: self.order,
                right: other.order,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(CycElem {
            order: self.order,
            coeffs,
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(CycElem {
            order: self.order,
            coeffs,
        })
    }

    /// Group-ring product: exponents add modulo n.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        let n = self.order as usize;
        let mut out = vec![Rat::zero(); n];
        let rhs: Vec<(usize, &Rat)> = other
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for &(j, y) in &rhs {
                let k = (i + j) % n;
                out[k] += x * y;
            }
        }
        Ok(CycElem {
            order: self.order,
            coeffs: out,
        })
    }

    pub fn scale(&self, q: &Rat) -> Self {
        CycElem {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    /// Remainder modulo Φ_n, as a length-n vector with zeros from degree φ(n) on.
    pub fn canonicalize(&self) -> Self {
        let phi = cyclotomic_poly(self.order);
        let mut coeffs = self.coeffs.clone();
        poly::reduce_monic_in_place(&mut coeffs, phi.coeffs());
        CycElem {
            order: self.order,
            coeffs,
        }
    }

    pub fn is_canonical(&self) -> bool {
        let d = totient(self.order) as usize;
        self.coeffs[d..].iter().all(Zero::is_zero)
    }

    pub fn is_zero(&self) -> bool {
        self.canonicalize().coeffs.iter().all(Zero::is_zero)
    }

    /// The rational value, if the element lies in Q.
    pub fn as_rational(&self) -> Option<Rat> {
        let c = self.canonicalize();
        c.coeffs[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| c.coeffs[0].clone())
    }

    /// Canonical polynomial, trimmed.
    fn canonical_poly(&self) -> Vec<Rat> {
        let mut p = self.canonicalize().coeffs;
        poly::trim(&mut p);
        p
    }

    fn from_poly(order: u64, mut p: Vec<Rat>) -> Self {
        p.resize(order as usize, Rat::zero());
        CycElem { order, coeffs: p }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against Φ_n.
    pub fn inverse(&self) -> Result<Self> {
        let a = self.canonical_poly();
        if a.is_empty() {
            return Err(Error::DivisionByZero);
        }
        let phi = cyclotomic_poly(self.order).to_rat();
        let inv = poly::inverse_mod(&a, &phi).ok_or(Error::DivisionByZero)?;
        Ok(Self::from_poly(self.order, inv).canonicalize())
    }

    /// `self / other`, returned in canonical form.
    pub fn field_div(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        Ok(self.checked_mul(&other.inverse()?)?.canonicalize())
    }

    /// σ_k: ζ ↦ ζ^k. The coefficient of ζ^j moves to ζ^{kj}.
    pub fn galois(&self, k: i64) -> Result<Self> {
        let n = self.order;
        if !coprime(k, n) {
            return Err(Error::NotCoprime { k, n });
        }
        let k = modn(k, n);
        let mut out = vec![Rat::zero(); n as usize];
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out[(j as u64 * k % n) as usize] = c.clone();
            }
        }
        Ok(CycElem {
            order: n,
            coeffs: out,
        })
    }

    /// Complex conjugation, σ_{−1}.
    pub fn conj(&self) -> Self {
        self.galois(-1).expect("-1 is a unit")
    }

    /// Image under ζ_n ↦ ζ_m^{m/n}.
    pub fn lift(&self, m: u64) -> Result<Self> {
        if m == 0 || !m.is_multiple_of(self.order) {
            return Err(Error::NotDivisor {
                from: self.order,
                to: m,
            });
        }
        let step = (m / self.order) as usize;
        let mut out = vec![Rat::zero(); m as usize];
        for (j, c) in self.coeffs.iter().enumerate() {
            out[j * step] = c.clone();
        }
        Ok(CycElem {
            order: m,
            coeffs: out,
        })
    }

    /// Writes an element of Q(ζ_M) that lies in the subfield Q(ζ_n) as an element of order `n`.
    pub fn restrict(&self, n: u64) -> Result<Self> {
        let m = self.order;
        if n == 0 || !m.is_multiple_of(n) {
            return Err(Error::NotDivisor { from: n, to: m });
        }
        if n == m {
            return Ok(self.clone());
        }
        let dm = totient(m) as usize;
        let dn = totient(n) as usize;
        let mut basis = RatMatrix::zeros(dm, dn);
        for i in 0..dn {
            let col = CycElem::zeta_pow(n, i as i64).lift(m)?.canonicalize();
            for r in 0..dm {
                basis.set(r, i, col.coeffs[r].clone());
            }
        }
        let target = self.canonicalize();
        let x = basis
            .solve(&target.coeffs[..dm])
            .ok_or(Error::NotInSubfield(n))?;
        Ok(Self::from_poly(n, x))
    }

    /// Double-precision embedding with ζ_n = e^{2πi/n}. See [`CycElem::embed_error_bound`].
    pub fn embed(&self) -> Complex64 {
        let n = self.order as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let v = c.to_f64().unwrap_or(f64::NAN);
            let theta = 2.0 * std::f64::consts::PI * (k as f64) / n;
            acc += Complex64::from_polar(v, theta);
        }
        acc
    }

    /// Bound on |embed(a) − a| in absolute terms.
    ///
    /// The angle 2πk/n carries a relative error of a few ε and |θ| < 2π, the polar form
    /// and the coefficient add a few more, and the running sum adds one ε per term.
    /// Heavy cancellation among the coefficients makes this much larger than ε·|a|.
    pub fn embed_error_bound(&self) -> f64 {
        let eps = f64::EPSILON;
        let mut abs_sum = 0.0;
        let mut terms = 0.0;
        for c in self.coeffs.iter().filter(|c| !c.is_zero()) {
            abs_sum += c.to_f64().unwrap_or(f64::NAN).abs();
            terms += 1.0;
        }
        (terms + 16.0) * eps * abs_sum * (1.0 + 1e-6)
    }
}

pub fn canonicalize(a: &CycElem) -> CycElem {
    a.canonicalize()
}

pub fn field_div(a: &CycElem, b: &CycElem) -> Result<CycElem> {
    a.field_div(b)
}

pub fn galois_apply(a: &CycElem, k: i64) -> Result<CycElem> {
    a.galois(k)
}

pub fn lift_to_order(a: &CycElem, m: u64) -> Result<CycElem> {
    a.lift(m)
}

pub fn embed_complex(a: &CycElem) -> Complex64 {
    a.embed()
}

impl PartialEq for CycElem {
    fn eq(&self, other: &Self) -> bool {
        let (a, b);
        let (x, y) = if self.order == other.order {
            (self, other)
        } else {
            let m = lcm(self.order, other.order);
            a = self.lift(m).expect("lcm is a multiple");
            b = other.lift(m).expect("lcm is a multiple");
            (&a, &b)
        };
        x.checked_sub(y).expect("orders agree").is_zero()
    }
}

impl Neg for &CycElem {
    type Output = CycElem;

    fn neg(self) -> CycElem {
        CycElem {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for CycElem {
    type Output = CycElem;

    fn neg(self) -> CycElem {
        -&self
    }
}

// Operator forms panic on an order mismatch; use the `checked_*` methods to get an error.
macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&CycElem> for &CycElem {
            type Output = CycElem;

            fn $method(self, rhs: &CycElem) -> CycElem {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }

        impl $tr<CycElem> for CycElem {
            type Output = CycElem;

            fn $method(self, rhs: CycElem) -> CycElem {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl fmt::Display for CycElem {
    /// Canonical form as `c0 + c1*z + c2*z^2 ...`, `z` a primitive `order`-th root of unity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.canonicalize();
        let terms: Vec<(String, Rat)> = c
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, q)| !q.is_zero())
            .map(|(k, q)| {
                let sym = match k {
                    0 => String::new(),
                    1 => "z".to_string(),
                    _ => format!("z^{k}"),
                };
                (sym, q.clone())
            })
            .collect();
        f.write_str(&crate::render::render_terms(&terms))
    }
}
