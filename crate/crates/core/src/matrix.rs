//! Dense exact matrices over Q and over a cyclotomic field.

use num_traits::{One, Zero};

use crate::cycfield::CycElem;
use crate::error::{Error, Result};
use crate::rat::Rat;

#[derive(Debug, Clone, PartialEq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let data = (0..rows * cols).map(|k| f(k / cols, k % cols)).collect();
        RatMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rat {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rat) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rat] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Exact inverse by Gauss-Jordan elimination with first-nonzero pivoting.
    pub fn inverse(&self) -> Result<Self> {
        if self.rows != self.cols {
            return Err(Error::Dimension(format!(
                "{}x{} is not square",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut a: Vec<Vec<Rat>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut inv: Vec<Vec<Rat>> = (0..n).map(|i| Self::identity(n).row(i).to_vec()).collect();
        for col in 0..n {
            let p = (col..n)
                .find(|&r| !a[r][col].is_zero())
                .ok_or(Error::Singular)?;
            a.swap(col, p);
            inv.swap(col, p);
            let scale = a[col][col].recip();
            for x in a[col].iter_mut().chain(inv[col].iter_mut()) {
                *x *= &scale;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for c in 0..n {
                    if !a[col][c].is_zero() {
                        let d = &f * &a[col][c];
                        a[r][c] -= d;
                    }
                    if !inv[col][c].is_zero() {
                        let d = &f * &inv[col][c];
                        inv[r][c] -= d;
                    }
                }
            }
        }
        Ok(RatMatrix {
            rows: n,
            cols: n,
            data: inv.into_iter().flatten().collect(),
        })
    }

    /// Solves `self · x = rhs` for a matrix of full column rank.
    ///
    /// Returns `None` when the columns are dependent or the system is inconsistent.
    pub fn solve(&self, rhs: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(rhs.len(), self.rows, "right-hand side length");
        let (m, n) = (self.rows, self.cols);
        let mut a: Vec<Vec<Rat>> = (0..m)
            .map(|i| {
                let mut row = self.row(i).to_vec();
                row.push(rhs[i].clone());
                row
            })
            .collect();
        for col in 0..n {
            let p = (col..m).find(|&r| !a[r][col].is_zero())?;
            a.swap(col, p);
            let scale = a[col][col].recip();
            for x in a[col].iter_mut() {
                *x *= &scale;
            }
            for r in 0..m {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                let pivot = a[col].clone();
                for (x, p) in a[r].iter_mut().zip(&pivot).skip(col) {
                    if !p.is_zero() {
                        *x -= &f * p;
                    }
                }
            }
        }
        if a[n..].iter().any(|row| !row[n].is_zero()) {
            return None;
        }
        Some(a[..n].iter().map(|row| row[n].clone()).collect())
    }
}

/// Dense matrix over Q(ζ_n); every entry has the same order.
#[derive(Debug, Clone)]
pub struct CycMatrix {
    order: u64,
    rows: usize,
    cols: usize,
    data: Vec<CycElem>,
}

impl CycMatrix {
    pub fn from_fn(
        order: u64,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> CycElem,
    ) -> Result<Self> {
        let data: Vec<CycElem> = (0..rows * cols).map(|k| f(k / cols, k % cols)).collect();
        if let Some(bad) = data.iter().find(|e| e.order() != order) {
            return Err(Error::OrderMismatch {
                left: order,
                right: bad.order(),
            });
        }
        Ok(CycMatrix {
            order,
            rows,
            cols,
            data,
        })
    }

    pub fn identity(order: u64, n: usize) -> Self {
        Self::from_fn(order, n, n, |i, j| {
            if i == j {
                CycElem::one(order)
            } else {
                CycElem::zero(order)
            }
        })
        .expect("uniform order")
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &CycElem {
        &self.data[r * self.cols + c]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.order, self.cols, self.rows, |i, j| {
            self.get(j, i).clone()
        })
        .expect("uniform order")
    }

    /// Entrywise complex conjugate of the transpose.
    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(self.order, self.cols, self.rows, |i, j| {
            self.get(j, i).conj()
        })
        .expect("uniform order")
    }

    pub fn map(&self, f: impl Fn(&CycElem) -> CycElem) -> Result<Self> {
        let data: Vec<CycElem> = self.data.iter().map(f).collect();
        let order = data.first().map_or(self.order, CycElem::order);
        Self::from_fn(order, self.rows, self.cols, |i, j| {
            data[i * self.cols + j].clone()
        })
    }

    pub fn canonicalize(&self) -> Self {
        self.map(CycElem::canonicalize).expect("order preserved")
    }

    /// Product with entries left canonical.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.order != other.order {
            return Err(Error::OrderMismatch {
                left: self.order,
                right: other.order,
            });
        }
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Self::from_fn(self.order, self.rows, other.cols, |i, j| {
            let mut acc = CycElem::zero(self.order);
            for k in 0..self.cols {
                acc = &acc + &(self.get(i, k) * other.get(k, j));
            }
            acc.canonicalize()
        })
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = self.get(i, j);
                    if i == j {
                        *e == CycElem::one(self.order)
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    /// Exact inverse over the field, Gauss-Jordan with first-nonzero pivoting.
    pub fn inverse(&self) -> Result<Self> {
        if self.rows != self.cols {
            return Err(Error::Dimension(format!(
                "{}x{} is not square",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let ord = self.order;
        let mut a: Vec<Vec<CycElem>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j).canonicalize()).collect())
            .collect();
        let mut inv: Vec<Vec<CycElem>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            CycElem::one(ord)
                        } else {
                            CycElem::zero(ord)
                        }
                    })
                    .collect()
            })
            .collect();
        for col in 0..n {
            let p = (col..n)
                .find(|&r| !a[r][col].is_zero())
                .ok_or(Error::Singular)?;
            a.swap(col, p);
            inv.swap(col, p);
            let pivot_inv = a[col][col].inverse()?;
            for x in a[col].iter_mut().chain(inv[col].iter_mut()) {
                *x = (&*x * &pivot_inv).canonicalize();
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for c in 0..n {
                    a[r][c] = (&a[r][c] - &(&f * &a[col][c])).canonicalize();
                    inv[r][c] = (&inv[r][c] - &(&f * &inv[col][c])).canonicalize();
                }
            }
        }
        Ok(CycMatrix {
            order: ord,
            rows: n,
            cols: n,
            data: inv.into_iter().flatten().collect(),
        })
    }
}

impl PartialEq for CycMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.data.iter().zip(&other.data).all(|(a, b)| a == b)
    }
}
