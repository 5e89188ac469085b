//! Square matrices over the truncated series ring.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::series::TruncatedSeries;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesMatrix {
    n: usize,
    order: usize,
    /// Row-major.
    entries: Vec<TruncatedSeries>,
}

impl SeriesMatrix {
    pub fn from_rows(rows: Vec<Vec<TruncatedSeries>>) -> Result<Self> {
        let n = rows.len();
        let order = rows
            .first()
            .and_then(|r| r.first())
            .map(TruncatedSeries::order)
            .ok_or_else(|| Error::Shape("empty matrix".into()))?;
        let mut entries = Vec::with_capacity(n * n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(Error::Shape(format!("row {i} has {} entries, expected {n}", row.len())));
            }
            for e in row {
                if e.order() != order {
                    return Err(Error::OrderMismatch { left: order, right: e.order() });
                }
                entries.push(e);
            }
        }
        Ok(Self { n, order, entries })
    }

    /// Builds an `n × n` matrix entry by entry.
    pub fn from_fn<F>(n: usize, order: usize, mut f: F) -> Result<Self>
    where
        F: FnMut(usize, usize) -> TruncatedSeries,
    {
        let rows = (0..n).map(|i| (0..n).map(|j| f(i, j)).collect()).collect();
        let m = Self::from_rows(rows)?;
        if m.order != order {
            return Err(Error::OrderMismatch { left: order, right: m.order });
        }
        Ok(m)
    }

    pub fn identity(n: usize, order: usize) -> Result<Self> {
        let one = TruncatedSeries::one(order)?;
        let zero = TruncatedSeries::zero(order)?;
        Self::from_fn(n, order, |i, j| if i == j { one.clone() } else { zero.clone() })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> &TruncatedSeries {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: TruncatedSeries) -> Result<()> {
        if value.order() != self.order {
            return Err(Error::OrderMismatch { left: self.order, right: value.order() });
        }
        self.entries[i * self.n + j] = value;
        Ok(())
    }

    pub fn row(&self, i: usize) -> &[TruncatedSeries] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn column(&self, j: usize) -> Vec<TruncatedSeries> {
        (0..self.n).map(|i| self.get(i, j).clone()).collect()
    }

    /// Square submatrix on the given row and column indices.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Result<Self> {
        if rows.len() != cols.len() {
            return Err(Error::Shape("submatrix must be square".into()));
        }
        Self::from_rows(
            rows.iter()
                .map(|&i| cols.iter().map(|&j| self.get(i, j).clone()).collect())
                .collect(),
        )
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::Shape(format!("{} × {} product", self.n, other.n)));
        }
        let zero = TruncatedSeries::zero(self.order)?;
        let mut rows = Vec::with_capacity(self.n);
        for i in 0..self.n {
            let mut row = Vec::with_capacity(self.n);
            for j in 0..self.n {
                let mut acc = zero.clone();
                for k in 0..self.n {
                    acc = acc.checked_add(&self.get(i, k).checked_mul(other.get(k, j))?)?;
                }
                row.push(acc);
            }
            rows.push(row);
        }
        Self::from_rows(rows)
    }

    /// `self · x`.
    pub fn apply(&self, x: &[TruncatedSeries]) -> Result<Vec<TruncatedSeries>> {
        if x.len() != self.n {
            return Err(Error::Shape(format!("vector of length {} for size {}", x.len(), self.n)));
        }
        (0..self.n)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .try_fold(TruncatedSeries::zero(self.order)?, |acc, (a, b)| acc.checked_add(&a.checked_mul(b)?))
            })
            .collect()
    }

    /// Solves `self · x = rhs` by Gaussian elimination on the diagonal.
    ///
    /// No pivot search: every diagonal pivot must stay a unit, which holds for
    /// matrices congruent to the identity modulo `t`.
    pub fn solve(&self, rhs: &[TruncatedSeries]) -> Result<Vec<TruncatedSeries>> {
        let n = self.n;
        if rhs.len() != n {
            return Err(Error::Shape(format!("rhs of length {} for size {n}", rhs.len())));
        }
        for b in rhs {
            if b.order() != self.order {
                return Err(Error::OrderMismatch { left: self.order, right: b.order() });
            }
        }
        let mut a = self.entries.clone();
        let mut b = rhs.to_vec();
        let mut pivot_inverses = Vec::with_capacity(n);
        for col in 0..n {
            let inv = a[col * n + col].invert().map_err(|_| Error::Singular(col))?;
            for row in col + 1..n {
                let factor = a[row * n + col].checked_mul(&inv)?;
                if factor.is_zero() {
                    continue;
                }
                for j in col..n {
                    let update = factor.checked_mul(&a[col * n + j])?;
                    a[row * n + j] = a[row * n + j].checked_sub(&update)?;
                }
                b[row] = b[row].checked_sub(&factor.checked_mul(&b[col])?)?;
            }
            pivot_inverses.push(inv);
        }
        let mut x = vec![TruncatedSeries::zero(self.order)?; n];
        for row in (0..n).rev() {
            let mut acc = b[row].clone();
            for j in row + 1..n {
                acc = acc.checked_sub(&a[row * n + j].checked_mul(&x[j])?)?;
            }
            x[row] = acc.checked_mul(&pivot_inverses[row])?;
        }
        Ok(x)
    }

    /// Determinant by elimination over the series ring. Each column needs
    /// some row (at or below the diagonal) whose entry is a unit.
    pub fn determinant(&self) -> Result<TruncatedSeries> {
        let n = self.n;
        let mut a = self.entries.clone();
        let mut det = TruncatedSeries::one(self.order)?;
        for col in 0..n {
            let pivot_row = (col..n)
                .find(|&r| !a[r * n + col].constant_term().is_zero())
                .ok_or(Error::Singular(col))?;
            if pivot_row != col {
                for j in 0..n {
                    a.swap(col * n + j, pivot_row * n + j);
                }
                det = det.neg();
            }
            let pivot = a[col * n + col].clone();
            let inv = pivot.invert()?;
            det = det.checked_mul(&pivot)?;
            for row in col + 1..n {
                let factor = a[row * n + col].checked_mul(&inv)?;
                if factor.is_zero() {
                    continue;
                }
                for j in col..n {
                    let update = factor.checked_mul(&a[col * n + j])?;
                    a[row * n + j] = a[row * n + j].checked_sub(&update)?;
                }
            }
        }
        Ok(det)
    }

    /// True if the matrix is the identity at `t = 0`.
    pub fn is_identity_at_zero(&self) -> bool {
        (0..self.n).all(|i| {
            (0..self.n).all(|j| {
                let c = self.get(i, j).constant_term();
                if i == j {
                    *c == num_traits::One::one()
                } else {
                    c.is_zero()
                }
            })
        })
    }
}
