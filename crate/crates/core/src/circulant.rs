//! Complete circulant matrices `C_n`, `B_n` over the series ring and the
//! determinant identities behind the Hajnal–Nagy formula.
//!
//! The first rows are built by exact multisection extraction:
//! `c_j = [1/L]_{n,j}` and `b_j = [E∞]_{n,j}`. For `n = 2k` the matrices split
//! into `k × k` quarters
//!
//! ```text
//! C_2k = | C1 C2 |    B_2k = | B1 B2 |
//!        | C2 C1 |           | B2 B1 |
//! ```
//!
//! and the even part of `P^0` for `({0..k-1}, 2k)` is `det(B1) / det(C1)`.
//! Every identity here is checked multiplied out, never by division.

use crate::error::{Error, Result};
use crate::loops::{two_step_count, LoopModel};
use crate::matrix::SeriesMatrix;
use crate::periodic::hn_set;
use crate::series::{inv_sqrt_one_minus_monomial, rat, TruncatedSeries};
use crate::system::{solve_restricted, SolutionCache};

/// Circulant given by its first row: `entry[i][j] = first_row[(j - i) mod n]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circulant {
    first_row: Vec<TruncatedSeries>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quarter {
    /// Top-left `k × k` block.
    C1,
    /// Top-right `k × k` block.
    C2,
}

impl Circulant {
    pub fn new(first_row: Vec<TruncatedSeries>) -> Result<Self> {
        let order = first_row.first().ok_or_else(|| Error::Shape("empty circulant".into()))?.order();
        if let Some(bad) = first_row.iter().find(|s| s.order() != order) {
            return Err(Error::OrderMismatch { left: order, right: bad.order() });
        }
        Ok(Self { first_row })
    }

    pub fn size(&self) -> usize {
        self.first_row.len()
    }

    pub fn first_row(&self) -> &[TruncatedSeries] {
        &self.first_row
    }

    pub fn entry(&self, i: usize, j: usize) -> &TruncatedSeries {
        let n = self.size();
        &self.first_row[(j + n - i % n) % n]
    }

    pub fn to_matrix(&self) -> SeriesMatrix {
        let n = self.size();
        SeriesMatrix::from_fn(n, self.first_row[0].order(), |i, j| self.entry(i, j).clone())
            .expect("uniform order checked at construction")
    }

    /// One quarter of an even circulant. Also checks that the bottom block row
    /// is `(C2, C1)`.
    pub fn quarter(&self, which: Quarter) -> Result<SeriesMatrix> {
        let n = self.size();
        if !n.is_multiple_of(2) {
            return Err(Error::OddCirculant(n));
        }
        let k = n / 2;
        let m = self.to_matrix();
        let top: Vec<usize> = (0..k).collect();
        let bottom: Vec<usize> = (k..n).collect();
        let c1 = m.submatrix(&top, &top)?;
        let c2 = m.submatrix(&top, &bottom)?;
        if m.submatrix(&bottom, &top)? != c2 || m.submatrix(&bottom, &bottom)? != c1 {
            return Err(Error::Inconsistent("bottom block row is not (C2, C1)".into()));
        }
        Ok(match which {
            Quarter::C1 => c1,
            Quarter::C2 => c2,
        })
    }
}

/// First row of `C_n` written through primitive excursions:
/// `(1 - [E]_{n,0}, -[E]_{n,1}, …, -[E]_{n,n-1})`.
pub fn c_first_row_from_excursions(d: usize, n: usize, order: usize) -> Result<Vec<TruncatedSeries>> {
    let sections = LoopModel::new(d, order)?.primitive_excursion_gf().multisections(n)?;
    let one = TruncatedSeries::one(order)?;
    sections
        .into_iter()
        .enumerate()
        .map(|(j, e)| if j == 0 { one.checked_sub(&e) } else { Ok(e.neg()) })
        .collect()
}

/// First row of `C_n`: `c_j = [1/L]_{n,j}`, cross-checked against the
/// excursion form.
pub fn c_first_row(d: usize, n: usize, order: usize) -> Result<Vec<TruncatedSeries>> {
    let row = LoopModel::new(d, order)?.inverse_loop_gf().multisections(n)?;
    if row != c_first_row_from_excursions(d, n, order)? {
        return Err(Error::Inconsistent(format!("c-row forms disagree for d={d}, n={n}")));
    }
    Ok(row)
}

/// First row of `B_n`: `b_j = [E∞]_{n,j}`.
pub fn b_first_row(d: usize, n: usize, order: usize) -> Result<Vec<TruncatedSeries>> {
    LoopModel::new(d, order)?.escaping_gf().multisections(n)
}

pub fn c_circulant(d: usize, n: usize, order: usize) -> Result<Circulant> {
    Circulant::new(c_first_row(d, n, order)?)
}

pub fn b_circulant(d: usize, n: usize, order: usize) -> Result<Circulant> {
    Circulant::new(b_first_row(d, n, order)?)
}

/// `b_j - c_j = 4^d t · b_{(j-1) mod n}` for every `j` (`4^d = 4d²` for d ≤ 2).
pub fn bc_relation_check(d: usize, n: usize, order: usize) -> Result<bool> {
    let b = b_first_row(d, n, order)?;
    let c = c_first_row(d, n, order)?;
    let factor = two_step_count(d);
    for j in 0..n {
        let lhs = b[j].checked_sub(&c[j])?;
        let rhs = b[(j + n - 1) % n].shift_by_monomial(&factor, 1);
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn series_determinant(m: &SeriesMatrix) -> Result<TruncatedSeries> {
    m.determinant()
}

/// The four determinants shared by the checks below, for `n = 2k`.
#[derive(Debug, Clone)]
pub struct QuarterDeterminants {
    pub det_c1: TruncatedSeries,
    pub det_b1: TruncatedSeries,
    /// `C1` with its first column replaced by the first column of `B1`.
    pub det_c1_hat: TruncatedSeries,
    pub det_c_full: TruncatedSeries,
}

pub fn quarter_determinants(d: usize, k: usize, order: usize) -> Result<QuarterDeterminants> {
    if k == 0 {
        return Err(Error::Shape("k must be at least 1".into()));
    }
    let c = c_circulant(d, 2 * k, order)?;
    let b = b_circulant(d, 2 * k, order)?;
    let c1 = c.quarter(Quarter::C1)?;
    let b1 = b.quarter(Quarter::C1)?;
    let mut c1_hat = c1.clone();
    for (i, entry) in b1.column(0).into_iter().enumerate() {
        c1_hat.set(i, 0, entry)?;
    }
    Ok(QuarterDeterminants {
        det_c1: c1.determinant()?,
        det_b1: b1.determinant()?,
        det_c1_hat: c1_hat.determinant()?,
        det_c_full: c.to_matrix().determinant()?,
    })
}

/// Replacing the first column of `C1` by that of `B1` yields `det(B1)`.
pub fn lemma_column_substitution_check(d: usize, k: usize, order: usize) -> Result<bool> {
    let q = quarter_determinants(d, k, order)?;
    Ok(q.det_c1_hat == q.det_b1)
}

/// `det(B1) = [P^0]_{2k,0} · det(C1)` with `P^0` solved for `({0..k-1}, 2k)`.
pub fn cramer_ratio_check(d: usize, k: usize, order: usize) -> Result<bool> {
    let p0 = solve_restricted(d, &hn_set(k)?, order)?.series[0].clone();
    cramer_ratio_holds(d, k, order, &p0)
}

pub fn cramer_ratio_check_cached(cache: &SolutionCache, d: usize, k: usize, order: usize) -> Result<bool> {
    let p0 = cache.get_or_solve(d, &hn_set(k)?, order)?.series[0].clone();
    cramer_ratio_holds(d, k, order, &p0)
}

fn cramer_ratio_holds(d: usize, k: usize, order: usize, p0: &TruncatedSeries) -> Result<bool> {
    let q = quarter_determinants(d, k, order)?;
    let section = p0.multisection(2 * k, 0)?;
    Ok(section.checked_mul(&q.det_c1)? == q.det_b1)
}

/// Outcome of the two `d = 1` determinant identities.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HnDeterminantReport {
    /// `det(B1) · det(C_2k) = det(C1)`.
    pub block_identity: bool,
    /// `det(C_2k) · (1 - (4t)^{2k})^{-1/2} = 1`.
    pub full_determinant: bool,
}

impl HnDeterminantReport {
    pub fn passed(&self) -> bool {
        self.block_identity && self.full_determinant
    }
}

pub fn hn_determinant_report(k: usize, order: usize) -> Result<HnDeterminantReport> {
    let q = quarter_determinants(1, k, order)?;
    let block_identity = q.det_b1.checked_mul(&q.det_c_full)? == q.det_c1;
    let target = hn_target(k, order)?;
    let full_determinant = q.det_c_full.checked_mul(&target)?.is_one();
    Ok(HnDeterminantReport {
        block_identity,
        full_determinant,
    })
}

pub fn hn_determinant_check(k: usize, order: usize) -> Result<bool> {
    Ok(hn_determinant_report(k, order)?.passed())
}

/// `1 / sqrt(1 - (4t)^{2k})`.
pub fn hn_target(k: usize, order: usize) -> Result<TruncatedSeries> {
    let c = num_traits::Pow::pow(rat(4), 2 * k);
    inv_sqrt_one_minus_monomial(&c, 2 * k, order)
}
