//! The linear system for restricted-path generating functions.
//!
//! For a periodic set `(A, t_A)` the unknowns are `P^r`, `r ∈ A`: paths
//! starting at the admissible point `(2r, 0)`. Splitting a path at its first
//! return to the time axis gives
//!
//! ```text
//! P^r − Σ_{q∈A} [E]_{t_A, Sh(r,q)} · P^q = E∞,   r ∈ A
//! ```
//!
//! where `E` and `E∞` are the unrestricted primitive-excursion and escaping
//! series. The matrix is the identity at `t = 0`, so the system is solved by
//! plain elimination over the series ring.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use crate::error::{Error, Result};
use crate::loops::LoopModel;
use crate::matrix::SeriesMatrix;
use crate::periodic::{shift_distance, PeriodicSet};
use crate::series::TruncatedSeries;

/// `^dP^r(A, t)` for every residue `r ∈ A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RestrictedPathSolution {
    pub set: PeriodicSet,
    pub dim: usize,
    /// Indexed like `set.residues()`.
    pub series: Vec<TruncatedSeries>,
}

impl RestrictedPathSolution {
    /// Solution for a residue (reduced mod the period first).
    pub fn for_residue(&self, r: usize) -> Result<&TruncatedSeries> {
        let idx = self.set.index_of(r).ok_or(Error::NotAdmissible(r))?;
        Ok(&self.series[idx])
    }
}

/// Coefficient matrix and right-hand side of the system.
pub fn build_system(d: usize, s: &PeriodicSet, order: usize) -> Result<(SeriesMatrix, Vec<TruncatedSeries>)> {
    let model = LoopModel::new(d, order)?;
    let period = s.period();
    let sections = model.primitive_excursion_gf().multisections(period)?;
    let one = TruncatedSeries::one(order)?;
    let rs = s.residues();
    let mut rows = Vec::with_capacity(rs.len());
    for &r in rs {
        let mut row = Vec::with_capacity(rs.len());
        for &q in rs {
            let e = &sections[shift_distance(r, q, period)?];
            row.push(if r == q { one.checked_sub(e)? } else { e.neg() });
        }
        rows.push(row);
    }
    let rhs = vec![model.escaping_gf(); rs.len()];
    Ok((SeriesMatrix::from_rows(rows)?, rhs))
}

/// Solves the system, checking the identity-at-zero precondition.
pub fn solve(m: &SeriesMatrix, rhs: &[TruncatedSeries]) -> Result<Vec<TruncatedSeries>> {
    if !m.is_identity_at_zero() {
        return Err(Error::Inconsistent("system matrix is not the identity at t = 0".into()));
    }
    m.solve(rhs)
}

pub fn solve_restricted(d: usize, s: &PeriodicSet, order: usize) -> Result<RestrictedPathSolution> {
    let (m, rhs) = build_system(d, s, order)?;
    let series = solve(&m, &rhs)?;
    Ok(RestrictedPathSolution {
        set: s.clone(),
        dim: d,
        series,
    })
}

/// `^dP^r(A, t)`.
pub fn restricted_path_gf(d: usize, s: &PeriodicSet, r: usize, order: usize) -> Result<TruncatedSeries> {
    if s.index_of(r).is_none() {
        return Err(Error::NotAdmissible(r));
    }
    solve_restricted(d, s, order)?.for_residue(r).cloned()
}

/// Multisection index the reduced system assigns to unknown `r` when the
/// target multisection is `[P^m]_{t_A, q}`: `(Sh(r, m) + q) mod t_A`.
pub fn reduction_index(s: &PeriodicSet, m: usize, r: usize, q: usize) -> Result<usize> {
    Ok((shift_distance(r, m, s.period())? + q) % s.period())
}

/// Checks that the multisections `[P^r]_{t_A, l_r}` of the solved system
/// satisfy the reduced system with the same matrix and right-hand side
/// `[E∞]_{t_A, l_r}`, exactly up to the truncation order.
pub fn reduction_check(d: usize, s: &PeriodicSet, m: usize, q: usize, order: usize) -> Result<bool> {
    if s.index_of(m).is_none() || m >= s.period() {
        return Err(Error::NotAdmissible(m));
    }
    if q >= s.period() {
        return Err(Error::ResidueOutOfRange { residue: q, modulus: s.period() });
    }
    let (matrix, rhs) = build_system(d, s, order)?;
    let solution = solve(&matrix, &rhs)?;
    let period = s.period();
    let indices = s
        .residues()
        .iter()
        .map(|&r| reduction_index(s, m, r, q))
        .collect::<Result<Vec<_>>>()?;
    let reduced_x = solution
        .iter()
        .zip(&indices)
        .map(|(p, &l)| p.multisection(period, l))
        .collect::<Result<Vec<_>>>()?;
    let reduced_rhs = rhs
        .iter()
        .zip(&indices)
        .map(|(e, &l)| e.multisection(period, l))
        .collect::<Result<Vec<_>>>()?;
    Ok(matrix.apply(&reduced_x)? == reduced_rhs)
}

/// `[E∞]_{2,0} / (1 − [E]_{2,0})`, the even part of `P^0` for `({0}, 2)`.
pub fn closed_form_a1(d: usize, order: usize) -> Result<TruncatedSeries> {
    let model = LoopModel::new(d, order)?;
    let esc = model.escaping_gf().multisection(2, 0)?;
    let exc = model.primitive_excursion_gf().multisection(2, 0)?;
    let denom = TruncatedSeries::one(order)?.checked_sub(&exc)?;
    esc.checked_mul(&denom.invert()?)
}

type CacheKey = (usize, PeriodicSet, usize);

/// Per-run memo of solved systems keyed by `(d, set, order)`.
#[derive(Debug, Default)]
pub struct SolutionCache {
    inner: RwLock<HashMap<CacheKey, Arc<RestrictedPathSolution>>>,
}

impl SolutionCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get_or_solve(&self, d: usize, s: &PeriodicSet, order: usize) -> Result<Arc<RestrictedPathSolution>> {
        let key = (d, s.clone(), order);
        if let Some(hit) = self.inner.read().expect("cache lock poisoned").get(&key) {
            return Ok(Arc::clone(hit));
        }
        let solved = Arc::new(solve_restricted(d, s, order)?);
        let mut map = self.inner.write().expect("cache lock poisoned");
        Ok(Arc::clone(map.entry(key).or_insert(solved)))
    }

    pub fn len(&self) -> usize {
        self.inner.read().expect("cache lock poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{count_restricted, OracleBudget};
    use crate::series::{inv_sqrt_one_minus_monomial, rat};
    use num_bigint::BigInt;
    use num_traits::Pow;

    fn ints(prefix: &[i64], order: usize) -> TruncatedSeries {
        TruncatedSeries::from_integers(prefix, order).unwrap()
    }

    fn set(rs: &[usize], p: usize) -> PeriodicSet {
        PeriodicSet::new(rs.to_vec(), p).unwrap()
    }

    #[test]
    fn a1_system_is_single_equation() {
        let order = 8;
        let (m, rhs) = build_system(1, &PeriodicSet::a1(), order).unwrap();
        assert_eq!(m.size(), 1);
        let model = LoopModel::new(1, order).unwrap();
        let expected = TruncatedSeries::one(order)
            .unwrap()
            .checked_sub(&model.primitive_excursion_gf().multisection(2, 0).unwrap())
            .unwrap();
        assert_eq!(*m.get(0, 0), expected);
        assert_eq!(rhs, vec![model.escaping_gf()]);
    }

    #[test]
    fn a2_system_matches_displayed_entries() {
        let order = 10;
        let (m, rhs) = build_system(1, &PeriodicSet::a2(), order).unwrap();
        let e = LoopModel::new(1, order).unwrap().primitive_excursion_gf();
        let one = TruncatedSeries::one(order).unwrap();
        assert_eq!(*m.get(0, 0), one.checked_sub(&e.multisection(4, 0).unwrap()).unwrap());
        assert_eq!(*m.get(0, 1), e.multisection(4, 1).unwrap().neg());
        assert_eq!(*m.get(1, 0), e.multisection(4, 3).unwrap().neg());
        assert_eq!(*m.get(1, 1), one.checked_sub(&e.multisection(4, 0).unwrap()).unwrap());
        assert_eq!(rhs.len(), 2);
    }

    #[test]
    fn full_set_row_sums() {
        for d in 1..=3 {
            let order = 9;
            let (m, _) = build_system(d, &PeriodicSet::full(3).unwrap(), order).unwrap();
            let one_minus_e = TruncatedSeries::one(order)
                .unwrap()
                .checked_sub(&LoopModel::new(d, order).unwrap().primitive_excursion_gf())
                .unwrap();
            for i in 0..3 {
                let sum = m.row(i).iter().fold(TruncatedSeries::zero(order).unwrap(), |a, b| a.checked_add(b).unwrap());
                assert_eq!(sum, one_minus_e);
            }
        }
    }

    #[test]
    fn entries_are_special() {
        let s = set(&[0, 2, 3], 5);
        let (m, _) = build_system(2, &s, 16).unwrap();
        for (i, &r) in s.residues().iter().enumerate() {
            for (j, &q) in s.residues().iter().enumerate() {
                let sh = shift_distance(r, q, 5).unwrap();
                let entry = m.get(i, j);
                let off = if i == j { entry.checked_sub(&TruncatedSeries::one(16).unwrap()).unwrap() } else { entry.clone() };
                assert!(off.is_special(5, sh));
            }
        }
    }

    #[test]
    fn a1_even_part_examples() {
        let p = restricted_path_gf(1, &PeriodicSet::a1(), 0, 5).unwrap();
        assert_eq!(p.multisection(2, 0).unwrap(), ints(&[1, 0, 8, 0, 96], 5));
        let p = restricted_path_gf(2, &PeriodicSet::a1(), 0, 7).unwrap();
        assert_eq!(p.multisection(2, 0).unwrap(), ints(&[1, 0, 192, 0, 45056, 0, 10979328], 7));
    }

    #[test]
    fn a2_quarter_section() {
        let p = restricted_path_gf(1, &PeriodicSet::a2(), 0, 9).unwrap();
        assert_eq!(p.multisection(4, 0).unwrap(), ints(&[1, 0, 0, 0, 128, 0, 0, 0, 24576], 9));
        assert_eq!(
            p.multisection(4, 0).unwrap(),
            inv_sqrt_one_minus_monomial(&rat(256), 4, 9).unwrap()
        );
    }

    #[test]
    fn full_set_counts_all_paths() {
        for d in 1..=3usize {
            for period in 1..=4 {
                let p = restricted_path_gf(d, &PeriodicSet::full(period).unwrap(), 0, 8).unwrap();
                assert_eq!(p, LoopModel::new(d, 8).unwrap().all_paths_gf());
            }
        }
    }

    #[test]
    fn residual_is_zero_and_solution_integral() {
        for (d, s) in [(1, set(&[0, 2], 5)), (2, set(&[0, 1, 3], 6)), (3, PeriodicSet::a2())] {
            let order = 14;
            let (m, rhs) = build_system(d, &s, order).unwrap();
            let x = solve(&m, &rhs).unwrap();
            assert_eq!(m.apply(&x).unwrap(), rhs);
            let w = BigInt::from(4).pow(d as u32);
            for p in &x {
                assert!(p.is_nonnegative_integral());
                assert!(p.constant_term() == &rat(1));
                for (k, c) in p.coeffs().iter().enumerate() {
                    assert!(c.to_integer() <= Pow::pow(&w, k as u32));
                }
            }
        }
    }

    #[test]
    fn rotation_invariant_sets_give_equal_solutions() {
        // {0, 2} mod 4 is invariant under rotation by 2
        let sol = solve_restricted(2, &set(&[0, 2], 4), 12).unwrap();
        assert_eq!(sol.series[0], sol.series[1]);
        let sol = solve_restricted(1, &set(&[0, 1, 2], 3), 12).unwrap();
        assert_eq!(sol.series[0], sol.series[2]);
    }

    #[test]
    fn matches_oracle() {
        let b = OracleBudget::default();
        for d in 1..=2 {
            for s in [PeriodicSet::a1(), PeriodicSet::a2(), set(&[0, 2], 5), set(&[0, 1, 2], 4), set(&[0, 3], 7)] {
                let k = 10;
                let p = restricted_path_gf(d, &s, 0, k + 1).unwrap();
                let t = count_restricted(d, &s, k, &b).unwrap();
                for (c, n) in p.coeffs().iter().zip(t.counts()) {
                    assert_eq!(c.to_integer(), BigInt::from(n.clone()), "d={d} {s}");
                }
            }
        }
    }

    #[test]
    fn non_admissible_residue_rejected() {
        assert_eq!(
            restricted_path_gf(1, &PeriodicSet::a2(), 2, 5).unwrap_err(),
            Error::NotAdmissible(2)
        );
        // residues are reduced mod the period
        assert!(restricted_path_gf(1, &PeriodicSet::a2(), 5, 5).is_ok());
    }

    #[test]
    fn reduction_examples() {
        let a1 = PeriodicSet::a1();
        let a2 = PeriodicSet::a2();
        assert!(reduction_check(1, &a1, 0, 0, 16).unwrap());
        assert!(reduction_check(1, &a2, 0, 0, 16).unwrap());
        assert!(reduction_check(2, &a1, 0, 0, 16).unwrap());
        // P^1 enters the A₂ reduction through its (4,3) section
        assert_eq!(reduction_index(&a2, 0, 1, 0).unwrap(), 3);
    }

    #[test]
    fn reduction_holds_for_every_target() {
        let s = set(&[0, 2, 3], 5);
        for m in s.residues().to_vec() {
            for q in 0..5 {
                assert!(reduction_check(2, &s, m, q, 12).unwrap(), "m={m} q={q}");
            }
        }
        assert!(reduction_check(1, &s, 1, 0, 8).is_err());
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(closed_form_a1(1, 5).unwrap(), ints(&[1, 0, 8, 0, 96], 5));
        assert_eq!(closed_form_a1(2, 5).unwrap(), ints(&[1, 0, 192, 0, 45056], 5));
        let order = 11;
        let b = OracleBudget::default();
        let t = count_restricted(3, &PeriodicSet::a1(), order - 1, &b).unwrap();
        let cf = closed_form_a1(3, order).unwrap();
        for (k, c) in cf.coeffs().iter().enumerate() {
            let expected = if k % 2 == 0 { BigInt::from(t.counts()[k].clone()) } else { BigInt::from(0) };
            assert_eq!(c.to_integer(), expected);
        }
        for d in 1..=3 {
            let solved = restricted_path_gf(d, &PeriodicSet::a1(), 0, order).unwrap();
            assert_eq!(closed_form_a1(d, order).unwrap(), solved.multisection(2, 0).unwrap());
        }
    }

    #[test]
    fn cache_reuses_solutions() {
        let cache = SolutionCache::new();
        let a = cache.get_or_solve(1, &PeriodicSet::a2(), 10).unwrap();
        let b = cache.get_or_solve(1, &PeriodicSet::a2(), 10).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
        cache.get_or_solve(2, &PeriodicSet::a2(), 10).unwrap();
        assert_eq!(cache.len(), 2);
    }
}
