//! Brute-force path counts by dynamic programming over space positions.
//!
//! The walk is simulated step by step on a dense hypercube of cells. A cell
//! that can no longer get back to the origin before the horizon is folded
//! into a scalar bucket, which just multiplies by `2^d` per step, so only
//! `(2K+1)^d` cells are ever stored for a horizon of `2K` steps.
//!
//! Nothing in here touches generating functions; it is the ground truth the
//! series code is checked against.

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::periodic::PeriodicSet;

pub const ORACLE_MAX_DIM: usize = 3;
pub const DEFAULT_MAX_CELLS: usize = 1 << 20;
/// Default half-length caps for d = 1, 2, 3.
pub const DEFAULT_HALF_LEN_CAPS: [usize; ORACLE_MAX_DIM] = [24, 16, 12];
pub const MAX_CELLS_ENV: &str = "LATTICE_GF_MAX_CELLS";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_cells: usize,
    /// Per-dimension half-length caps; `None` leaves only the cell cap.
    pub half_len_caps: Option<[usize; ORACLE_MAX_DIM]>,
}

impl Default for OracleBudget {
    fn default() -> Self {
        Self {
            max_cells: DEFAULT_MAX_CELLS,
            half_len_caps: Some(DEFAULT_HALF_LEN_CAPS),
        }
    }
}

impl OracleBudget {
    /// Default budget, unless `LATTICE_GF_MAX_CELLS` is set, in which case the
    /// cell count is the only limit.
    pub fn from_env() -> Result<Self> {
        match std::env::var(MAX_CELLS_ENV) {
            Ok(v) => {
                let max_cells = v
                    .trim()
                    .parse()
                    .map_err(|_| Error::Resource(format!("{MAX_CELLS_ENV}={v:?} is not a cell count")))?;
                Ok(Self { max_cells, half_len_caps: None })
            }
            Err(_) => Ok(Self::default()),
        }
    }

    /// Largest half-length this budget allows in dimension `d`.
    pub fn max_half_len(&self, d: usize) -> usize {
        let mut k = 0;
        while self.check(d, k + 1).is_ok() {
            k += 1;
        }
        k
    }

    pub fn check(&self, d: usize, half_len: usize) -> Result<()> {
        if d == 0 {
            return Err(Error::ZeroDimension);
        }
        if d > ORACLE_MAX_DIM {
            return Err(Error::DimensionTooLarge { dim: d, max: ORACLE_MAX_DIM });
        }
        if let Some(caps) = self.half_len_caps {
            if half_len > caps[d - 1] {
                return Err(Error::Resource(format!(
                    "half-length {half_len} exceeds oracle cap {} for d={d}",
                    caps[d - 1]
                )));
            }
        }
        let cells = (2 * half_len + 1)
            .checked_pow(d as u32)
            .filter(|&c| c <= self.max_cells)
            .ok_or_else(|| {
                Error::Resource(format!(
                    "(2*{half_len}+1)^{d} cells exceeds the cap of {} (set {MAX_CELLS_ENV} to raise it)",
                    self.max_cells
                ))
            })?;
        debug_assert!(cells <= self.max_cells);
        Ok(())
    }
}

/// Exact counts indexed by half-length `k` (paths of length `2k`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathCountTable {
    pub dim: usize,
    pub restriction: Option<PeriodicSet>,
    counts: Vec<BigUint>,
}

impl PathCountTable {
    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }
}

#[derive(Debug, Clone)]
struct StepRecord {
    /// Mass at the origin right after the step, before any forbidden-time kill.
    origin: BigUint,
    /// Total mass after the step (and after the kill).
    total: BigUint,
}

struct Lattice {
    dim: usize,
    radius: usize,
    side: usize,
    cells: Vec<BigUint>,
    bucket: BigUint,
    steps: Vec<Vec<isize>>,
}

impl Lattice {
    fn new(dim: usize, radius: usize) -> Self {
        let side = 2 * radius + 1;
        let mut cells = vec![BigUint::zero(); side.pow(dim as u32)];
        let mut lattice = Self {
            dim,
            radius,
            side,
            cells: Vec::new(),
            bucket: BigUint::zero(),
            steps: Vec::new(),
        };
        cells[lattice.origin_index()] = BigUint::from(1u32);
        lattice.cells = cells;
        lattice.steps = (0..1usize << dim)
            .map(|mask| (0..dim).map(|i| if mask >> i & 1 == 1 { 1 } else { -1 }).collect())
            .collect();
        lattice
    }

    fn origin_index(&self) -> usize {
        (0..self.dim).fold(0, |acc, _| acc * self.side + self.radius)
    }

    fn coords(&self, mut idx: usize) -> Vec<isize> {
        let mut c = vec![0isize; self.dim];
        for slot in c.iter_mut().rev() {
            *slot = (idx % self.side) as isize - self.radius as isize;
            idx /= self.side;
        }
        c
    }

    fn index(&self, coords: &[isize]) -> usize {
        coords
            .iter()
            .fold(0, |acc, &x| acc * self.side + (x + self.radius as isize) as usize)
    }

    /// Advances one step. `reach` is how many steps remain after this one in
    /// which the origin still matters; cells farther than that go to the bucket.
    fn step(&mut self, reach: Option<usize>) {
        let fan_out = BigUint::from(self.steps.len());
        self.bucket *= &fan_out;
        let mut next = vec![BigUint::zero(); self.cells.len()];
        for idx in 0..self.cells.len() {
            if self.cells[idx].is_zero() {
                continue;
            }
            let mass = std::mem::take(&mut self.cells[idx]);
            let x = self.coords(idx);
            for s in &self.steps {
                let y: Vec<isize> = x.iter().zip(s).map(|(a, b)| a + b).collect();
                let far = y.iter().map(|v| v.unsigned_abs()).max().unwrap_or(0);
                match reach {
                    Some(r) if far <= r => next[self.index(&y)] += &mass,
                    _ => self.bucket += &mass,
                }
            }
        }
        self.cells = next;
    }

    fn total(&self) -> BigUint {
        self.cells.iter().fold(self.bucket.clone(), |acc, c| acc + c)
    }
}

/// Runs `2 * half_len + extra` steps. After each even step `2a` with
/// `forbid(a)` true, the origin cell is cleared.
fn simulate<F>(dim: usize, half_len: usize, extra: usize, mut forbid: F) -> Vec<StepRecord>
where
    F: FnMut(usize) -> bool,
{
    let horizon = 2 * half_len;
    let mut lattice = Lattice::new(dim, half_len);
    let origin = lattice.origin_index();
    let mut records = vec![StepRecord {
        origin: BigUint::from(1u32),
        total: BigUint::from(1u32),
    }];
    for n in 1..=horizon + extra {
        lattice.step(horizon.checked_sub(n));
        let at_origin = lattice.cells[origin].clone();
        if n % 2 == 1 {
            debug_assert!(at_origin.is_zero(), "origin reached at odd time {n}");
        } else if forbid(n / 2) {
            lattice.cells[origin] = BigUint::zero();
        }
        records.push(StepRecord {
            origin: at_origin,
            total: lattice.total(),
        });
    }
    records
}

fn even_totals(records: &[StepRecord]) -> Vec<BigUint> {
    records.iter().step_by(2).map(|r| r.total.clone()).collect()
}

/// Paths of length `2k`, `k ≤ max_half_len`, that touch the time axis only
/// at admissible points of `s`.
pub fn count_restricted(d: usize, s: &PeriodicSet, max_half_len: usize, budget: &OracleBudget) -> Result<PathCountTable> {
    budget.check(d, max_half_len)?;
    let records = simulate(d, max_half_len, 0, |a| !s.is_admissible_half_time(a));
    Ok(PathCountTable {
        dim: d,
        restriction: Some(s.clone()),
        counts: even_totals(&records),
    })
}

/// Closed walks from the origin, by half-length.
pub fn count_loops(d: usize, max_half_len: usize, budget: &OracleBudget) -> Result<PathCountTable> {
    budget.check(d, max_half_len)?;
    let records = simulate(d, max_half_len, 0, |_| false);
    Ok(PathCountTable {
        dim: d,
        restriction: None,
        counts: records.iter().step_by(2).map(|r| r.origin.clone()).collect(),
    })
}

/// Loops with no proper nonempty prefix returning to the origin. The empty
/// loop is not simple.
pub fn count_simple_loops(d: usize, max_half_len: usize, budget: &OracleBudget) -> Result<PathCountTable> {
    budget.check(d, max_half_len)?;
    let records = simulate(d, max_half_len, 0, |a| a >= 1);
    let mut counts: Vec<BigUint> = records.iter().step_by(2).map(|r| r.origin.clone()).collect();
    counts[0] = BigUint::zero();
    Ok(PathCountTable {
        dim: d,
        restriction: None,
        counts,
    })
}

/// Walks that never revisit the origin after time 0.
pub fn count_escaping(d: usize, max_half_len: usize, budget: &OracleBudget) -> Result<PathCountTable> {
    budget.check(d, max_half_len)?;
    let records = simulate(d, max_half_len, 0, |a| a >= 1);
    Ok(PathCountTable {
        dim: d,
        restriction: None,
        counts: even_totals(&records),
    })
}

/// Restricted paths of odd length `2k + 1`.
pub fn odd_length_count(d: usize, s: &PeriodicSet, half_len: usize, budget: &OracleBudget) -> Result<BigUint> {
    budget.check(d, half_len)?;
    let records = simulate(d, half_len, 1, |a| !s.is_admissible_half_time(a));
    Ok(records[2 * half_len + 1].total.clone())
}
