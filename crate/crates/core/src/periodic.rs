//! Periodic admissible sets on the time axis.
//!
//! A set `(A, t_A)` with `A = {0 = a_0 < … < a_k}`, `a_k < t_A` admits the
//! even time point `2a` (the walk may sit at the space origin there) iff
//! `a mod t_A ∈ A`. All indices are in half-time units.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, PeriodicSetError, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PeriodicSet {
    residues: Vec<usize>,
    period: usize,
}

impl PeriodicSet {
    /// Validates a residue list against a period. Residues must already be
    /// reduced, strictly increasing, and start at 0.
    pub fn new(residues: Vec<usize>, period: usize) -> std::result::Result<Self, PeriodicSetError> {
        if period == 0 {
            return Err(PeriodicSetError::ZeroPeriod);
        }
        let first = *residues.first().ok_or(PeriodicSetError::Empty)?;
        if first != 0 {
            return Err(PeriodicSetError::MissingZero(first));
        }
        for w in residues.windows(2) {
            if w[1] <= w[0] {
                return Err(PeriodicSetError::NotIncreasing(w[1]));
            }
        }
        if let Some(&last) = residues.last() {
            if last >= period {
                return Err(PeriodicSetError::ResidueTooLarge { residue: last, period });
            }
        }
        Ok(Self { residues, period })
    }

    /// Every residue `0..period` admitted: no restriction at all.
    pub fn full(period: usize) -> std::result::Result<Self, PeriodicSetError> {
        Self::new((0..period).collect(), period)
    }

    /// `({0}, 2)`: origin visits allowed only at times divisible by four.
    pub fn a1() -> Self {
        Self { residues: vec![0], period: 2 }
    }

    /// `({0, 1}, 4)`.
    pub fn a2() -> Self {
        Self { residues: vec![0, 1], period: 4 }
    }

    pub fn residues(&self) -> &[usize] {
        &self.residues
    }

    pub fn period(&self) -> usize {
        self.period
    }

    pub fn len(&self) -> usize {
        self.residues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.residues.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.residues.len() == self.period
    }

    /// Whether time point `2a` may touch the space origin.
    pub fn is_admissible_half_time(&self, a: usize) -> bool {
        self.residues.binary_search(&(a % self.period)).is_ok()
    }

    /// Position of a residue (reduced mod the period) in the residue list.
    pub fn index_of(&self, r: usize) -> Option<usize> {
        self.residues.binary_search(&(r % self.period)).ok()
    }
}

/// Forward cyclic distance from `j` to `q` on the oriented `period`-gon,
/// i.e. `(q - j) mod period`.
pub fn shift_distance(j: usize, q: usize, period: usize) -> Result<usize> {
    if j >= period || q >= period {
        return Err(Error::ShiftOutOfRange { j, q, period });
    }
    Ok((q + period - j) % period)
}

/// `({0, …, k-1}, 2k)`, the admissible set of the Hajnal–Nagy identity.
/// For `k = 1` this is `({0}, 2)`.
pub fn hn_set(k: usize) -> Result<PeriodicSet> {
    if k == 0 {
        return Err(Error::Shape("hn_set needs k >= 1".into()));
    }
    Ok(PeriodicSet::new((0..k).collect(), 2 * k)?)
}

impl fmt::Display for PeriodicSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rs: Vec<String> = self.residues.iter().map(ToString::to_string).collect();
        write!(f, "({{{}}}, {})", rs.join(","), self.period)
    }
}

/// Parses a comma-separated residue list such as `0,1,2`.
pub fn parse_residues(s: &str) -> std::result::Result<Vec<usize>, String> {
    s.split(',')
        .map(|p| p.trim().parse::<usize>().map_err(|e| format!("bad residue {p:?}: {e}")))
        .collect()
}

impl FromStr for PeriodicSet {
    type Err = String;

    /// Accepts `0,1/4` (residues, slash, period).
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let (res, period) = s
            .split_once('/')
            .ok_or_else(|| format!("expected <residues>/<period>, got {s:?}"))?;
        let period = period.trim().parse::<usize>().map_err(|e| e.to_string())?;
        PeriodicSet::new(parse_residues(res)?, period).map_err(|e| e.to_string())
    }
}
