//! Loop counting on the unrestricted lattice `Z^d` with steps `{±1}^d`.
//!
//! Every generating function here is indexed by half-length. Primitive
//! `T`-excursions project bijectively onto simple loops, so
//! `E(t) = SL(t) = 1 - 1/L(t)`, and escaping paths are
//! `E∞(t) = 1 / (L(t) (1 - 4^d t))`; `4^d` is the number of length-2 paths.

use num_bigint::BigUint;
use num_integer::binomial;
use num_traits::{One, Pow};

use crate::error::{Error, Result};
use crate::series::{Rational, TruncatedSeries};

pub const DEFAULT_MAX_DIM: usize = 4;

/// `4^d`: there are `2^d` steps, so `4^d` paths of length 2. Equals `4d²`
/// only for `d = 1, 2`.
pub fn two_step_count(d: usize) -> Rational {
    Rational::from_integer(num_bigint::BigInt::from(4u32).pow(d as u32))
}

/// Number of length-`2k` loops: the coordinates are independent `±1` walks,
/// so this is `binom(2k, k)^d`.
pub fn loop_count(d: usize, k: usize) -> BigUint {
    let b = binomial(BigUint::from(2 * k), BigUint::from(k));
    Pow::pow(b, d as u32)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LoopModel {
    dim: usize,
    order: usize,
}

impl LoopModel {
    pub fn new(dim: usize, order: usize) -> Result<Self> {
        Self::with_dim_cap(dim, order, DEFAULT_MAX_DIM)
    }

    pub fn with_dim_cap(dim: usize, order: usize, max_dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        if dim > max_dim {
            return Err(Error::DimensionTooLarge { dim, max: max_dim });
        }
        if order == 0 {
            return Err(Error::ZeroOrder);
        }
        Ok(Self { dim, order })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Number of length-2 paths: `(2^d)^2 = 4^d`.
    pub fn two_step_count(&self) -> Rational {
        two_step_count(self.dim)
    }

    /// `L(t)`.
    pub fn loop_gf(&self) -> TruncatedSeries {
        let coeffs = (0..self.order).map(|k| Rational::from_integer(loop_count(self.dim, k).into()));
        TruncatedSeries::from_prefix(coeffs, self.order).expect("order checked at construction")
    }

    /// `1/L(t)`.
    pub fn inverse_loop_gf(&self) -> TruncatedSeries {
        self.loop_gf().invert().expect("L(t) has constant term 1")
    }

    /// `E(t) = SL(t) = 1 - 1/L(t)`.
    pub fn primitive_excursion_gf(&self) -> TruncatedSeries {
        self.inverse_loop_gf().neg().checked_add(&self.one()).expect("same order")
    }

    /// `E∞(t) = 1 / (L(t) (1 - 4^d t))`.
    pub fn escaping_gf(&self) -> TruncatedSeries {
        let one_minus = TruncatedSeries::from_prefix([Rational::one(), -self.two_step_count()], self.order)
            .expect("order checked at construction");
        self.loop_gf()
            .checked_mul(&one_minus)
            .and_then(|s| s.invert())
            .expect("constant term 1")
    }

    /// `1 / (1 - 4^d t)`: all paths, unrestricted.
    pub fn all_paths_gf(&self) -> TruncatedSeries {
        let r = self.two_step_count();
        let mut p = Rational::one();
        let coeffs: Vec<Rational> = (0..self.order)
            .map(|_| {
                let c = p.clone();
                p *= &r;
                c
            })
            .collect();
        TruncatedSeries::new(coeffs).expect("nonzero order")
    }

    fn one(&self) -> TruncatedSeries {
        TruncatedSeries::one(self.order).expect("nonzero order")
    }
}
