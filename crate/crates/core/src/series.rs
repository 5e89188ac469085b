//! Truncated formal power series over exact rationals.
//!
//! A [`TruncatedSeries`] of order `N` holds exactly the coefficients
//! `c_0..c_{N-1}`. Everything at index `N` and above is unknown, not zero, so
//! binary operations refuse to mix orders instead of silently truncating.
//!
//! Throughout the crate coefficient `k` counts objects of path length `2k`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision reduced fraction with positive denominator.
pub type Rational = BigRational;

/// Shorthand for an integral [`Rational`].
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    /// Builds a series from its coefficient list. The order is the list length.
    pub fn new(coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::ZeroOrder);
        }
        Ok(Self { coeffs })
    }

    /// Builds a series of the given order from a prefix of coefficients,
    /// padding with zeros (and dropping anything past `order`).
    pub fn from_prefix<I, T>(prefix: I, order: usize) -> Result<Self>
    where
        I: IntoIterator<Item = T>,
        T: Into<Rational>,
    {
        if order == 0 {
            return Err(Error::ZeroOrder);
        }
        let mut coeffs: Vec<Rational> = prefix.into_iter().take(order).map(Into::into).collect();
        coeffs.resize(order, Rational::zero());
        Ok(Self { coeffs })
    }

    pub fn from_integers(prefix: &[i64], order: usize) -> Result<Self> {
        Self::from_prefix(prefix.iter().map(|&c| rat(c)), order)
    }

    pub fn zero(order: usize) -> Result<Self> {
        Self::from_prefix(std::iter::empty::<Rational>(), order)
    }

    pub fn one(order: usize) -> Result<Self> {
        Self::constant(Rational::one(), order)
    }

    pub fn constant(c: Rational, order: usize) -> Result<Self> {
        Self::from_prefix([c], order)
    }

    /// `c * t^m`, or zero if `m` is past the truncation order.
    pub fn monomial(c: Rational, m: usize, order: usize) -> Result<Self> {
        let mut s = Self::zero(order)?;
        if m < order {
            s.coeffs[m] = c;
        }
        Ok(s)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    /// Coefficient at `k`; panics if `k` is past the truncation order.
    pub fn coeff(&self, k: usize) -> &Rational {
        &self.coeffs[k]
    }

    pub fn constant_term(&self) -> &Rational {
        &self.coeffs[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// True if every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// True if every coefficient is a nonnegative integer.
    pub fn is_nonnegative_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer() && !c.is_negative())
    }

    /// Index of the first coefficient where `self` and `other` differ.
    pub fn first_difference(&self, other: &Self) -> Result<Option<usize>> {
        self.check_order(other)?;
        Ok(self.coeffs.iter().zip(&other.coeffs).position(|(a, b)| a != b))
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(Self { coeffs })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(Self { coeffs })
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Truncated Cauchy product.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let n = self.order();
        let mut coeffs = vec![Rational::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..n - i].iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Ok(Self { coeffs })
    }

    /// Multiplicative inverse up to the truncation order.
    pub fn invert(&self) -> Result<Self> {
        let a0 = self.constant_term();
        if a0.is_zero() {
            return Err(Error::NonUnit);
        }
        let inv0 = a0.recip();
        let n = self.order();
        let mut out: Vec<Rational> = Vec::with_capacity(n);
        out.push(inv0.clone());
        for j in 1..n {
            let mut acc = Rational::zero();
            for i in 1..=j {
                let a = &self.coeffs[i];
                if !a.is_zero() {
                    acc += a * &out[j - i];
                }
            }
            out.push(-(acc * &inv0));
        }
        Ok(Self { coeffs: out })
    }

    /// `[g]_{q,r}`: keeps the coefficients at indices `≡ r (mod q)`, zeros
    /// the rest, and keeps the full length.
    pub fn multisection(&self, q: usize, r: usize) -> Result<Self> {
        if q == 0 || r >= q {
            return Err(Error::ResidueOutOfRange { residue: r, modulus: q });
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| if i % q == r { c.clone() } else { Rational::zero() })
            .collect();
        Ok(Self { coeffs })
    }

    /// All `q` multisections, indexed by residue.
    pub fn multisections(&self, q: usize) -> Result<Vec<Self>> {
        (0..q).map(|r| self.multisection(q, r)).collect()
    }

    /// `c * t^m * self`, truncated.
    pub fn shift_by_monomial(&self, c: &Rational, m: usize) -> Self {
        let n = self.order();
        let mut coeffs = vec![Rational::zero(); n];
        if m < n {
            for (dst, src) in coeffs[m..].iter_mut().zip(&self.coeffs) {
                *dst = src * c;
            }
        }
        Self { coeffs }
    }

    /// True if every nonzero coefficient sits at an index `≡ beta (mod alpha)`.
    pub fn is_special(&self, alpha: usize, beta: usize) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(i, c)| c.is_zero() || i % alpha == beta)
    }
}

/// `(1 - c t^m)^{-1/2}`: the coefficient at `t^{jm}` is `binom(2j, j) (c/4)^j`.
pub fn inv_sqrt_one_minus_monomial(c: &Rational, m: usize, order: usize) -> Result<TruncatedSeries> {
    if m == 0 {
        return Err(Error::Shape("monomial degree must be positive".into()));
    }
    let mut s = TruncatedSeries::zero(order)?;
    let quarter = c / rat(4);
    let mut power = Rational::one();
    for (j, idx) in (0..order).step_by(m).enumerate() {
        let b = binomial(BigInt::from(2 * j), BigInt::from(j));
        s.coeffs[idx] = Rational::from_integer(b) * &power;
        power *= &quarter;
    }
    Ok(s)
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            } else if c.is_negative() {
                f.write_str("-")?;
            }
            first = false;
            let mag = c.abs();
            match k {
                0 => write!(f, "{mag}")?,
                _ if mag.is_one() => {}
                _ => write!(f, "{mag}*")?,
            }
            match k {
                0 => {}
                1 => f.write_str("t")?,
                _ => write!(f, "t^{k}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(t^{})", self.order())
    }
}
