//! Machine-readable output: exact coefficients as decimal strings.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::{Rational, TruncatedSeries};

/// `{"n": "<numerator>", "d": "<denominator>"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coefficient {
    pub n: String,
    pub d: String,
}

impl From<&Rational> for Coefficient {
    fn from(r: &Rational) -> Self {
        Self {
            n: r.numer().to_string(),
            d: r.denom().to_string(),
        }
    }
}

impl TryFrom<&Coefficient> for Rational {
    type Error = Error;

    fn try_from(c: &Coefficient) -> Result<Self> {
        let parse = |s: &str| {
            s.parse::<BigInt>()
                .map_err(|e| Error::Shape(format!("bad integer {s:?}: {e}")))
        };
        let d = parse(&c.d)?;
        if d == BigInt::from(0) {
            return Err(Error::Shape("zero denominator".into()));
        }
        Ok(Rational::new(parse(&c.n)?, d))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultisectionSpec {
    pub modulus: usize,
    pub residue: usize,
}

/// Output of `lattice-gf gf`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesDocument {
    pub dim: usize,
    pub residues: Vec<usize>,
    pub period: usize,
    pub order: usize,
    /// Starting residue `r` of `P^r`.
    pub start: usize,
    pub multisection: Option<MultisectionSpec>,
    pub coefficients: Vec<Coefficient>,
}

impl SeriesDocument {
    pub fn series(&self) -> Result<TruncatedSeries> {
        TruncatedSeries::new(
            self.coefficients
                .iter()
                .map(Rational::try_from)
                .collect::<Result<Vec<_>>>()?,
        )
    }
}

pub fn coefficients(s: &TruncatedSeries) -> Vec<Coefficient> {
    s.coeffs().iter().map(Coefficient::from).collect()
}

/// CSV rows `k,length,numerator,denominator`.
pub fn series_csv(s: &TruncatedSeries) -> String {
    let mut out = String::from("k,length,numerator,denominator\n");
    for (k, c) in s.coeffs().iter().enumerate() {
        out.push_str(&format!("{k},{},{},{}\n", 2 * k, c.numer(), c.denom()));
    }
    out
}
