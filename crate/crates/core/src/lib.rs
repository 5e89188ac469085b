//! Exact generating functions for directed lattice paths on `Z₊ × Z^d`
//! (steps `{±1}^d`) that may touch the time axis only at a periodic set of
//! admissible even times.
//!
//! * [`series`]: truncated power series over exact rationals.
//! * [`loops`]: loops, simple loops and escaping paths on the free lattice.
//! * [`periodic`]: admissible sets and the cyclic shift distance.
//! * [`system`]: the restricted-path linear system and its reductions.
//! * [`circulant`]: complete circulants and the Hajnal–Nagy determinant chain.
//! * [`oracle`]: brute-force DP counts used as ground truth.
//! * [`cli`]: the `lattice-gf` command line front end.

pub mod circulant;
pub mod cli;
pub mod error;
pub mod loops;
pub mod matrix;
pub mod oracle;
pub mod periodic;
pub mod series;
pub mod system;

pub use error::{Error, PeriodicSetError, Result};
pub use loops::LoopModel;
pub use matrix::SeriesMatrix;
pub use oracle::{OracleBudget, PathCountTable};
pub use periodic::PeriodicSet;
pub use series::{Rational, TruncatedSeries};
pub use system::RestrictedPathSolution;
