//! Scalars, sparse linear combinations, commutative polynomials, truncated power
//! series and exact linear algebra.

mod lincomb;
mod matrix;
mod poly;
mod rational;
mod series;

pub(crate) use lincomb::write_terms;
pub use lincomb::LinComb;
pub use matrix::{mat_rank_kernel, QMatrix};
pub use poly::{CommPoly, Exponents};
pub use rational::{binomial, factorial, fmt_rational, int, rat, Rational};
pub use series::{SeriesError, TruncSeries};
