//! Exact search for divisible formal weight enumerators.
//!
//! The crate builds the binomial-moment matrices of degree-`2n` and
//! degree-`2n+1` polynomials divisible by two, finds the values of `q` at
//! which their determinants vanish, reconstructs the anti-invariant
//! enumerators, and analyses their Duursma zeta polynomials. All arithmetic
//! is exact over `Q` or a real quadratic field `Q(sqrt d)`.
//!
//! Module map:
//!
//! * [`exactnum`]: rationals and real quadratic numbers, exact signs, intervals.
//! * [`poly`]: univariate and homogeneous bivariate polynomials, the
//!   MacWilliams transform, Sturm sequences and numeric root finding.
//! * [`moments`]: moment matrices, determinants, admissible `q`, construction.
//! * [`zeta`]: zeta polynomials, functional equations, Riemann-hypothesis checks.
//! * [`rings`]: two-generator invariant rings and extremal search.
//! * [`conjecture`]: the Chebyshev determinant-ratio check.
//! * [`catalog`]: built-in enumerators and the JSON catalog format.

pub mod catalog;
pub mod conjecture;
mod error;
pub mod exactnum;
pub mod linalg;
pub mod moments;
pub mod poly;
pub mod rings;
pub mod zeta;

pub use error::{Error, Result};
pub use exactnum::{ExactNumber, Interval};
pub use poly::{Duality, HomogPoly, UniPoly, WeightProfile};
