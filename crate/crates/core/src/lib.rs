//! Sharp two-sided bounds for the digamma and polygamma functions, fast
//! Euler-constant sequences, and exact rational certificates for the
//! polynomial sign facts the bounds rest on.
//!
//! The library is organized around a weighted-logarithm approximant
//! `L(x, a)` of `psi(x+1)` with a tunable parameter `a`. Four distinguished
//! parameter values (`a1`, `a0`, `a0'`, `a0''`) make `L` a one-sided bound,
//! the tightest such bound, or give monotone/convex residuals; from those,
//! the crate derives certified enclosures for `psi`, `psi'`, `psi''` and the
//! harmonic numbers, plus a family of sequences converging to the
//! Euler-Mascheroni constant as fast as `n^-8`.
//!
//! Modules:
//! * [`real`] / [`rational`] / [`poly`] / [`quadext`] — exact and
//!   configurable-precision arithmetic, Sturm root counting, certificates.
//! * [`oracle`] — independent high-precision reference values for
//!   `psi^(k)`, harmonic numbers, the Euler constant, and `zeta(3)`.
//! * [`approximant`] — `L(x, a)`, its partial derivatives, and the
//!   distinguished constants.
//! * [`bounds`] — certified enclosures and one-sided inequalities.
//! * [`gammaseq`] — Euler-constant sequences, error tables, convergence
//!   order estimation.
//! * [`certify`] — the registry of exact polynomial claims and its checker.
//! * [`cli`] — the command-line front end.

pub mod approximant;
pub mod bounds;
pub mod certify;
pub mod cli;
pub mod error;
pub mod gammaseq;
pub mod oracle;
pub mod poly;
pub mod quadext;
pub mod rational;
pub mod real;

pub use error::{Error, Result};
pub use poly::{count_real_roots, certify_positive, RationalPolynomial, RatBound};
pub use rational::Rat;
pub use real::{PrecisionContext, Real};
