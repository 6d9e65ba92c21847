//! Certificates of orthogonal equivalence for real polynomials.
//!
//! Two polynomials `f` and `g` in `n` variables are *orthogonally equivalent*
//! when there is an orthogonal matrix `R` with `f(Rx) = g(x)`.  This crate
//! decides the question numerically for polynomials with a generic spectrum
//! and, in the positive case, produces the certificate matrix `R` itself:
//!
//! 1. [`pwcov`] turns a polynomial into an `n x n` covariance matrix — the
//!    second moment of `x` on the unit sphere weighted by the squared
//!    homogenized polynomial — through a closed-form sparse accumulation
//!    rather than numerical integration.
//! 2. [`spectra`] diagonalizes that matrix with a cyclic Jacobi sweep,
//!    yielding principal axes that transform contravariantly under the
//!    orthogonal group.
//! 3. [`certify`] rewrites both inputs in their own principal axes, matches
//!    the two canonical forms up to coordinate sign flips, and assembles the
//!    certificate `R` from the two axis bases and the matched sign vector.
//! 4. [`genbench`] generates seeded random test instances (dense homogeneous
//!    polynomials pushed through Cayley-parameterized orthogonal matrices)
//!    and times the certification pipeline phase by phase.
//!
//! All coefficient arithmetic is plain `f64`; results carry a relative
//! residual so callers can judge how sharply the certificate reproduces `g`.
//! Equal inputs produce bit-identical outputs: term maps iterate in a fixed
//! graded-lexicographic order and every parallel reduction merges its partial
//! results in that same order.

pub mod certify;
mod error;
pub mod genbench;
pub mod polyalg;
pub mod pwcov;
pub mod spectra;

pub use error::Error;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Default relative tolerance for certification: residuals, canonical-form
/// matching, and spectrum comparison.
pub const DEFAULT_TOL_REL: f64 = 1e-6;

/// Default relative tolerance below which two adjacent eigenvalues count as
/// coinciding, i.e. the spectrum is treated as degenerate.
pub const DEFAULT_DISTINCTNESS_TOL: f64 = 1e-9;

/// Orthogonality defect `max |R^T R - I|` tolerated before a matrix stops
/// counting as orthogonal.
pub const ORTHOGONALITY_TOL: f64 = 1e-10;
