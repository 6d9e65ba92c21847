//! Sparse multivariate polynomial arithmetic over `f64`.
//!
//! A [`Polynomial`] is a map from exponent vectors to coefficients with a
//! fixed variable count.  Term iteration is always graded-lexicographic
//! (total degree first, then lexicographic), which makes every fold over the
//! terms — and therefore every result in the crate — deterministic.
//!
//! Beyond ring arithmetic the module provides the two group actions the
//! certification pipeline is built on: substitution of a linear change of
//! variables ([`act_linear`]) and the special case of coordinate sign flips
//! ([`act_signflip`]), plus homogenization and the coefficient norms used
//! for residuals.  [`SquareMatrix`] is the small dense matrix type shared by
//! the whole crate.

mod exponent;
mod matrix;
mod parse;
mod poly;

pub use exponent::Exponent;
pub use matrix::SquareMatrix;
pub use parse::{format_polynomial, infer_nvars, parse_polynomial};
pub use poly::{act_linear, act_signflip, Polynomial};
