//! Symmetric eigendecomposition and principal axes of a polynomial.
//!
//! [`sym_eigen`] is a self-contained cyclic Jacobi solver: it repeatedly
//! zeroes the off-diagonal entries with Givens rotations while accumulating
//! the rotations into an eigenvector matrix.  For the tiny symmetric
//! matrices this crate produces (covariances, `n` in the single digits)
//! Jacobi is simple, unconditionally stable, and accurate to a few ulps —
//! and avoids any linear-algebra dependency whose iteration order we could
//! not pin down.
//!
//! [`pw_pca`] chains the pieces into the pipeline's first stage: homogenize
//! the polynomial, take the covariance of the homogenization, restrict to
//! the original `n` coordinates, and diagonalize.  The resulting eigenpairs
//! are deterministic: eigenvalues sort in non-increasing order and each
//! eigenvector is normalized so its largest-magnitude entry (lowest index on
//! ties) is positive.

use crate::polyalg::{Polynomial, SquareMatrix};
use crate::pwcov::pw_covariance;
use crate::{Error, Result};

/// Relative symmetry tolerance for eigensolver input.
const SYMMETRY_TOL: f64 = 1e-10;

/// Convergence: off-diagonal Frobenius norm below this multiple of the
/// input's Frobenius norm.
const OFF_DIAG_TOL: f64 = 1e-14;

/// Hard cap on Jacobi sweeps; typical inputs converge in well under ten.
const MAX_SWEEPS: usize = 100;

/// Eigenvalues and principal axes, sorted and sign-normalized.
///
/// `lambda` is non-increasing; column `j` of `axes` is the eigenvector for
/// `lambda[j]`, scaled so its largest-magnitude entry is positive (ties
/// broken by lowest index).
#[derive(Debug, Clone)]
pub struct PwPca {
    lambda: Vec<f64>,
    axes: SquareMatrix,
}

impl PwPca {
    /// Eigenvalues in non-increasing order.
    pub fn lambda(&self) -> &[f64] {
        &self.lambda
    }

    /// Eigenvector matrix; column `j` belongs to `lambda[j]`.
    pub fn axes(&self) -> &SquareMatrix {
        &self.axes
    }

    /// Smallest gap between adjacent eigenvalues (infinity for size one).
    pub fn min_gap(&self) -> f64 {
        min_gap(&self.lambda)
    }

    /// Whether the spectrum counts as distinct at the given relative
    /// tolerance; see [`distinctness_check`].
    pub fn is_distinct(&self, tol_rel: f64) -> bool {
        distinctness_check(&self.lambda, tol_rel)
    }
}

/// Full eigendecomposition of a symmetric matrix by cyclic Jacobi.
///
/// The input must be symmetric within `1e-10` relative to its largest entry;
/// the strict upper triangle is authoritative during iteration.  Converges
/// when the off-diagonal Frobenius norm drops below `1e-14` times the
/// input's Frobenius norm, within at most 100 sweeps.
pub fn sym_eigen(c: &SquareMatrix) -> Result<PwPca> {
    let n = c.size();
    for i in 0..n {
        for j in 0..n {
            if !c.get(i, j).is_finite() {
                return Err(Error::Numerical(format!(
                    "non-finite matrix entry at ({}, {})",
                    i, j
                )));
            }
        }
    }
    let max_asym = c.max_asymmetry();
    if max_asym > SYMMETRY_TOL * c.max_abs().max(1.0) {
        return Err(Error::NotSymmetric { max_asym });
    }

    let mut a = c.clone();
    // Mirror the upper triangle so both halves agree exactly.
    for i in 0..n {
        for j in (i + 1)..n {
            a.set(j, i, a.get(i, j));
        }
    }
    let mut v = SquareMatrix::identity(n);
    let threshold = OFF_DIAG_TOL * c.frobenius_norm();

    let mut converged = false;
    for _sweep in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) <= threshold {
            converged = true;
            break;
        }
        for p in 0..n.saturating_sub(1) {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }
    if !converged && off_diagonal_norm(&a) > threshold {
        return Err(Error::JacobiNoConvergence { sweeps: MAX_SWEEPS });
    }

    // Sort eigenpairs by non-increasing eigenvalue; a stable sort keeps
    // equal eigenvalues in sweep order, so the output is deterministic.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a.get(j, j).partial_cmp(&a.get(i, i)).expect("finite"));
    let lambda: Vec<f64> = order.iter().map(|&i| a.get(i, i)).collect();
    let mut axes = SquareMatrix::zeros(n);
    for (new_col, &old_col) in order.iter().enumerate() {
        for r in 0..n {
            axes.set(r, new_col, v.get(r, old_col));
        }
    }
    normalize_column_signs(&mut axes);
    Ok(PwPca { lambda, axes })
}

/// One Jacobi rotation annihilating `a[p][q]`, accumulated into `v`.
fn rotate(a: &mut SquareMatrix, v: &mut SquareMatrix, p: usize, q: usize) {
    let apq = a.get(p, q);
    if apq == 0.0 {
        return;
    }
    let scale = a.get(p, p).abs() + a.get(q, q).abs();
    // A rotation too small to move the diagonal at f64 resolution: just
    // flush the entry.
    if scale + 100.0 * apq.abs() == scale {
        a.set(p, q, 0.0);
        a.set(q, p, 0.0);
        return;
    }
    let theta = (a.get(q, q) - a.get(p, p)) / (2.0 * apq);
    let t = if theta.abs() > 1e150 {
        // Guard theta^2 overflow; the exact expression tends to 1/(2 theta).
        1.0 / (2.0 * theta)
    } else {
        let sign = if theta >= 0.0 { 1.0 } else { -1.0 };
        sign / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let cos = 1.0 / (t * t + 1.0).sqrt();
    let sin = t * cos;
    let tau = sin / (1.0 + cos);
    let h = t * apq;

    let n = a.size();
    a.set(p, p, a.get(p, p) - h);
    a.set(q, q, a.get(q, q) + h);
    a.set(p, q, 0.0);
    a.set(q, p, 0.0);
    for r in 0..n {
        if r == p || r == q {
            continue;
        }
        let arp = a.get(r, p);
        let arq = a.get(r, q);
        let new_rp = arp - sin * (arq + tau * arp);
        let new_rq = arq + sin * (arp - tau * arq);
        a.set(r, p, new_rp);
        a.set(p, r, new_rp);
        a.set(r, q, new_rq);
        a.set(q, r, new_rq);
    }
    for r in 0..a.size() {
        let vrp = v.get(r, p);
        let vrq = v.get(r, q);
        v.set(r, p, vrp - sin * (vrq + tau * vrp));
        v.set(r, q, vrq + sin * (vrp - tau * vrq));
    }
}

fn off_diagonal_norm(a: &SquareMatrix) -> f64 {
    let n = a.size();
    let mut sum = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            sum += 2.0 * a.get(i, j) * a.get(i, j);
        }
    }
    sum.sqrt()
}

/// Flips eigenvector signs so each column's largest-magnitude entry (lowest
/// index on ties) is positive.
fn normalize_column_signs(axes: &mut SquareMatrix) {
    let n = axes.size();
    for j in 0..n {
        let mut best_idx = 0;
        let mut best_abs = axes.get(0, j).abs();
        for i in 1..n {
            let a = axes.get(i, j).abs();
            if a > best_abs {
                best_abs = a;
                best_idx = i;
            }
        }
        if axes.get(best_idx, j) < 0.0 {
            axes.scale_column(j, -1.0);
        }
    }
}

/// Principal axes of a polynomial: eigendecomposition of the leading
/// `n x n` block of the homogenization's covariance matrix.
///
/// Requires at least two variables and degree at least one.  The extra
/// homogenization coordinate only calibrates the measure; restricting the
/// covariance to the original `n` coordinates before diagonalizing is what
/// makes the axes transform contravariantly under orthogonal changes of
/// variables.
pub fn pw_pca(f: &Polynomial) -> Result<PwPca> {
    let n = f.nvars();
    if n < 2 {
        return Err(Error::InvalidInput(format!(
            "principal axes need at least 2 variables, got {}",
            n
        )));
    }
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.degree() < 1 {
        return Err(Error::InvalidInput(
            "principal axes need degree at least 1".into(),
        ));
    }
    let cov = pw_covariance(&f.homogenize()?)?;
    let block = cov.matrix().leading_block(n);
    let eig = sym_eigen(&block)?;
    // The covariance is a second-moment matrix, hence positive semidefinite
    // up to rounding; anything clearly negative signals numerical breakdown.
    let floor = -1e-9 * eig.lambda[0].abs().max(1.0);
    if eig.lambda[n - 1] < floor {
        return Err(Error::Numerical(format!(
            "covariance eigenvalue {} below PSD floor {}",
            eig.lambda[n - 1],
            floor
        )));
    }
    Ok(eig)
}

/// Whether adjacent eigenvalues are separated by more than
/// `tol_rel * max(lambda_1, 1)`; degenerate spectra make principal axes
/// non-unique and block certification.
pub fn distinctness_check(lambda: &[f64], tol_rel: f64) -> bool {
    if lambda.len() < 2 {
        return true;
    }
    min_gap(lambda) > tol_rel * lambda[0].max(1.0)
}

/// Whether two equally long spectra agree entrywise within
/// `tol_rel * max(lambda_f[0], 1)`.  A `false` here is a proof of
/// non-equivalence; `true` is merely consistent with equivalence.
pub fn spectra_equal(lambda_f: &[f64], lambda_g: &[f64], tol_rel: f64) -> bool {
    assert_eq!(lambda_f.len(), lambda_g.len(), "spectra lengths differ");
    max_spectra_deviation(lambda_f, lambda_g) <= tol_rel * lambda_f.first().copied().unwrap_or(0.0).max(1.0)
}

/// Largest entrywise deviation between two spectra.
pub fn max_spectra_deviation(lambda_f: &[f64], lambda_g: &[f64]) -> f64 {
    lambda_f
        .iter()
        .zip(lambda_g)
        .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()))
}

fn min_gap(lambda: &[f64]) -> f64 {
    lambda
        .windows(2)
        .map(|w| w[0] - w[1])
        .fold(f64::INFINITY, f64::min)
}
