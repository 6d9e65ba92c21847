//! Orthogonal-equivalence certification.
//!
//! Given `f` and `g` with matching variable count and degree, [`certify`]
//! runs the four-phase pipeline:
//!
//! 1. principal axes of both inputs ([`crate::spectra::pw_pca`]), with an
//!    early exit when either spectrum is degenerate (axes not unique) or
//!    the two spectra differ (inputs provably inequivalent);
//! 2. canonical forms: each input rewritten in its own axes
//!    ([`canonical_form`]);
//! 3. a search over coordinate sign flips matching the canonical forms
//!    ([`find_signflip`]);
//! 4. assembly of the certificate `R = V_f * diag(sigma) * V_g^T`
//!    ([`assemble_certificate`]).
//!
//! A successful run ends with a sanity check: the relative coefficient
//! residual of `f(Rx) - g(x)` must stay within tolerance.  The check is
//! mathematically redundant when the axes are sharply determined, but it
//! turns silent numerical trouble into an explicit error.

use std::time::{Duration, Instant};

use crate::polyalg::{act_linear, Polynomial, SquareMatrix};
use crate::spectra::{max_spectra_deviation, pw_pca, spectra_equal, PwPca};
use crate::{Error, Result, DEFAULT_DISTINCTNESS_TOL, ORTHOGONALITY_TOL};

/// A verified orthogonal-equivalence certificate.
#[derive(Debug, Clone)]
pub struct Certificate {
    r: SquareMatrix,
    sigma: Vec<i8>,
    residual_rel: f64,
    lambda_f: Vec<f64>,
    lambda_g: Vec<f64>,
}

impl Certificate {
    /// The orthogonal matrix with `f(Rx) = g(x)` up to the residual.
    pub fn r(&self) -> &SquareMatrix {
        &self.r
    }

    /// The sign vector matching the two canonical forms.
    pub fn sigma(&self) -> &[i8] {
        &self.sigma
    }

    /// Relative coefficient norm of `f(Rx) - g(x)`.
    pub fn residual_rel(&self) -> f64 {
        self.residual_rel
    }

    /// Covariance spectrum of `f`.
    pub fn lambda_f(&self) -> &[f64] {
        &self.lambda_f
    }

    /// Covariance spectrum of `g`.
    pub fn lambda_g(&self) -> &[f64] {
        &self.lambda_g
    }
}

/// Wall-clock time spent in each pipeline phase.
///
/// `total` spans the four algorithm phases; the final residual sanity check
/// runs outside it, so `total` is comparable across implementations of the
/// bare algorithm.
#[derive(Debug, Clone, Copy)]
pub struct PhaseTimings {
    pub pwpca: Duration,
    pub canonical: Duration,
    pub signflip: Duration,
    pub assemble: Duration,
    pub total: Duration,
}

/// Spectra comparison produced by [`check_equivalence_partial`].
///
/// `equal == false` proves the inputs are not orthogonally equivalent;
/// `equal == true` is necessary but not sufficient for equivalence.
#[derive(Debug, Clone)]
pub struct EquivalenceReport {
    pub lambda_f: Vec<f64>,
    pub lambda_g: Vec<f64>,
    pub equal: bool,
    pub max_deviation: f64,
}

/// Rewrites `f` in its own principal axes: `f_hat(x) = f(Vx)`.
pub fn canonical_form(f: &Polynomial, pca: &PwPca) -> Result<Polynomial> {
    act_linear(pca.axes(), f)
}

/// Searches sign vectors `sigma` in `{-1, +1}^n` for one making the flipped
/// `f_hat` match `g_hat` coefficient-wise within
/// `tol_rel * max(coeff_max(f_hat), coeff_max(g_hat))`.
///
/// Candidates enumerate lexicographically with `+1` before `-1`, and the
/// first match wins, so the result is deterministic.  Returns `None` when no
/// candidate passes.
pub fn find_signflip(
    f_hat: &Polynomial,
    g_hat: &Polynomial,
    tol_rel: f64,
) -> Result<Option<Vec<i8>>> {
    Ok(signflip_search(f_hat, g_hat, tol_rel)?.0)
}

/// Sign-flip search returning the best (smallest) per-candidate mismatch
/// seen, for diagnostics when nothing passes.
fn signflip_search(
    f_hat: &Polynomial,
    g_hat: &Polynomial,
    tol_rel: f64,
) -> Result<(Option<Vec<i8>>, f64)> {
    let n = f_hat.nvars();
    if n != g_hat.nvars() {
        return Err(Error::NvarsMismatch {
            left: n,
            right: g_hat.nvars(),
        });
    }
    if n >= 63 {
        return Err(Error::InvalidInput(format!(
            "sign-flip search over 2^{} candidates is not supported",
            n
        )));
    }
    let threshold = tol_rel * f_hat.coeff_max().max(g_hat.coeff_max());

    // Merged support with both coefficients and the odd-exponent mask that
    // decides whether a sign vector flips the term.
    let mut support: Vec<(u64, f64, f64)> = Vec::new();
    for (e, cf) in f_hat.terms() {
        support.push((e.odd_mask(), cf, g_hat.coeff(e)));
    }
    for (e, cg) in g_hat.terms() {
        if f_hat.coeff(e) == 0.0 {
            support.push((e.odd_mask(), 0.0, cg));
        }
    }

    let mut best_mismatch = f64::INFINITY;
    for k in 0..(1u64 << n) {
        // Bit b of `k` (counted from the most significant of the n bits)
        // decides coordinate b: 0 keeps the sign, 1 flips it.  Counting up
        // therefore enumerates lexicographically with +1 first.
        let mut flip_mask = 0u64;
        for i in 0..n {
            if (k >> (n - 1 - i)) & 1 == 1 {
                flip_mask |= 1 << i;
            }
        }
        let mut worst = 0.0f64;
        let mut passed = true;
        for &(odd_mask, cf, cg) in &support {
            let signed = if (odd_mask & flip_mask).count_ones() % 2 == 1 {
                -cf
            } else {
                cf
            };
            let dev = (signed - cg).abs();
            if dev > worst {
                worst = dev;
                if worst > threshold {
                    passed = false;
                    break;
                }
            }
        }
        best_mismatch = best_mismatch.min(worst);
        if passed {
            let sigma = (0..n)
                .map(|i| if (flip_mask >> i) & 1 == 1 { -1i8 } else { 1i8 })
                .collect();
            return Ok((Some(sigma), worst));
        }
    }
    Ok((None, best_mismatch))
}

/// Assembles the certificate `R = V_f * diag(sigma) * V_g^T` from the two
/// axis bases and the matched sign vector.
pub fn assemble_certificate(
    v_f: &SquareMatrix,
    sigma: &[i8],
    v_g: &SquareMatrix,
) -> Result<SquareMatrix> {
    let n = v_f.size();
    if v_g.size() != n || sigma.len() != n {
        return Err(Error::InvalidInput(format!(
            "certificate factors disagree in size: {} vs {} vs sign vector {}",
            n,
            v_g.size(),
            sigma.len()
        )));
    }
    let mut scaled = v_f.clone();
    for (j, &s) in sigma.iter().enumerate() {
        if s == -1 {
            scaled.scale_column(j, -1.0);
        }
    }
    Ok(scaled.matmul(&v_g.transpose()))
}

/// Runs the full certification pipeline; see the module docs.
///
/// On success the returned [`Certificate`] satisfies
/// `coeff_norm(f(Rx) - g) <= tol_rel * max(coeff_norm(g), 1)` and `R` is
/// orthogonal within `1e-10`.  The error variants classify failure:
/// [`Error::SpectraMismatch`] and [`Error::DegreeMismatch`] are proofs of
/// non-equivalence, [`Error::NoSignflipFound`] and
/// [`Error::ResidualTooLarge`] strongly indicate it, and
/// [`Error::DegenerateSpectrum`] means the method does not apply.
pub fn certify(f: &Polynomial, g: &Polynomial, tol_rel: f64) -> Result<Certificate> {
    certify_timed(f, g, tol_rel).map(|(cert, _)| cert)
}

/// [`certify`] with per-phase wall-clock timings for benchmarking.
pub fn certify_timed(
    f: &Polynomial,
    g: &Polynomial,
    tol_rel: f64,
) -> Result<(Certificate, PhaseTimings)> {
    if f.nvars() != g.nvars() {
        return Err(Error::NvarsMismatch {
            left: f.nvars(),
            right: g.nvars(),
        });
    }
    if f.nvars() < 2 {
        return Err(Error::InvalidInput(
            "certification needs at least 2 variables".into(),
        ));
    }
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.degree() != g.degree() {
        return Err(Error::DegreeMismatch {
            left: f.degree(),
            right: g.degree(),
        });
    }
    if f.degree() < 2 {
        return Err(Error::InvalidInput(
            "certification needs degree at least 2".into(),
        ));
    }

    let start = Instant::now();
    let pca_f = pw_pca(f)?;
    let pca_g = pw_pca(g)?;
    for pca in [&pca_f, &pca_g] {
        if !pca.is_distinct(DEFAULT_DISTINCTNESS_TOL) {
            return Err(Error::DegenerateSpectrum {
                min_gap: pca.min_gap(),
                threshold: DEFAULT_DISTINCTNESS_TOL * pca.lambda()[0].max(1.0),
            });
        }
    }
    if !spectra_equal(pca_f.lambda(), pca_g.lambda(), tol_rel) {
        let scale = pca_f.lambda()[0].max(1.0);
        return Err(Error::SpectraMismatch {
            max_rel_dev: max_spectra_deviation(pca_f.lambda(), pca_g.lambda()) / scale,
        });
    }
    let t_pwpca = start.elapsed();

    let mark = Instant::now();
    let f_hat = canonical_form(f, &pca_f)?;
    let g_hat = canonical_form(g, &pca_g)?;
    let t_canonical = mark.elapsed();

    let mark = Instant::now();
    let (sigma, best_mismatch) = signflip_search(&f_hat, &g_hat, tol_rel)?;
    let sigma = sigma.ok_or_else(|| Error::NoSignflipFound {
        candidates: 1usize << f.nvars(),
        best_mismatch,
        min_gap: pca_f.min_gap().min(pca_g.min_gap()),
    })?;
    let t_signflip = mark.elapsed();

    let mark = Instant::now();
    let r = assemble_certificate(pca_f.axes(), &sigma, pca_g.axes())?;
    let t_assemble = mark.elapsed();
    let total = start.elapsed();

    let defect = r.orthogonality_defect();
    if defect > ORTHOGONALITY_TOL {
        return Err(Error::Numerical(format!(
            "assembled certificate has orthogonality defect {:.3e}",
            defect
        )));
    }
    let residual_rel = certificate_residual(&r, f, g)?;
    if residual_rel > tol_rel {
        return Err(Error::ResidualTooLarge {
            residual: residual_rel,
            tol: tol_rel,
        });
    }

    Ok((
        Certificate {
            r,
            sigma,
            residual_rel,
            lambda_f: pca_f.lambda().to_vec(),
            lambda_g: pca_g.lambda().to_vec(),
        },
        PhaseTimings {
            pwpca: t_pwpca,
            canonical: t_canonical,
            signflip: t_signflip,
            assemble: t_assemble,
            total,
        },
    ))
}

/// Relative coefficient residual `||f(Rx) - g|| / max(||g||, 1)`.
pub fn certificate_residual(r: &SquareMatrix, f: &Polynomial, g: &Polynomial) -> Result<f64> {
    let transported = act_linear(r, f)?;
    let diff = transported.sub(g)?;
    Ok(diff.coeff_norm() / g.coeff_norm().max(1.0))
}

/// The inexpensive one-sided test: compares covariance spectra only.
///
/// Uses [`crate::DEFAULT_TOL_REL`]; see
/// [`check_equivalence_partial_with_tol`] for an explicit tolerance.
pub fn check_equivalence_partial(f: &Polynomial, g: &Polynomial) -> Result<EquivalenceReport> {
    check_equivalence_partial_with_tol(f, g, crate::DEFAULT_TOL_REL)
}

/// [`check_equivalence_partial`] with an explicit relative tolerance.
pub fn check_equivalence_partial_with_tol(
    f: &Polynomial,
    g: &Polynomial,
    tol_rel: f64,
) -> Result<EquivalenceReport> {
    if f.nvars() != g.nvars() {
        return Err(Error::NvarsMismatch {
            left: f.nvars(),
            right: g.nvars(),
        });
    }
    if f.degree() != g.degree() {
        return Err(Error::DegreeMismatch {
            left: f.degree(),
            right: g.degree(),
        });
    }
    let pca_f = pw_pca(f)?;
    let pca_g = pw_pca(g)?;
    let equal = spectra_equal(pca_f.lambda(), pca_g.lambda(), tol_rel);
    let max_deviation = max_spectra_deviation(pca_f.lambda(), pca_g.lambda());
    Ok(EquivalenceReport {
        lambda_f: pca_f.lambda().to_vec(),
        lambda_g: pca_g.lambda().to_vec(),
        equal,
        max_deviation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::{act_signflip, parse_polynomial};
    use crate::spectra::distinctness_check;

    const CUBIC_F: &str = "-27*x1^3 + 27*x2^2*x3 - 9*x3";
    const CUBIC_G: &str = "-12*x1^3 + 12*x1^2*x2 - 12*x1^2*x3 + 6*x1*x2^2 + 36*x1*x2*x3 \
                           - 33*x1*x3^2 + 9*x2^3 - 6*x2^2*x3 + 6*x2*x3^2 - 6*x3^3 \
                           + 3*x1 - 6*x2 - 6*x3";

    fn thirds_matrix() -> SquareMatrix {
        SquareMatrix::from_rows(&[
            vec![2.0 / 3.0, -1.0 / 3.0, 2.0 / 3.0],
            vec![2.0 / 3.0, 2.0 / 3.0, -1.0 / 3.0],
            vec![-1.0 / 3.0, 2.0 / 3.0, 2.0 / 3.0],
        ])
        .unwrap()
    }

    #[test]
    fn cubic_pair_is_a_linear_transport() {
        // g really is f(Rx) for the rational orthogonal matrix: the action
        // reproduces g's integer coefficients to float accuracy.
        let f = parse_polynomial(CUBIC_F, 3).unwrap();
        let g = parse_polynomial(CUBIC_G, 3).unwrap();
        let transported = act_linear(&thirds_matrix(), &f).unwrap();
        let diff = transported.sub(&g).unwrap();
        assert!(diff.coeff_max() < 1e-12, "max deviation {}", diff.coeff_max());
    }

    #[test]
    fn certify_cubic_pair_recovers_rational_certificate() {
        let f = parse_polynomial(CUBIC_F, 3).unwrap();
        let g = parse_polynomial(CUBIC_G, 3).unwrap();
        let cert = certify(&f, &g, 1e-6).unwrap();
        assert!(cert.r().max_abs_diff(&thirds_matrix()) <= 1e-9);
        assert!(cert.residual_rel() <= 1e-10);
        assert!(cert.r().orthogonality_defect() <= 1e-12);
    }

    #[test]
    fn cubic_signflip_stabilizer_has_order_two() {
        // f is even in x2, and the middle principal axis is exactly e2, so
        // flipping the second coordinate fixes both canonical forms: the
        // sign vectors (+,+,+) and (+,-,+) match and no others do.  The
        // search must return the lexicographically first of the two, and
        // only that one assembles to the rational certificate.
        let f = parse_polynomial(CUBIC_F, 3).unwrap();
        let g = parse_polynomial(CUBIC_G, 3).unwrap();
        let pca_f = pw_pca(&f).unwrap();
        let pca_g = pw_pca(&g).unwrap();
        let f_hat = canonical_form(&f, &pca_f).unwrap();
        let g_hat = canonical_form(&g, &pca_g).unwrap();
        let threshold = 1e-6 * f_hat.coeff_max().max(g_hat.coeff_max());
        let mut passing = Vec::new();
        for k in 0..8u8 {
            let sigma: Vec<i8> = (0..3).map(|i| if (k >> i) & 1 == 1 { -1 } else { 1 }).collect();
            let dev = act_signflip(&sigma, &f_hat)
                .unwrap()
                .sub(&g_hat)
                .unwrap()
                .coeff_max();
            if dev <= threshold {
                passing.push(sigma);
            }
        }
        passing.sort();
        assert_eq!(passing, vec![vec![1, -1, 1], vec![1, 1, 1]]);
        assert_eq!(
            find_signflip(&f_hat, &g_hat, 1e-6).unwrap().unwrap(),
            vec![1, 1, 1]
        );
        let mut matching_r = 0;
        for sigma in &passing {
            let r = assemble_certificate(pca_f.axes(), sigma, pca_g.axes()).unwrap();
            if r.max_abs_diff(&thirds_matrix()) <= 1e-9 {
                matching_r += 1;
            }
        }
        assert_eq!(matching_r, 1);
    }

    #[test]
    fn cubic_canonical_form_matches_known_coefficients() {
        // Leading coefficients of the canonical form, up to one global
        // choice of axis signs (hence the search over sign vectors).
        let f = parse_polynomial(CUBIC_F, 3).unwrap();
        let f_hat = canonical_form(&f, &pw_pca(&f).unwrap()).unwrap();
        let expected = parse_polynomial(
            "-26.910*x1^3 - 3.806*x1^2*x3 - 1.271*x1*x2^2 - 0.179*x1*x3^2 \
             + 26.970*x2^2*x3 - 0.003*x3^3 + 0.424*x1 - 8.990*x3",
            3,
        )
        .unwrap();
        let matches_up_to_signs = (0..8u8).any(|k| {
            let sigma: Vec<i8> = (0..3).map(|i| if (k >> i) & 1 == 1 { -1 } else { 1 }).collect();
            let flipped = act_signflip(&sigma, &f_hat).unwrap();
            expected
                .terms()
                .all(|(e, c)| (flipped.coeff(e) - c).abs() <= 2e-3)
        });
        assert!(matches_up_to_signs);
    }

    #[test]
    fn certify_rotated_quadratic() {
        let f = parse_polynomial("4*x1^2 - 2*x2^2", 2).unwrap();
        let g = parse_polynomial("x1^2 - 6*x1*x2 + x2^2", 2).unwrap();
        let cert = certify(&f, &g, 1e-6).unwrap();
        assert!(cert.residual_rel() <= 1e-10);
        // The certificate agrees with the quarter-turn rotation up to
        // right-multiplication by a sign matrix.
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let quarter = SquareMatrix::from_rows(&[vec![s, -s], vec![s, s]]).unwrap();
        let agrees = [[1.0, 1.0], [1.0, -1.0], [-1.0, 1.0], [-1.0, -1.0]]
            .iter()
            .any(|signs| {
                let mut candidate = quarter.clone();
                candidate.scale_column(0, signs[0]);
                candidate.scale_column(1, signs[1]);
                cert.r().max_abs_diff(&candidate) <= 1e-9
            });
        assert!(agrees, "certificate was {:?}", cert.r());
    }

    #[test]
    fn certify_identity_pair() {
        let f = parse_polynomial(CUBIC_F, 3).unwrap();
        let cert = certify(&f, &f, 1e-6).unwrap();
        assert!(cert.residual_rel() <= 1e-10);
    }

    #[test]
    fn scaling_changes_the_spectrum() {
        let f = parse_polynomial(CUBIC_F, 3).unwrap();
        let g = f.scale(2.0);
        assert!(matches!(
            certify(&f, &g, 1e-6),
            Err(Error::SpectraMismatch { .. })
        ));
        let report = check_equivalence_partial(&f, &g).unwrap();
        assert!(!report.equal);
        assert!(report.max_deviation > 1.0);
    }

    #[test]
    fn rotation_invariant_input_is_degenerate() {
        let f = parse_polynomial("x1^2 + x2^2 + x3^2", 3).unwrap();
        assert!(matches!(
            certify(&f, &f, 1e-6),
            Err(Error::DegenerateSpectrum { .. })
        ));
    }

    #[test]
    fn inequivalent_pair_is_rejected() {
        let f = parse_polynomial("x1^3 + x2^3", 2).unwrap();
        let g = parse_polynomial("x1^3 + x2^3 + x1", 2).unwrap();

        // Independent confirmation that no planar orthogonal map sends f to
        // g: scan rotations and reflections over a fine angle grid and track
        // the smallest action residual.
        let mut min_residual = f64::INFINITY;
        let steps = 2000;
        for k in 0..steps {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / steps as f64;
            let (s, c) = theta.sin_cos();
            for det in [1.0, -1.0] {
                let r = SquareMatrix::from_rows(&[vec![c, -s * det], vec![s, c * det]]).unwrap();
                let residual = certificate_residual(&r, &f, &g).unwrap();
                min_residual = min_residual.min(residual);
            }
        }
        assert!(
            min_residual > 1e-2,
            "grid scan found a near-certificate (residual {})",
            min_residual
        );

        match certify(&f, &g, 1e-6) {
            Err(Error::SpectraMismatch { .. }) | Err(Error::NoSignflipFound { .. }) => {}
            other => panic!("expected a non-equivalence verdict, got {:?}", other),
        }
    }

    #[test]
    fn mismatched_preconditions_are_reported() {
        let f2 = parse_polynomial("x1^2 + 2*x2^2", 2).unwrap();
        let f3 = parse_polynomial("x1^2 + 2*x2^2 + 3*x3^2", 3).unwrap();
        assert!(matches!(
            certify(&f2, &f3, 1e-6),
            Err(Error::NvarsMismatch { .. })
        ));
        let cubic = parse_polynomial("x1^3 + 2*x2^3", 2).unwrap();
        assert!(matches!(
            certify(&f2, &cubic, 1e-6),
            Err(Error::DegreeMismatch { .. })
        ));
        let linear = parse_polynomial("x1 + 2*x2", 2).unwrap();
        assert!(certify(&linear, &linear, 1e-6).is_err());
    }

    #[test]
    fn canonical_form_in_identity_axes_is_exact() {
        use crate::spectra::sym_eigen;
        let f = parse_polynomial("3*x1^2 + x2^2", 2).unwrap();
        let eig = sym_eigen(&SquareMatrix::from_diagonal(&[2.0, 1.0])).unwrap();
        assert_eq!(canonical_form(&f, &eig).unwrap(), f);
    }

    #[test]
    fn find_signflip_on_equal_inputs_returns_all_plus() {
        let f = parse_polynomial("x1^3 + 2*x2^2*x1", 2).unwrap();
        let sigma = find_signflip(&f, &f, 1e-9).unwrap().unwrap();
        assert_eq!(sigma, vec![1, 1]);
    }

    #[test]
    fn find_signflip_prefers_lexicographically_first_match() {
        // x1^2 is fixed by every sign vector, so all 4 pass; the search
        // must return the all-plus one.
        let f = parse_polynomial("x1^2", 2).unwrap();
        let sigma = find_signflip(&f, &f, 1e-9).unwrap().unwrap();
        assert_eq!(sigma, vec![1, 1]);
    }

    #[test]
    fn find_signflip_reports_no_match() {
        let f = parse_polynomial("x1^3", 1).unwrap();
        let g = parse_polynomial("x1^2", 1).unwrap();
        assert_eq!(find_signflip(&f, &g, 1e-9).unwrap(), None);
    }

    #[test]
    fn find_signflip_recovers_planted_flip() {
        let f = parse_polynomial("2*x1^3 + 3*x1*x2^2 + 5*x2*x3^2", 3).unwrap();
        let g = act_signflip(&[1, -1, 1], &f).unwrap();
        let sigma = find_signflip(&f, &g, 1e-9).unwrap().unwrap();
        assert_eq!(sigma, vec![1, -1, 1]);
    }

    #[test]
    fn assemble_certificate_with_trivial_factors() {
        let id = SquareMatrix::identity(3);
        let r = assemble_certificate(&id, &[1, 1, 1], &id).unwrap();
        assert_eq!(r, id);
        let r = assemble_certificate(&id, &[1, -1, 1], &id).unwrap();
        assert_eq!(r, SquareMatrix::from_diagonal(&[1.0, -1.0, 1.0]));
    }

    #[test]
    fn certify_is_deterministic() {
        let f = parse_polynomial(CUBIC_F, 3).unwrap();
        let g = parse_polynomial(CUBIC_G, 3).unwrap();
        let a = certify(&f, &g, 1e-6).unwrap();
        let b = certify(&f, &g, 1e-6).unwrap();
        assert_eq!(a.r(), b.r());
        assert_eq!(a.sigma(), b.sigma());
        assert_eq!(a.residual_rel().to_bits(), b.residual_rel().to_bits());
    }

    #[test]
    fn partial_check_accepts_transported_input() {
        let f = parse_polynomial(CUBIC_F, 3).unwrap();
        let g = parse_polynomial(CUBIC_G, 3).unwrap();
        let report = check_equivalence_partial(&f, &g).unwrap();
        assert!(report.equal);
        assert!(distinctness_check(&report.lambda_f, 1e-9));
    }
}
