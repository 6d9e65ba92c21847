use thiserror::Error;

/// Unified error type for the whole certification pipeline.
///
/// The variants split into three families: input/contract violations
/// (parsing, dimension mismatches, non-homogeneous input where homogeneous is
/// required), *verdicts* — outcomes of `certify` that prove or strongly
/// indicate the inputs are not orthogonally equivalent — and numerical
/// failures that should not occur on well-conditioned input.
#[derive(Debug, Error)]
pub enum Error {
    /// Syntax error while reading a polynomial from text.
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    /// A variable index outside `x1..x{nvars}` appeared in the input.
    #[error("parse error at byte {pos}: variable x{index} out of range (polynomial has {nvars} variables)")]
    VarOutOfRange {
        pos: usize,
        index: usize,
        nvars: usize,
    },

    /// The input text contained no terms at all.
    #[error("empty polynomial input")]
    EmptyInput,

    /// Two polynomials that must live in the same variable space do not.
    #[error("operands have different variable counts: {left} vs {right}")]
    NvarsMismatch { left: usize, right: usize },

    /// A matrix dimension does not match the polynomial it acts on.
    #[error("matrix size {matrix} does not match {expected} variables")]
    DimensionMismatch { matrix: usize, expected: usize },

    /// The operation is undefined for the zero polynomial.
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,

    /// A homogeneous polynomial was required.
    #[error("polynomial is not homogeneous (term degrees differ)")]
    NonHomogeneous,

    /// An operation fell outside its supported argument range.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The matrix handed to the eigensolver is not symmetric.
    #[error("matrix is not symmetric within tolerance (max asymmetry {max_asym:.3e})")]
    NotSymmetric { max_asym: f64 },

    /// The Jacobi sweep failed to converge; indicates pathological input.
    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps")]
    JacobiNoConvergence { sweeps: usize },

    /// Two adjacent covariance eigenvalues coincide within tolerance, so the
    /// principal axes are not unique and no certificate can be assembled.
    #[error("degenerate covariance spectrum: minimal eigenvalue gap {min_gap:.3e} is below threshold {threshold:.3e}")]
    DegenerateSpectrum { min_gap: f64, threshold: f64 },

    /// The two covariance spectra differ, which proves the inputs are not
    /// orthogonally equivalent.
    #[error("covariance spectra differ (max relative deviation {max_rel_dev:.3e}): the inputs are not orthogonally equivalent")]
    SpectraMismatch { max_rel_dev: f64 },

    /// The polynomials have different degrees, which already rules out
    /// orthogonal equivalence.
    #[error("degrees differ ({left} vs {right}): the inputs are not orthogonally equivalent")]
    DegreeMismatch { left: i64, right: i64 },

    /// No sign-flip matched the two canonical forms.  Both spectra agree and
    /// are distinct at this point, so the likeliest causes are genuinely
    /// inequivalent inputs or an overly tight tolerance.
    #[error(
        "none of the {candidates} sign-flips matched the canonical forms (best mismatch {best_mismatch:.3e}, \
         minimal spectral gap {min_gap:.3e}); spectra agree and are distinct, so the inputs are most likely \
         not orthogonally equivalent"
    )]
    NoSignflipFound {
        candidates: usize,
        best_mismatch: f64,
        min_gap: f64,
    },

    /// A sign-flip matched but the assembled certificate does not reproduce
    /// `g` within tolerance.  With a distinct spectrum this indicates either
    /// near-degenerate axes amplifying noise or inputs that only match by
    /// coincidence at the canonical-form level.
    #[error("certificate residual {residual:.3e} exceeds tolerance {tol:.3e}")]
    ResidualTooLarge { residual: f64, tol: f64 },

    /// Instance generation kept hitting degenerate spectra.
    #[error("instance generation exhausted {attempts} attempts for n={n}, d={d}, seed={seed} (all draws had degenerate spectra)")]
    RetriesExhausted {
        n: usize,
        d: usize,
        seed: u64,
        attempts: usize,
    },

    /// Catch-all for numerical breakdown (non-finite values and the like).
    #[error("numerical failure: {0}")]
    Numerical(String),
}
