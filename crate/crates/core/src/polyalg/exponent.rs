use std::cmp::Ordering;
use std::fmt;

/// Exponent vector of a monomial: entry `i` is the power of `x_{i+1}`.
///
/// Ordered graded-lexicographically — first by total degree, then
/// lexicographically by entries — so that sorted containers of exponents
/// iterate in a canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Exponent(Vec<u32>);

impl Exponent {
    /// Creates an exponent vector; `powers[i]` is the power of variable `i`.
    pub fn new(powers: Vec<u32>) -> Self {
        Exponent(powers)
    }

    /// The all-zero exponent (constant monomial) on `nvars` variables.
    pub fn constant(nvars: usize) -> Self {
        Exponent(vec![0; nvars])
    }

    /// Number of variables this exponent is defined over.
    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    /// Total degree, i.e. the sum of all entries.
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Power of variable `i` (0-based).
    pub fn power(&self, i: usize) -> u32 {
        self.0[i]
    }

    /// Read-only view of the underlying powers.
    pub fn powers(&self) -> &[u32] {
        &self.0
    }

    /// Entrywise sum, the exponent of a monomial product.
    pub fn add(&self, other: &Exponent) -> Exponent {
        debug_assert_eq!(self.0.len(), other.0.len());
        Exponent(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// Indices whose power is odd, as a bitmask (variable `i` sets bit `i`).
    ///
    /// Only meaningful for `nvars <= 64`, far above anything the crate
    /// supports elsewhere.
    pub fn odd_mask(&self) -> u64 {
        let mut mask = 0u64;
        for (i, &p) in self.0.iter().enumerate() {
            if p % 2 == 1 {
                mask |= 1 << i;
            }
        }
        mask
    }
}

impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &p) in self.0.iter().enumerate() {
            if p == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "x{}", i + 1)?;
            if p > 1 {
                write!(f, "^{}", p)?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}
