use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use super::{Exponent, SquareMatrix};
use crate::{Error, Result};

/// Term count above which `act_linear` expands monomials on the rayon pool.
/// The merge stays sequential and ordered, so the threshold only affects
/// speed, never the result.
const PAR_TERM_THRESHOLD: usize = 64;

/// Sparse multivariate polynomial with `f64` coefficients.
///
/// Terms live in a `BTreeMap` keyed by [`Exponent`] in graded-lexicographic
/// order, so iteration — and with it formatting, norms, and every
/// accumulation in the crate — visits terms in one canonical order.  No
/// stored coefficient is ever exactly zero.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Exponent, f64>,
}

impl Polynomial {
    /// The zero polynomial on `nvars` variables.
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    /// The constant polynomial `c` on `nvars` variables.
    pub fn constant(nvars: usize, c: f64) -> Self {
        let mut p = Self::zero(nvars);
        p.accumulate(Exponent::constant(nvars), c);
        p
    }

    /// The monomial `x_{i+1}` (0-based `i`) on `nvars` variables.
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        let mut powers = vec![0u32; nvars];
        powers[i] = 1;
        let mut p = Self::zero(nvars);
        p.accumulate(Exponent::new(powers), 1.0);
        p
    }

    /// Builds a polynomial from `(powers, coefficient)` pairs, merging
    /// repeated monomials by addition and dropping exact zeros.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, f64)>,
    {
        let mut p = Self::zero(nvars);
        for (powers, c) in terms {
            if powers.len() != nvars {
                return Err(Error::InvalidInput(format!(
                    "exponent vector has length {}, expected {}",
                    powers.len(),
                    nvars
                )));
            }
            p.accumulate(Exponent::new(powers), c);
        }
        Ok(p)
    }

    /// Adds `c` to the coefficient of `e`, dropping the term if it cancels
    /// to exactly zero.
    fn accumulate(&mut self, e: Exponent, c: f64) {
        debug_assert!(c.is_finite(), "non-finite coefficient");
        if c == 0.0 {
            return;
        }
        let entry = self.terms.entry(e);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = *o.get() + c;
                if sum == 0.0 {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    /// Number of variables.
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Number of stored (nonzero) terms.
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Whether this is the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `-1` for the zero polynomial.
    pub fn degree(&self) -> i64 {
        self.terms
            .keys()
            .map(|e| e.degree() as i64)
            .max()
            .unwrap_or(-1)
    }

    /// Whether all terms share the same total degree.  The zero polynomial
    /// counts as homogeneous.
    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(|e| e.degree());
        match degrees.next() {
            None => true,
            Some(d0) => degrees.all(|d| d == d0),
        }
    }

    /// Terms in ascending graded-lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, f64)> {
        self.terms.iter().map(|(e, &c)| (e, c))
    }

    /// Coefficient of the given exponent (zero if absent).
    pub fn coeff(&self, e: &Exponent) -> f64 {
        self.terms.get(e).copied().unwrap_or(0.0)
    }

    /// Euclidean norm of the coefficient vector.
    pub fn coeff_norm(&self) -> f64 {
        self.terms.values().map(|c| c * c).sum::<f64>().sqrt()
    }

    /// Largest absolute coefficient; zero for the zero polynomial.
    pub fn coeff_max(&self) -> f64 {
        self.terms.values().fold(0.0, |m, &c| m.max(c.abs()))
    }

    /// Evaluates the polynomial at a point.
    pub fn eval(&self, point: &[f64]) -> f64 {
        assert_eq!(point.len(), self.nvars, "point dimension mismatch");
        self.terms
            .iter()
            .map(|(e, &c)| {
                c * e
                    .powers()
                    .iter()
                    .zip(point)
                    .map(|(&p, &x)| x.powi(p as i32))
                    .product::<f64>()
            })
            .sum()
    }

    /// Sum of two polynomials over the same variables.
    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same_nvars(other)?;
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.accumulate(e.clone(), c);
        }
        Ok(out)
    }

    /// Difference `self - other`.
    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.add(&other.scale(-1.0))
    }

    /// Scalar multiple `s * self`.
    pub fn scale(&self, s: f64) -> Polynomial {
        let mut out = Self::zero(self.nvars);
        for (e, c) in self.terms() {
            out.accumulate(e.clone(), c * s);
        }
        out
    }

    /// Product of two polynomials over the same variables.
    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same_nvars(other)?;
        let mut acc: HashMap<Exponent, f64> = HashMap::with_capacity(self.terms.len());
        for (ea, ca) in self.terms() {
            for (eb, cb) in other.terms() {
                *acc.entry(ea.add(eb)).or_insert(0.0) += ca * cb;
            }
        }
        Ok(Self::from_accumulator(self.nvars, acc))
    }

    /// Square of the polynomial, exploiting product symmetry: each unordered
    /// off-diagonal term pair is accumulated once with a doubled coefficient.
    pub fn square(&self) -> Polynomial {
        let terms: Vec<(&Exponent, f64)> = self.terms().collect();
        let mut acc: HashMap<Exponent, f64> = HashMap::with_capacity(terms.len());
        for (i, (ea, ca)) in terms.iter().enumerate() {
            *acc.entry(ea.add(ea)).or_insert(0.0) += ca * ca;
            for (eb, cb) in &terms[i + 1..] {
                *acc.entry(ea.add(eb)).or_insert(0.0) += 2.0 * ca * cb;
            }
        }
        Self::from_accumulator(self.nvars, acc)
    }

    /// Integer power by binary exponentiation.
    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut result = Self::constant(self.nvars, 1.0);
        if e == 0 {
            return result;
        }
        let mut base = self.clone();
        loop {
            if e & 1 == 1 {
                result = result.mul(&base).expect("same nvars by construction");
            }
            e >>= 1;
            if e == 0 {
                return result;
            }
            base = base.square();
        }
    }

    /// Homogenization: appends one variable and pads every term up to the
    /// total degree, so the result is homogeneous of degree `deg(self)` in
    /// `nvars + 1` variables.  Errors on the zero polynomial, whose degree
    /// carries no information.
    pub fn homogenize(&self) -> Result<Polynomial> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let d = self.degree() as u32;
        let mut out = Self::zero(self.nvars + 1);
        for (e, c) in self.terms() {
            let mut powers = e.powers().to_vec();
            powers.push(d - e.degree());
            out.accumulate(Exponent::new(powers), c);
        }
        Ok(out)
    }

    /// Drains a hash accumulator into sorted term storage.  The hash map's
    /// values are already final (each key's additions happened in source
    /// term order), so sorting here costs nothing in determinism.
    fn from_accumulator(nvars: usize, acc: HashMap<Exponent, f64>) -> Polynomial {
        let terms: BTreeMap<Exponent, f64> =
            acc.into_iter().filter(|(_, c)| *c != 0.0).collect();
        Polynomial { nvars, terms }
    }

    fn check_same_nvars(&self, other: &Polynomial) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::NvarsMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }
}

/// Substitutes the linear change of variables `x -> Mx`, i.e. returns the
/// polynomial `q(x) = p(Mx)`.
///
/// Each monomial `c * x^mu` expands to `c * prod_i (Mx)_i^{mu_i}`, where the
/// power of each linear form is computed once per needed exponent by binary
/// exponentiation and cached.  Expansion of distinct monomials is
/// independent and runs on the rayon pool for large inputs; the partial
/// results are merged sequentially in term order, so the output is
/// bit-identical for every thread count.
pub fn act_linear(m: &SquareMatrix, p: &Polynomial) -> Result<Polynomial> {
    let n = p.nvars();
    if m.size() != n {
        return Err(Error::DimensionMismatch {
            matrix: m.size(),
            expected: n,
        });
    }
    // Linear forms L_i = (Mx)_i = sum_j m[i][j] * x_j.
    let forms: Vec<Polynomial> = (0..n)
        .map(|i| {
            Polynomial::from_terms(
                n,
                m.row(i).iter().enumerate().map(|(j, &c)| {
                    let mut powers = vec![0u32; n];
                    powers[j] = 1;
                    (powers, c)
                }),
            )
            .expect("exponent length matches nvars")
        })
        .collect();

    // Cache L_i^k for every power k that actually occurs.
    let mut max_pow = vec![0u32; n];
    for (e, _) in p.terms() {
        for (i, mp) in max_pow.iter_mut().enumerate() {
            *mp = (*mp).max(e.power(i));
        }
    }
    let powers: Vec<Vec<Polynomial>> = forms
        .iter()
        .zip(&max_pow)
        .map(|(form, &mp)| (0..=mp).map(|k| form.pow(k)).collect())
        .collect();

    let expand_term = |e: &Exponent, c: f64| -> Polynomial {
        let mut acc: Option<Polynomial> = None;
        for (i, cache) in powers.iter().enumerate() {
            let k = e.power(i);
            if k == 0 {
                continue;
            }
            let factor = &cache[k as usize];
            acc = Some(match acc {
                None => factor.clone(),
                Some(a) => a.mul(factor).expect("same nvars by construction"),
            });
        }
        match acc {
            None => Polynomial::constant(n, c),
            Some(a) => a.scale(c),
        }
    };

    let term_list: Vec<(&Exponent, f64)> = p.terms().collect();
    let expanded: Vec<Polynomial> = if term_list.len() >= PAR_TERM_THRESHOLD {
        term_list
            .par_iter()
            .map(|(e, c)| expand_term(e, *c))
            .collect()
    } else {
        term_list.iter().map(|(e, c)| expand_term(e, *c)).collect()
    };

    let mut out = Polynomial::zero(n);
    for q in &expanded {
        for (e, c) in q.terms() {
            out.accumulate(e.clone(), c);
        }
    }
    Ok(out)
}

/// Flips coordinate signs: returns `q(x) = p(sigma_1 x_1, ..., sigma_n x_n)`
/// for `sigma` with entries in `{-1, +1}`.
///
/// Equivalent to `act_linear` with `diag(sigma)` — and bit-identical to it,
/// since sign products are exact — but runs in a single pass: a term's
/// coefficient flips sign precisely when the flipped variables carry odd
/// total power.
pub fn act_signflip(sigma: &[i8], p: &Polynomial) -> Result<Polynomial> {
    if sigma.len() != p.nvars() {
        return Err(Error::DimensionMismatch {
            matrix: sigma.len(),
            expected: p.nvars(),
        });
    }
    debug_assert!(sigma.iter().all(|&s| s == 1 || s == -1));
    let mut flip_mask = 0u64;
    for (i, &s) in sigma.iter().enumerate() {
        if s == -1 {
            flip_mask |= 1 << i;
        }
    }
    let mut out = Polynomial::zero(p.nvars());
    for (e, c) in p.terms() {
        let flips_odd = (e.odd_mask() & flip_mask).count_ones() % 2 == 1;
        out.accumulate(e.clone(), if flips_odd { -c } else { c });
    }
    Ok(out)
}
