//! Sparse multivariate polynomials with complex coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use super::AlgebraError;

/// A polynomial in `nvars` variables, stored as a map from exponent tuples to
/// nonzero coefficients.
///
/// Terms are kept in lexicographic order of their exponent tuples, which the
/// nested Horner evaluator relies on.
#[derive(Clone, Debug, PartialEq)]
pub struct MultivariatePolynomial {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Complex64>,
}

impl MultivariatePolynomial {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Complex64) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    /// The coordinate function `z_var` (0-based).
    pub fn variable(nvars: usize, var: usize) -> Self {
        Self::monomial(nvars, var, 1, Complex64::new(1.0, 0.0))
    }

    /// `coeff * z_var^power`.
    pub fn monomial(nvars: usize, var: usize, power: u32, coeff: Complex64) -> Self {
        let mut exps = vec![0; nvars];
        exps[var] = power;
        let mut p = Self::zero(nvars);
        p.add_term(exps, coeff);
        p
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, summing
    /// repeated exponents and dropping zero coefficients.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self, AlgebraError>
    where
        I: IntoIterator<Item = (Vec<u32>, Complex64)>,
    {
        let mut p = Self::zero(nvars);
        for (exps, c) in terms {
            if exps.len() != nvars {
                return Err(AlgebraError::DimensionMismatch {
                    expected: nvars,
                    found: exps.len(),
                });
            }
            if !(c.re.is_finite() && c.im.is_finite()) {
                return Err(AlgebraError::NonFinite);
            }
            p.add_term(exps, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, exps: Vec<u32>, c: Complex64) {
        let zero = Complex64::new(0.0, 0.0);
        let v = self.terms.get(&exps).copied().unwrap_or(zero) + c;
        if v == zero {
            self.terms.remove(&exps);
        } else {
            self.terms.insert(exps, v);
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], Complex64)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), *c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Maximum total degree over stored terms; the zero polynomial has degree 0.
    pub fn degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    /// Whether any stored term has a positive exponent in `var`.
    pub fn involves(&self, var: usize) -> bool {
        self.terms.keys().any(|e| e[var] > 0)
    }

    pub fn scale(&self, s: Complex64) -> Self {
        if s == Complex64::new(0.0, 0.0) {
            return Self::zero(self.nvars);
        }
        Self {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c * s))
                .filter(|(_, c)| *c != Complex64::new(0.0, 0.0))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            *terms.entry(e.clone()).or_insert(Complex64::new(0.0, 0.0)) += c;
        }
        terms.retain(|_, v| *v != Complex64::new(0.0, 0.0));
        Self {
            nvars: self.nvars,
            terms,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut terms: BTreeMap<Vec<u32>, Complex64> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                *terms.entry(e).or_insert(Complex64::new(0.0, 0.0)) += ca * cb;
            }
        }
        terms.retain(|_, v| *v != Complex64::new(0.0, 0.0));
        Self {
            nvars: self.nvars,
            terms,
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(self.nvars, Complex64::new(1.0, 0.0));
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Composition `self(subs[0], …, subs[nvars-1])`. All substitutes must
    /// share one variable count, which becomes the result's.
    pub fn substitute(&self, subs: &[MultivariatePolynomial]) -> Self {
        assert_eq!(subs.len(), self.nvars, "substitution arity");
        let out_vars = subs.first().map_or(0, |s| s.nvars);
        let mut powers: Vec<Vec<MultivariatePolynomial>> = subs
            .iter()
            .map(|s| vec![Self::constant(out_vars, Complex64::new(1.0, 0.0)), s.clone()])
            .collect();
        let mut acc = Self::zero(out_vars);
        for (exps, c) in &self.terms {
            let mut term = Self::constant(out_vars, *c);
            for (var, &e) in exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[var].len() <= e as usize {
                    let next = powers[var].last().unwrap().mul(&subs[var]);
                    powers[var].push(next);
                }
                term = term.mul(&powers[var][e as usize]);
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// Nested Horner evaluation, one variable at a time.
    pub fn eval(&self, z: &[Complex64]) -> Complex64 {
        debug_assert_eq!(z.len(), self.nvars);
        let terms: Vec<(&[u32], Complex64)> = self.terms().collect();
        if terms.is_empty() {
            return Complex64::new(0.0, 0.0);
        }
        horner(&terms, 0, z)
    }

    /// Largest coefficient magnitude, used for tolerance scaling.
    pub fn max_coeff(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Returns a copy with the coefficient of `exps` replaced by `c`.
    pub fn with_coeff(&self, exps: &[u32], c: Complex64) -> Self {
        let mut p = self.clone();
        p.terms.remove(exps);
        p.add_term(exps.to_vec(), c);
        p
    }
}

/// Terms sorted lexicographically: those sharing `exps[var]` are contiguous.
fn horner(terms: &[(&[u32], Complex64)], var: usize, z: &[Complex64]) -> Complex64 {
    if var == z.len() {
        return terms.iter().map(|(_, c)| *c).sum();
    }
    // Runs of equal exponent in `var`, in ascending order.
    let mut runs: Vec<(u32, &[(&[u32], Complex64)])> = Vec::new();
    let mut start = 0;
    while start < terms.len() {
        let e = terms[start].0[var];
        let mut end = start + 1;
        while end < terms.len() && terms[end].0[var] == e {
            end += 1;
        }
        runs.push((e, &terms[start..end]));
        start = end;
    }
    let x = z[var];
    let mut acc = Complex64::new(0.0, 0.0);
    let mut prev = runs.last().unwrap().0;
    for (e, run) in runs.iter().rev() {
        acc = acc * x.powu(prev - e) + horner(run, var + 1, z);
        prev = *e;
    }
    acc * x.powu(prev)
}

impl fmt::Display for MultivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (exps, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({}{:+}i)", c.re, c.im)?;
            for (i, &e) in exps.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "*z{}", i + 1)?,
                    _ => write!(f, "*z{}^{}", i + 1, e)?,
                }
            }
        }
        Ok(())
    }
}
