//! Mixed polynomials in `z_1 … z_n` and their conjugates, with exact
//! Gaussian-rational coefficients.
//!
//! A [`MixedPolynomial`] is a collected term map `(ν, μ) ↦ c` standing for
//! `Σ c · z^ν · z̄^μ`. Terms with zero coefficient are never stored, so the
//! zero polynomial is the empty map. Terms iterate in lexicographic `(ν, μ)`
//! order, which is also the canonical print order.

mod gaussian;
mod json;
mod parser;

use std::collections::BTreeMap;
use std::fmt;

use num::complex::Complex64;
use thiserror::Error;

pub use gaussian::GaussianRational;
pub(crate) use gaussian::{rational_from_str, rational_to_string};
pub use parser::{parse, parse_with_vars};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("syntax error at {line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("variable index {index} at {line}:{column} is out of range 1..={n}")]
    VariableIndex {
        index: u64,
        n: usize,
        line: usize,
        column: usize,
    },
    #[error("exponent at {line}:{column} is not a nonnegative integer")]
    NonIntegerExponent { line: usize, column: usize },
    #[error("dimension mismatch: expected {expected} variables, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("variable index {index} is out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("evaluation point has a non-finite coordinate")]
    NonFinitePoint,
    #[error("invalid polynomial JSON: {0}")]
    Json(String),
}

/// The exponent pair `(ν, μ)` of `z^ν z̄^μ`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MixedMonomial {
    pub nu: Vec<u32>,
    pub mu: Vec<u32>,
}

impl MixedMonomial {
    pub fn new(nu: Vec<u32>, mu: Vec<u32>) -> Result<Self, PolyError> {
        if nu.len() != mu.len() {
            return Err(PolyError::DimensionMismatch {
                expected: nu.len(),
                found: mu.len(),
            });
        }
        Ok(Self { nu, mu })
    }

    pub fn one(n: usize) -> Self {
        Self {
            nu: vec![0; n],
            mu: vec![0; n],
        }
    }

    pub fn n(&self) -> usize {
        self.nu.len()
    }

    /// The radial exponent `ν + μ`, the lattice point this term contributes
    /// to the Newton polytope.
    pub fn radial(&self) -> Vec<u64> {
        self.nu
            .iter()
            .zip(&self.mu)
            .map(|(&a, &b)| a as u64 + b as u64)
            .collect()
    }

    pub fn is_holomorphic(&self) -> bool {
        self.mu.iter().all(|&e| e == 0)
    }

    pub fn is_antiholomorphic(&self) -> bool {
        self.nu.iter().all(|&e| e == 0)
    }

    pub fn conjugate(&self) -> Self {
        Self {
            nu: self.mu.clone(),
            mu: self.nu.clone(),
        }
    }

    fn checked_mul(&self, other: &Self) -> Result<Self, PolyError> {
        let add = |a: &[u32], b: &[u32]| -> Result<Vec<u32>, PolyError> {
            a.iter()
                .zip(b)
                .map(|(&x, &y)| x.checked_add(y).ok_or(PolyError::ExponentOverflow))
                .collect()
        };
        Ok(Self {
            nu: add(&self.nu, &other.nu)?,
            mu: add(&self.mu, &other.mu)?,
        })
    }

    fn evaluate(&self, w: &[Complex64]) -> Complex64 {
        let mut acc = Complex64::new(1.0, 0.0);
        for (j, wj) in w.iter().enumerate() {
            if self.nu[j] > 0 {
                acc *= wj.powu(self.nu[j]);
            }
            if self.mu[j] > 0 {
                acc *= wj.conj().powu(self.mu[j]);
            }
        }
        acc
    }
}

/// A point of `ℂⁿ` for numerical evaluation.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexPoint {
    coords: Vec<Complex64>,
}

impl ComplexPoint {
    pub fn new(coords: Vec<Complex64>) -> Result<Self, PolyError> {
        if coords.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(PolyError::NonFinitePoint);
        }
        Ok(Self { coords })
    }

    pub fn coords(&self) -> &[Complex64] {
        &self.coords
    }

    pub fn n(&self) -> usize {
        self.coords.len()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Derivative {
    /// `∂/∂z_j`
    Holomorphic,
    /// `∂/∂z̄_j`
    Antiholomorphic,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MixedPolynomial {
    n: usize,
    terms: BTreeMap<MixedMonomial, GaussianRational>,
}

impl MixedPolynomial {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: GaussianRational) -> Self {
        Self::from_terms(n, [(MixedMonomial::one(n), c)]).expect("constant term has n variables")
    }

    /// The coordinate `z_j` (1-based).
    pub fn variable(n: usize, j: usize) -> Result<Self, PolyError> {
        Self::coordinate(n, j, false)
    }

    /// The conjugate coordinate `z̄_j` (1-based).
    pub fn conj_variable(n: usize, j: usize) -> Result<Self, PolyError> {
        Self::coordinate(n, j, true)
    }

    fn coordinate(n: usize, j: usize, conj: bool) -> Result<Self, PolyError> {
        if j == 0 || j > n {
            return Err(PolyError::IndexOutOfRange { index: j, n });
        }
        let mut mono = MixedMonomial::one(n);
        if conj {
            mono.mu[j - 1] = 1;
        } else {
            mono.nu[j - 1] = 1;
        }
        Self::from_terms(n, [(mono, GaussianRational::one())])
    }

    /// Collects terms, summing coefficients of repeated monomials and
    /// dropping zeros.
    pub fn from_terms<I>(n: usize, terms: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (MixedMonomial, GaussianRational)>,
    {
        let mut map: BTreeMap<MixedMonomial, GaussianRational> = BTreeMap::new();
        for (mono, c) in terms {
            if mono.n() != n {
                return Err(PolyError::DimensionMismatch {
                    expected: n,
                    found: mono.n(),
                });
            }
            accumulate(&mut map, mono, c);
        }
        Ok(Self { n, terms: map })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<MixedMonomial, GaussianRational> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, mono: &MixedMonomial) -> Option<&GaussianRational> {
        self.terms.get(mono)
    }

    /// Sum of coefficient moduli, a scale for numerical thresholds.
    pub fn coefficient_norm(&self) -> f64 {
        self.terms.values().map(GaussianRational::abs_f64).sum()
    }

    fn check_same_n(&self, other: &Self) -> Result<(), PolyError> {
        if self.n != other.n {
            return Err(PolyError::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_same_n(other)?;
        let mut terms = self.terms.clone();
        for (mono, c) in &other.terms {
            accumulate(&mut terms, mono.clone(), c.clone());
        }
        Ok(Self { n: self.n, terms })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&GaussianRational::from_integer(-1))
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        Self {
            n: self.n,
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    /// Distributive product with collected terms.
    pub fn multiply(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_same_n(other)?;
        let mut terms = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                accumulate(&mut terms, m1.checked_mul(m2)?, c1 * c2);
            }
        }
        Ok(Self { n: self.n, terms })
    }

    pub fn pow(&self, exp: u32) -> Result<Self, PolyError> {
        let mut result = Self::constant(self.n, GaussianRational::one());
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = result.multiply(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.multiply(&base)?;
            }
        }
        Ok(result)
    }

    /// Swaps `ν ↔ μ` and conjugates every coefficient.
    pub fn conjugate(&self) -> Self {
        Self {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.conjugate(), c.conj()))
                .collect(),
        }
    }

    /// `Σ c · w^ν · w̄^μ` in double precision.
    pub fn evaluate(&self, w: &ComplexPoint) -> Result<Complex64, PolyError> {
        if w.n() != self.n {
            return Err(PolyError::DimensionMismatch {
                expected: self.n,
                found: w.n(),
            });
        }
        Ok(self.evaluate_unchecked(w.coords()))
    }

    pub(crate) fn evaluate_unchecked(&self, w: &[Complex64]) -> Complex64 {
        self.terms
            .iter()
            .map(|(m, c)| c.to_complex() * m.evaluate(w))
            .sum()
    }

    /// Wirtinger derivative `∂/∂z_j` or `∂/∂z̄_j` (1-based `j`), exact.
    pub fn wirtinger(&self, kind: Derivative, j: usize) -> Result<Self, PolyError> {
        if j == 0 || j > self.n {
            return Err(PolyError::IndexOutOfRange { index: j, n: self.n });
        }
        let idx = j - 1;
        let mut terms = BTreeMap::new();
        for (mono, c) in &self.terms {
            let exps = match kind {
                Derivative::Holomorphic => &mono.nu,
                Derivative::Antiholomorphic => &mono.mu,
            };
            let e = exps[idx];
            if e == 0 {
                continue;
            }
            let mut next = mono.clone();
            match kind {
                Derivative::Holomorphic => next.nu[idx] -= 1,
                Derivative::Antiholomorphic => next.mu[idx] -= 1,
            }
            accumulate(&mut terms, next, c * &GaussianRational::from_integer(e as i64));
        }
        Ok(Self { n: self.n, terms })
    }

    /// Re-indexes into `n_total` variables, shifting every index by `offset`.
    pub fn embed(&self, n_total: usize, offset: usize) -> Result<Self, PolyError> {
        if offset + self.n > n_total {
            return Err(PolyError::DimensionMismatch {
                expected: n_total,
                found: offset + self.n,
            });
        }
        let terms = self.terms.iter().map(|(m, c)| {
            let mut mono = MixedMonomial::one(n_total);
            mono.nu[offset..offset + self.n].copy_from_slice(&m.nu);
            mono.mu[offset..offset + self.n].copy_from_slice(&m.mu);
            (mono, c.clone())
        });
        Self::from_terms(n_total, terms)
    }

    /// `f(z) + g(w)` in independent variables `(z, w)`: the join-type sum.
    pub fn join_sum(&self, other: &Self) -> Result<Self, PolyError> {
        let n = self.n + other.n;
        self.embed(n, 0)?.add(&other.embed(n, self.n)?)
    }

    /// Polynomial with the same `n` keeping only the selected terms.
    pub fn filter_terms<F>(&self, mut keep: F) -> Self
    where
        F: FnMut(&MixedMonomial) -> bool,
    {
        Self {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        json::to_json(self)
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self, PolyError> {
        json::from_json(value)
    }
}

fn accumulate(
    map: &mut BTreeMap<MixedMonomial, GaussianRational>,
    mono: MixedMonomial,
    c: GaussianRational,
) {
    if c.is_zero() {
        return;
    }
    match map.get_mut(&mono) {
        Some(existing) => {
            let sum = &*existing + &c;
            if sum.is_zero() {
                map.remove(&mono);
            } else {
                *existing = sum;
            }
        }
        None => {
            map.insert(mono, c);
        }
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, mono: &MixedMonomial) -> Result<bool, fmt::Error> {
    let mut first = true;
    let factors = mono
        .nu
        .iter()
        .enumerate()
        .map(|(j, &e)| ("z", j + 1, e))
        .chain(mono.mu.iter().enumerate().map(|(j, &e)| ("zb", j + 1, e)));
    for (name, j, e) in factors {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        if e == 1 {
            write!(f, "{name}{j}")?;
        } else {
            write!(f, "{name}{j}^{e}")?;
        }
    }
    Ok(!first)
}

impl fmt::Display for MixedPolynomial {
    /// Canonical text in the input grammar, terms in `(ν, μ)` order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (mono, c)) in self.terms.iter().enumerate() {
            let constant = mono.nu.iter().chain(&mono.mu).all(|&e| e == 0);
            // Real coefficients carry their sign into the separator.
            let negative = if c.is_real() {
                num::Signed::is_negative(&c.re)
            } else {
                num::Zero::is_zero(&c.re) && num::Signed::is_negative(&c.im)
            };
            let (negative, magnitude) = if negative {
                (true, -c)
            } else {
                (false, c.clone())
            };
            match (idx, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if constant {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                write_monomial(f, mono)?;
            } else {
                write!(f, "{magnitude}*")?;
                write_monomial(f, mono)?;
            }
        }
        Ok(())
    }
}
