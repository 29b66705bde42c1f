//! Divisors of rational functions with roots in ℂ*, zeta functions of
//! monodromies, and the multiplicative join of divisors.

use std::fmt;

use num::{BigInt, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::intpoly::IntPolynomial;
use crate::resultant::resultant;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ZetaError {
    #[error("polynomial {0} has a root at t = 0")]
    ZeroRoot(String),
    #[error("zero polynomial has no divisor")]
    ZeroPolynomial,
}

fn check(p: &IntPolynomial) -> Result<(), ZetaError> {
    if p.is_zero() {
        return Err(ZetaError::ZeroPolynomial);
    }
    if p.constant_term().is_zero() {
        return Err(ZetaError::ZeroRoot(p.to_string()));
    }
    Ok(())
}

/// Formal difference of root multisets, stored as a reduced pair
/// `num / den` of primitive integer polynomials with positive leading
/// coefficients and nonzero constant terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Divisor {
    num: IntPolynomial,
    den: IntPolynomial,
}

impl Divisor {
    /// The zero divisor `(1, 1)`.
    pub fn zero() -> Self {
        Self {
            num: IntPolynomial::one(),
            den: IntPolynomial::one(),
        }
    }

    /// `⟨1⟩`, the unit for [`divisor_join`].
    pub fn unit() -> Self {
        Self {
            num: IntPolynomial::t_minus_one(),
            den: IntPolynomial::one(),
        }
    }

    pub fn num(&self) -> &IntPolynomial {
        &self.num
    }

    pub fn den(&self) -> &IntPolynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// Divisor of a product of rational functions.
    pub fn add(&self, other: &Self) -> Self {
        reduce(&self.num * &other.num, &self.den * &other.den)
    }

    pub fn neg(&self) -> Self {
        Self {
            num: self.den.clone(),
            den: self.num.clone(),
        }
    }

    /// Degree of the divisor (number of zeros minus number of poles).
    pub fn degree(&self) -> i64 {
        let d = |p: &IntPolynomial| p.degree().unwrap_or(0) as i64;
        d(&self.num) - d(&self.den)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "num": self.num.to_json(),
            "den": self.den.to_json(),
            "num_text": self.num.to_string(),
            "den_text": self.den.to_string(),
        })
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

/// Both inputs are already known to be nonzero with nonzero constant term.
fn reduce(num: IntPolynomial, den: IntPolynomial) -> Divisor {
    let g = num.gcd(&den);
    let num = num.div_exact(&g).expect("gcd divides").primitive_positive();
    let den = den.div_exact(&g).expect("gcd divides").primitive_positive();
    Divisor { num, den }
}

/// Divisor of `num(t) / den(t)`. Leading scalars are forgotten.
pub fn divisor_of(num: &IntPolynomial, den: &IntPolynomial) -> Result<Divisor, ZetaError> {
    check(num)?;
    check(den)?;
    Ok(reduce(num.clone(), den.clone()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZetaFunction {
    pub charpolys: Vec<IntPolynomial>,
    pub divisor: Divisor,
}

impl ZetaFunction {
    pub fn to_json(&self) -> Value {
        json!({
            "charpolys": self.charpolys.iter().map(IntPolynomial::to_json).collect::<Vec<_>>(),
            "divisor": self.divisor.to_json(),
        })
    }
}

/// `ζ(t) = Π_j P_j(t)^{(−1)^{j+1}}`: odd `j` contribute zeros, even `j`
/// poles.
pub fn zeta_from_charpolys(ps: &[IntPolynomial]) -> Result<ZetaFunction, ZetaError> {
    let mut num = IntPolynomial::one();
    let mut den = IntPolynomial::one();
    for (j, p) in ps.iter().enumerate() {
        check(p)?;
        if j % 2 == 1 {
            num = &num * p;
        } else {
            den = &den * p;
        }
    }
    Ok(ZetaFunction {
        charpolys: ps.to_vec(),
        divisor: reduce(num, den),
    })
}

/// Zeta function of a monodromy whose fiber has the homology of a bouquet
/// of `(n − 1)`-spheres: `P_0 = 1 − t`, `P_{n−1} = middle`, the rest 1.
/// For `n = 1` the fiber is a finite set and `P_0 = (1 − t) · middle`.
pub fn zeta_from_middle_charpoly(middle: &IntPolynomial, n_vars: usize) -> Result<ZetaFunction, ZetaError> {
    check(middle)?;
    let one_minus_t = IntPolynomial::from_i64(&[1, -1]);
    let ps = match n_vars {
        0 => return Err(ZetaError::ZeroPolynomial),
        1 => vec![&one_minus_t * middle],
        n => {
            let mut ps = vec![IntPolynomial::one(); n];
            ps[0] = one_minus_t;
            ps[n - 1] = middle.clone();
            ps
        }
    };
    zeta_from_charpolys(&ps)
}

/// Divisor of `(t − 1) ζ(t)`.
pub fn reduced_zeta(z: &ZetaFunction) -> Divisor {
    reduce_divisor(&z.divisor)
}

/// `d + ⟨1⟩`.
pub fn reduce_divisor(d: &Divisor) -> Divisor {
    reduce(&d.num * &IntPolynomial::t_minus_one(), d.den.clone())
}

/// The polynomial whose roots are all products `αβ` of a root `α` of `p`
/// and a root `β` of `q`, as `Res_y(p(y), y^{deg q} q(t/y))`, made
/// primitive with positive leading coefficient.
pub fn composed_product(p: &IntPolynomial, q: &IntPolynomial) -> Result<IntPolynomial, ZetaError> {
    check(p)?;
    check(q)?;
    Ok(composed_unchecked(p, q))
}

fn composed_unchecked(p: &IntPolynomial, q: &IntPolynomial) -> IntPolynomial {
    let (dp, dq) = (p.degree().expect("nonzero"), q.degree().expect("nonzero"));
    let n = dp * dq;
    // R(t) = Res_y(p(y), y^m q(t/y)) has degree ≤ n; sample it at
    // t = 0, …, n with integer resultants and interpolate exactly.
    let pc: Vec<BigInt> = p.coeffs().to_vec();
    let values: Vec<BigInt> = (0..=n)
        .map(|c| {
            let c = BigInt::from(c);
            // Coefficient of y^k is q_{m−k} c^{m−k}.
            let b: Vec<BigInt> = (0..=dq)
                .map(|k| q.coefficient(dq - k) * num::pow(c.clone(), dq - k))
                .collect();
            resultant(&pc, &b)
        })
        .collect();
    interpolate(&values).primitive_positive()
}

/// The polynomial of degree < len taking `values[i]` at `t = i`, known to
/// have integer coefficients.
fn interpolate(values: &[BigInt]) -> IntPolynomial {
    // Newton divided differences on the nodes 0, 1, …; the k-th difference
    // of integer data is divisible by k!, so all steps stay in ℤ.
    let mut diffs: Vec<BigInt> = values.to_vec();
    let n = diffs.len();
    for k in 1..n {
        for i in (k..n).rev() {
            diffs[i] = (&diffs[i] - &diffs[i - 1]) / BigInt::from(k);
        }
    }
    // Σ_k diffs[k] · t(t−1)…(t−k+1), expanded by Horner's rule.
    let mut acc = IntPolynomial::zero();
    for k in (0..n).rev() {
        let factor = IntPolynomial::from_i64(&[-(k as i64), 1]);
        acc = &(&acc * &factor) + &IntPolynomial::constant(diffs[k].clone());
    }
    acc
}

/// Reference implementation over ℤ[t], used to cross-check the sampled one.
#[cfg(test)]
fn composed_symbolic(p: &IntPolynomial, q: &IntPolynomial) -> IntPolynomial {
    let m = q.degree().expect("nonzero");
    let a: Vec<IntPolynomial> = p.coeffs().iter().map(|c| IntPolynomial::constant(c.clone())).collect();
    let b: Vec<IntPolynomial> = (0..=m)
        .map(|k| IntPolynomial::monomial(q.coefficient(m - k), m - k))
        .collect();
    resultant(&a, &b).primitive_positive()
}

/// Product of divisors induced by multiplying roots, extended bilinearly
/// to formal differences.
pub fn divisor_join(d1: &Divisor, d2: &Divisor) -> Divisor {
    let ((nn, dd), (nd, dn)) = rayon::join(
        || {
            rayon::join(
                || composed_unchecked(&d1.num, &d2.num),
                || composed_unchecked(&d1.den, &d2.den),
            )
        },
        || {
            rayon::join(
                || composed_unchecked(&d1.num, &d2.den),
                || composed_unchecked(&d1.den, &d2.num),
            )
        },
    );
    reduce(&nn * &dd, &nd * &dn)
}
