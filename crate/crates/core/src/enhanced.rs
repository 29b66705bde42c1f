//! Enhanced Milnor numbers `((−1)^{k+1}μ, λ)` of links of join type and
//! witnesses realizing `λ = 1` for every `μ ≥ 1`.
//!
//! Milnor numbers and enhancements of the base families are tabulated
//! rather than computed; only their behaviour under join is derived.

use serde_json::{json, Value};
use thiserror::Error;

use crate::polyparse::{parse, MixedPolynomial, PolyError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnhancedError {
    #[error("enhancement must be 0 or 1, got {0}")]
    InvalidLambda(u8),
    #[error("at least one exponent is required")]
    NoExponents,
    #[error("exponent {0} is below 2")]
    InvalidExponent(i64),
    #[error("ell must be at least 1, got {0}")]
    InvalidEll(i64),
    #[error("k must be at least 2, got {0}")]
    InvalidK(i64),
    #[error("Milnor number overflows 64 bits")]
    Overflow,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// `μ(K)` and `λ(K)` for a link `K ⊂ S^{2k+1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct EnhancedMilnor {
    mu: u64,
    lambda: u8,
    k: u32,
    /// Whether the regularity hypothesis of the join formula is assumed for
    /// the germ this value came from.
    assumes_regularity: bool,
}

impl EnhancedMilnor {
    pub fn new(mu: u64, lambda: u8, k: u32) -> Result<Self, EnhancedError> {
        if lambda > 1 {
            return Err(EnhancedError::InvalidLambda(lambda));
        }
        Ok(Self {
            mu,
            lambda,
            k,
            assumes_regularity: true,
        })
    }

    pub fn with_regularity(mut self, assumed: bool) -> Self {
        self.assumes_regularity = assumed;
        self
    }

    pub fn mu(&self) -> u64 {
        self.mu
    }

    pub fn lambda(&self) -> u8 {
        self.lambda
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn assumes_regularity(&self) -> bool {
        self.assumes_regularity
    }

    /// The pair `((−1)^{k+1}μ, λ)`.
    pub fn display_pair(&self) -> (i128, u8) {
        let sign = if self.k % 2 == 1 { 1 } else { -1 };
        (sign * self.mu as i128, self.lambda)
    }

    pub fn to_json(&self) -> Value {
        let (signed, lambda) = self.display_pair();
        json!({
            "mu": self.mu,
            "lambda": self.lambda,
            "k": self.k,
            "enhanced": [signed, lambda],
            "assumes_regularity": self.assumes_regularity,
        })
    }
}

/// Invariant of the join of two germs in independent variables. The
/// caller supplies `k` of the result; with `n_i` complex variables per
/// factor it is `n_1 + n_2 − 1`.
pub fn join_enhanced(e1: &EnhancedMilnor, e2: &EnhancedMilnor, k: u32) -> Result<EnhancedMilnor, EnhancedError> {
    let mu = e1.mu.checked_mul(e2.mu).ok_or(EnhancedError::Overflow)?;
    let cross = (e1.lambda as u64 * (e2.mu % 2) + (e1.mu % 2) * e2.lambda as u64) % 2;
    Ok(EnhancedMilnor {
        mu,
        lambda: cross as u8,
        k,
        assumes_regularity: e1.assumes_regularity && e2.assumes_regularity,
    })
}

fn check_exponents(exponents: &[i64]) -> Result<(), EnhancedError> {
    if exponents.is_empty() {
        return Err(EnhancedError::NoExponents);
    }
    match exponents.iter().find(|&&a| a < 2) {
        Some(&a) => Err(EnhancedError::InvalidExponent(a)),
        None => Ok(()),
    }
}

/// `Σ w_i^{a_i}`: `μ = Π(a_i − 1)`, `λ = 0`, in `S^{2m−1}`.
pub fn brieskorn_enhanced(exponents: &[i64]) -> Result<EnhancedMilnor, EnhancedError> {
    check_exponents(exponents)?;
    let mu = exponents
        .iter()
        .try_fold(1u64, |acc, &a| acc.checked_mul(a as u64 - 1))
        .ok_or(EnhancedError::Overflow)?;
    EnhancedMilnor::new(mu, 0, exponents.len() as u32 - 1)
}

/// `(z₁^p + z₂)(z₁^p + 2z₂)·conj(z₁^p + 3z₂)`.
pub fn f1_polynomial(p: u32) -> Result<MixedPolynomial, EnhancedError> {
    let src = format!("(z1^{p} + z2)*(z1^{p} + 2*z2)*conj(z1^{p} + 3*z2)");
    Ok(parse(&src)?)
}

/// `z₁² + z̄₂²`.
pub fn f2_polynomial() -> MixedPolynomial {
    parse("z1^2 + zb2^2").expect("fixed source parses")
}

pub fn brieskorn_polynomial(exponents: &[i64]) -> Result<MixedPolynomial, EnhancedError> {
    check_exponents(exponents)?;
    let src: Vec<String> = exponents
        .iter()
        .enumerate()
        .map(|(i, a)| format!("z{}^{a}", i + 1))
        .collect();
    Ok(parse(&src.join(" + "))?)
}

/// Tabulated `(2p, 1)` for `f₁(p)`.
pub fn f1_enhanced(p: u32) -> Result<EnhancedMilnor, EnhancedError> {
    let mu = 2u64.checked_mul(p as u64).ok_or(EnhancedError::Overflow)?;
    EnhancedMilnor::new(mu, 1, 1)
}

/// Tabulated `(1, 1)` for `f₂`.
pub fn f2_enhanced() -> EnhancedMilnor {
    EnhancedMilnor {
        mu: 1,
        lambda: 1,
        k: 1,
        assumes_regularity: true,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BaseCase {
    pub name: &'static str,
    pub polynomial: MixedPolynomial,
    pub invariant: EnhancedMilnor,
}

/// `f₁` at `p = 1`, `f₂`, and the Brieskorn row `w₁²`.
pub fn base_cases() -> Vec<BaseCase> {
    vec![
        BaseCase {
            name: "f1",
            polynomial: f1_polynomial(1).expect("fixed source parses"),
            invariant: f1_enhanced(1).expect("small"),
        },
        BaseCase {
            name: "f2",
            polynomial: f2_polynomial(),
            invariant: f2_enhanced(),
        },
        BaseCase {
            name: "f3",
            polynomial: brieskorn_polynomial(&[2]).expect("valid exponent"),
            invariant: brieskorn_enhanced(&[2]).expect("valid exponent"),
        },
    ]
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Recipe {
    /// `f₁(p) + Σ w_i^{a_i}`.
    EvenCase { p: u32, exponents: Vec<i64> },
    /// `f₂ + Σ w_i^{a_i}`.
    OddCase { exponents: Vec<i64> },
}

impl Recipe {
    fn to_json(&self) -> Value {
        match self {
            Self::EvenCase { p, exponents } => json!({"case": "even", "p": p, "exponents": exponents}),
            Self::OddCase { exponents } => json!({"case": "odd", "exponents": exponents}),
        }
    }

    /// Recomputes the invariant from the factor table.
    pub fn invariant(&self) -> Result<EnhancedMilnor, EnhancedError> {
        let (first, exponents) = match self {
            Self::EvenCase { p, exponents } => (f1_enhanced(*p)?, exponents),
            Self::OddCase { exponents } => (f2_enhanced(), exponents),
        };
        let tail = brieskorn_enhanced(exponents)?;
        join_enhanced(&first, &tail, 2 + exponents.len() as u32 - 1)
    }

    pub fn polynomial(&self) -> Result<MixedPolynomial, EnhancedError> {
        let (first, exponents) = match self {
            Self::EvenCase { p, exponents } => (f1_polynomial(*p)?, exponents),
            Self::OddCase { exponents } => (f2_polynomial(), exponents),
        };
        Ok(first.join_sum(&brieskorn_polynomial(exponents)?)?)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct JoinWitness {
    pub polynomial: MixedPolynomial,
    pub variable_count: usize,
    pub invariant: EnhancedMilnor,
    pub recipe: Recipe,
}

impl JoinWitness {
    /// True iff the stored invariant agrees with the recipe's factor data.
    pub fn is_consistent(&self) -> bool {
        self.recipe.invariant().is_ok_and(|e| e == self.invariant)
            && self.recipe.polynomial().is_ok_and(|p| p == self.polynomial)
            && self.polynomial.n() == self.variable_count
    }

    pub fn to_json(&self) -> Value {
        json!({
            "polynomial": self.polynomial.to_string(),
            "variable_count": self.variable_count,
            "invariant": self.invariant.to_json(),
            "recipe": self.recipe.to_json(),
        })
    }
}

/// A `(k+1)`-variable join-type polynomial with `μ = ℓ` and `λ = 1`.
pub fn witness(ell: i64, k: i64) -> Result<JoinWitness, EnhancedError> {
    if ell < 1 {
        return Err(EnhancedError::InvalidEll(ell));
    }
    if k < 2 {
        return Err(EnhancedError::InvalidK(k));
    }
    let tail = (k - 1) as usize;
    let recipe = if ell % 2 == 0 {
        let p = u32::try_from(ell / 2).map_err(|_| EnhancedError::Overflow)?;
        Recipe::EvenCase {
            p,
            exponents: vec![2; tail],
        }
    } else {
        let mut exponents = vec![2; tail];
        exponents[0] = ell.checked_add(1).ok_or(EnhancedError::Overflow)?;
        Recipe::OddCase { exponents }
    };
    let polynomial = recipe.polynomial()?;
    let invariant = recipe.invariant()?;
    Ok(JoinWitness {
        variable_count: polynomial.n(),
        polynomial,
        invariant,
        recipe,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::newton::is_convenient;
    use proptest::prelude::*;

    fn em(mu: u64, lambda: u8) -> EnhancedMilnor {
        EnhancedMilnor::new(mu, lambda, 2).unwrap()
    }

    fn pair(e: EnhancedMilnor) -> (u64, u8) {
        (e.mu(), e.lambda())
    }

    #[test]
    fn join_examples() {
        // (2p, 1) ⊛ (Π(a_i − 1), 0) with p = 3, a = (3, 4).
        let b = brieskorn_enhanced(&[3, 4]).unwrap();
        assert_eq!(pair(join_enhanced(&em(6, 1), &b, 3).unwrap()), (36, 0));
        let b = brieskorn_enhanced(&[4, 2]).unwrap();
        assert_eq!(pair(join_enhanced(&f2_enhanced(), &b, 3).unwrap()), (3, 1));
        assert_eq!(pair(join_enhanced(&em(7, 1), &em(1, 0), 2).unwrap()), (7, 1));
        assert_eq!(join_enhanced(&em(7, 1), &em(1, 0), 9).unwrap().k(), 9);
        assert_eq!(join_enhanced(&em(u64::MAX, 0), &em(2, 0), 2), Err(EnhancedError::Overflow));
    }

    #[test]
    fn brieskorn_examples() {
        assert_eq!(pair(brieskorn_enhanced(&[2, 2, 2]).unwrap()), (1, 0));
        assert_eq!(pair(brieskorn_enhanced(&[6, 2, 2]).unwrap()), (5, 0));
        assert_eq!(pair(brieskorn_enhanced(&[3, 4]).unwrap()), (6, 0));
        assert_eq!(brieskorn_enhanced(&[3, 4]).unwrap().k(), 1);
        assert_eq!(brieskorn_enhanced(&[]), Err(EnhancedError::NoExponents));
        assert_eq!(brieskorn_enhanced(&[3, 1]), Err(EnhancedError::InvalidExponent(1)));
    }

    #[test]
    fn base_case_table() {
        let table = base_cases();
        let got: Vec<_> = table.iter().map(|b| (b.name, pair(b.invariant))).collect();
        assert_eq!(got, vec![("f1", (2, 1)), ("f2", (1, 1)), ("f3", (1, 0))]);
        assert_eq!(table[1].polynomial.to_string(), "zb2^2 + z1^2");
        for b in &table {
            assert!(is_convenient(&b.polynomial), "{}", b.name);
        }
    }

    #[test]
    fn invalid_lambda_rejected() {
        assert_eq!(EnhancedMilnor::new(3, 2, 2), Err(EnhancedError::InvalidLambda(2)));
    }

    #[test]
    fn display_sign_follows_k() {
        assert_eq!(EnhancedMilnor::new(3, 1, 2).unwrap().display_pair(), (-3, 1));
        assert_eq!(EnhancedMilnor::new(4, 1, 3).unwrap().display_pair(), (4, 1));
    }

    #[test]
    fn witness_examples() {
        let w = witness(4, 3).unwrap();
        assert_eq!(w.recipe, Recipe::EvenCase { p: 2, exponents: vec![2, 2] });
        assert_eq!(w.invariant.display_pair(), (4, 1));
        assert_eq!(w.variable_count, 4);

        let w = witness(1, 2).unwrap();
        assert_eq!(w.recipe, Recipe::OddCase { exponents: vec![2] });
        assert_eq!(w.polynomial, parse("z1^2 + zb2^2 + z3^2").unwrap());
        assert_eq!(w.invariant.display_pair(), (-1, 1));

        let w = witness(3, 2).unwrap();
        assert_eq!(w.polynomial, parse("z1^2 + zb2^2 + z3^4").unwrap());
        assert_eq!(w.invariant.display_pair(), (-3, 1));

        let w = witness(2, 2).unwrap();
        let expect = parse("(z1 + z2)*(z1 + 2*z2)*conj(z1 + 3*z2) + z3^2").unwrap();
        assert_eq!(w.polynomial, expect);

        assert_eq!(witness(0, 2), Err(EnhancedError::InvalidEll(0)));
        assert_eq!(witness(1, 1), Err(EnhancedError::InvalidK(1)));
    }

    #[test]
    fn witnesses_realize_every_ell() {
        for ell in 1..=10 {
            for k in 2..=5 {
                let w = witness(ell, k).unwrap();
                assert_eq!(pair(w.invariant), (ell as u64, 1));
                assert_eq!(w.variable_count, k as usize + 1);
                assert_eq!(w.invariant.k(), k as u32);
                assert!(w.is_consistent());
                assert!(is_convenient(&w.polynomial));
            }
        }
    }

    #[test]
    fn tampered_witness_is_inconsistent() {
        let mut w = witness(5, 3).unwrap();
        w.invariant = EnhancedMilnor::new(5, 0, 3).unwrap();
        assert!(!w.is_consistent());
    }

    #[test]
    fn join_is_commutative_and_associative_exhaustively() {
        let all: Vec<_> = (0..=20u64).flat_map(|mu| [em(mu, 0), em(mu, 1)]).collect();
        for a in &all {
            for b in &all {
                let ab = join_enhanced(a, b, 2).unwrap();
                assert_eq!(ab, join_enhanced(b, a, 2).unwrap());
                for c in &all {
                    let left = join_enhanced(&ab, c, 2).unwrap();
                    let right = join_enhanced(a, &join_enhanced(b, c, 2).unwrap(), 2).unwrap();
                    assert_eq!(left, right);
                }
            }
        }
    }

    proptest! {
        #[test]
        fn lambda_parity(m1 in 0u64..=20, l1 in 0u8..=1, m2 in 0u64..=20, l2 in 0u8..=1) {
            let j = join_enhanced(&em(m1, l1), &em(m2, l2), 2).unwrap();
            prop_assert_eq!(j.mu(), m1 * m2);
            prop_assert_eq!(j.lambda() as u64, (l1 as u64 * m2 + m1 * l2 as u64) % 2);
            if l1 == 0 && l2 == 0 {
                prop_assert_eq!(j.lambda(), 0);
            }
            // An even-μ partner contributes nothing through its own λ.
            if m1 % 2 == 0 {
                prop_assert_eq!(j.lambda() as u64, (l1 as u64 * m2) % 2);
            }
        }

        #[test]
        fn regularity_flag_is_conjunctive(a in any::<bool>(), b in any::<bool>()) {
            let j = join_enhanced(&em(2, 1).with_regularity(a), &em(3, 0).with_regularity(b), 2).unwrap();
            prop_assert_eq!(j.assumes_regularity(), a && b);
        }
    }
}
