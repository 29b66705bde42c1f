//! Inputs shared by the benchmarks.

use mixjoin_core::seifert::{brieskorn_form, monodromy_charpoly, SeifertForm};
use mixjoin_core::zeta::{reduced_zeta, zeta_from_middle_charpoly};
use mixjoin_core::{Divisor, IntPolynomial};

/// Reduced zeta of the Brieskorn germ with the given exponents.
pub fn brieskorn_zeta(exponents: &[i64]) -> Divisor {
    let form = brieskorn_form(exponents).expect("exponents are at least 2");
    let cp = monodromy_charpoly(&form).expect("unimodular");
    reduced_zeta(&zeta_from_middle_charpoly(&cp, exponents.len()).expect("nonzero constant term"))
}

/// The rank-81 form of `Σ w_i^4` in four variables.
pub fn large_form() -> SeifertForm {
    brieskorn_form(&[4, 4, 4, 4]).expect("valid exponents")
}

/// `(t^a − 1)(t^b + 1)`-style test polynomial of degree `a + b`.
pub fn dense_poly(a: usize, b: usize) -> IntPolynomial {
    let mut x = vec![0i64; a + 1];
    x[0] = -1;
    x[a] = 1;
    let mut y = vec![0i64; b + 1];
    y[0] = 1;
    y[1] = -2;
    y[b] = 1;
    &IntPolynomial::from_i64(&x) * &IntPolynomial::from_i64(&y)
}
