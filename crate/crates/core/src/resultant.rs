//! Subresultant resultants over an integral domain with exact division.

use num::BigInt;

use crate::intpoly::IntPolynomial;

/// Commutative ring with exact division, enough for subresultant sequences.
pub(crate) trait Ring: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Division known to be exact.
    fn exact_div(&self, other: &Self) -> Self;

    fn pow(&self, exp: usize) -> Self {
        (0..exp).fold(Self::one(), |acc, _| acc.mul(self))
    }
}

impl Ring for BigInt {
    fn zero() -> Self {
        num::Zero::zero()
    }
    fn one() -> Self {
        num::One::one()
    }
    fn is_zero(&self) -> bool {
        num::Zero::is_zero(self)
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn exact_div(&self, o: &Self) -> Self {
        debug_assert!((self % o).is_zero());
        self / o
    }
}

impl Ring for IntPolynomial {
    fn zero() -> Self {
        IntPolynomial::zero()
    }
    fn one() -> Self {
        IntPolynomial::one()
    }
    fn is_zero(&self) -> bool {
        IntPolynomial::is_zero(self)
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn exact_div(&self, o: &Self) -> Self {
        self.div_exact(o).expect("subresultant division is exact")
    }
}

fn trim<D: Ring>(mut p: Vec<D>) -> Vec<D> {
    while p.last().is_some_and(Ring::is_zero) {
        p.pop();
    }
    p
}

/// Resultant of two polynomials with coefficients in `D` (constant term
/// first), by the subresultant algorithm. Every division is exact in `D`.
pub(crate) fn resultant<D: Ring>(a: &[D], b: &[D]) -> D {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    if a.is_empty() || b.is_empty() {
        return D::zero();
    }
    let mut sign_negative = false;
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
        if (a.len() - 1) % 2 == 1 && (b.len() - 1) % 2 == 1 {
            sign_negative = true;
        }
    }
    let mut g = D::one();
    let mut h = D::one();
    while b.len() > 1 {
        let (da, db) = (a.len() - 1, b.len() - 1);
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            sign_negative = !sign_negative;
        }
        let r = full_pseudo_rem(&a, &b);
        a = b;
        if r.is_empty() {
            return D::zero();
        }
        let divisor = g.mul(&h.pow(delta));
        b = r.iter().map(|c| c.exact_div(&divisor)).collect();
        g = a[a.len() - 1].clone();
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => g.pow(delta).exact_div(&h.pow(delta - 1)),
        };
    }
    let da = a.len() - 1;
    let lb = b[0].clone();
    let res = if da == 0 {
        D::one()
    } else {
        lb.pow(da).exact_div(&h.pow(da - 1))
    };
    if sign_negative {
        res.neg()
    } else {
        res
    }
}

/// Pseudo-remainder that always multiplies by `lc(b)^{deg a − deg b + 1}`,
/// as the subresultant recurrence assumes.
fn full_pseudo_rem<D: Ring>(a: &[D], b: &[D]) -> Vec<D> {
    let db = b.len() - 1;
    let lc = b[db].clone();
    let mut r = a.to_vec();
    let steps = a.len() - db;
    for step in 0..steps {
        let k = a.len() - 1 - step;
        let top = r[k].clone();
        for v in r.iter_mut().take(k + 1) {
            *v = v.mul(&lc);
        }
        if !top.is_zero() {
            for (i, c) in b.iter().enumerate() {
                r[k - db + i] = r[k - db + i].sub(&top.mul(c));
            }
        }
        r.truncate(k);
    }
    trim(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bi(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn sylvester_det(a: &[i64], b: &[i64]) -> BigInt {
        // Reference oracle: determinant of the Sylvester matrix, expanded
        // with fraction-free elimination on rationals.
        use num::{BigRational, One, Zero};
        let (m, n) = (a.len() - 1, b.len() - 1);
        let size = m + n;
        let mut mat = vec![vec![BigRational::zero(); size]; size];
        for i in 0..n {
            for (j, &c) in a.iter().rev().enumerate() {
                mat[i][i + j] = BigRational::from_integer(bi(c));
            }
        }
        for i in 0..m {
            for (j, &c) in b.iter().rev().enumerate() {
                mat[n + i][i + j] = BigRational::from_integer(bi(c));
            }
        }
        let mut det = BigRational::one();
        for col in 0..size {
            let Some(piv) = (col..size).find(|&r| !mat[r][col].is_zero()) else {
                return bi(0);
            };
            if piv != col {
                mat.swap(piv, col);
                det = -det;
            }
            det *= mat[col][col].clone();
            for r in col + 1..size {
                let f = &mat[r][col] / &mat[col][col];
                for c in col..size {
                    let v = &f * &mat[col][c];
                    mat[r][c] -= v;
                }
            }
        }
        det.to_integer()
    }

    #[test]
    fn resultant_small_cases() {
        let r = resultant(&[bi(-2), bi(1)], &[bi(-3), bi(1)]);
        assert_eq!(r, sylvester_det(&[-2, 1], &[-3, 1]));
        assert_eq!(resultant(&[bi(1), bi(0), bi(1)], &[bi(0), bi(1)]), bi(1));
        assert_eq!(resultant::<BigInt>(&[bi(5)], &[bi(1), bi(1), bi(1)]), bi(25));
        assert_eq!(resultant::<BigInt>(&[], &[bi(1)]), bi(0));
    }

    proptest! {
        #[test]
        fn resultant_matches_sylvester_determinant(
            a in prop::collection::vec(-6i64..=6, 1..6),
            b in prop::collection::vec(-6i64..=6, 1..6),
        ) {
            prop_assume!(*a.last().unwrap() != 0 && *b.last().unwrap() != 0);
            let ab: Vec<BigInt> = a.iter().map(|&v| bi(v)).collect();
            let bb: Vec<BigInt> = b.iter().map(|&v| bi(v)).collect();
            prop_assert_eq!(resultant(&ab, &bb), sylvester_det(&a, &b));
        }

    }
}
