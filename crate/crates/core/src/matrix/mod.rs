//! Small dense integer matrices with overflow-checked arithmetic.

mod modular;

use num::{BigInt, BigRational, Integer, One, Signed, ToPrimitive, Zero};
use serde_json::Value;
use thiserror::Error;

use crate::intpoly::IntPolynomial;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("matrix rows have unequal lengths")]
    Ragged,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("integer overflow in matrix arithmetic")]
    Overflow,
    #[error("matrix is not unimodular (det = {0})")]
    NotUnimodular(BigInt),
    #[error("expected a JSON array of integer arrays")]
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    /// Builds a matrix from rows. An empty list gives the 0×0 matrix.
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self, MatrixError> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(MatrixError::Ragged);
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> i64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| 0)
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| i64::from(i == j))
    }

    pub fn diagonal(d: &[i64]) -> Self {
        Self::from_fn(d.len(), d.len(), |i, j| if i == j { d[i] } else { 0 })
    }

    pub fn n_rows(&self) -> usize {
        self.rows
    }

    pub fn n_cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    fn require_square(&self) -> Result<usize, MatrixError> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(MatrixError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, MatrixError> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(MatrixError::Shape(format!(
                "cannot add {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.checked_add(*b).ok_or(MatrixError::Overflow))
            .collect::<Result<_, _>>()?;
        Ok(Self { data, ..*self })
    }

    pub fn checked_scale(&self, s: i64) -> Result<Self, MatrixError> {
        let data = self
            .data
            .iter()
            .map(|a| a.checked_mul(s).ok_or(MatrixError::Overflow))
            .collect::<Result<_, _>>()?;
        Ok(Self { data, ..*self })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, MatrixError> {
        if self.cols != other.rows {
            return Err(MatrixError::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc: i64 = 0;
                for k in 0..self.cols {
                    let term = self.get(i, k).checked_mul(other.get(k, j)).ok_or(MatrixError::Overflow)?;
                    acc = acc.checked_add(term).ok_or(MatrixError::Overflow)?;
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    /// Kronecker product, block `(i, j)` equal to `a_ij · other`.
    pub fn kron(&self, other: &Self) -> Result<Self, MatrixError> {
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        let mut data = Vec::with_capacity(r * c);
        for i in 0..r {
            for j in 0..c {
                let a = self.get(i / other.rows, j / other.cols);
                let b = other.get(i % other.rows, j % other.cols);
                data.push(a.checked_mul(b).ok_or(MatrixError::Overflow)?);
            }
        }
        Ok(Self { rows: r, cols: c, data })
    }

    fn to_big(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|&v| BigInt::from(v)).collect())
            .collect()
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<BigInt, MatrixError> {
        let n = self.require_square()?;
        let mut m = self.to_big();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            let Some(piv) = (k..n).find(|&r| !m[r][k].is_zero()) else {
                return Ok(BigInt::zero());
            };
            if piv != k {
                m.swap(piv, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                    m[i][j] = v / &prev;
                }
            }
            prev = m[k][k].clone();
        }
        Ok(if n == 0 { sign } else { sign * &m[n - 1][n - 1] })
    }

    pub fn is_unimodular(&self) -> bool {
        matches!(self.det(), Ok(d) if d.abs().is_one())
    }

    /// Exact integer inverse of a matrix with determinant ±1.
    pub fn inverse_unimodular(&self) -> Result<Self, MatrixError> {
        let n = self.require_square()?;
        let det = self.det()?;
        if !det.abs().is_one() {
            return Err(MatrixError::NotUnimodular(det));
        }
        let mut m: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                let mut row: Vec<BigRational> =
                    self.row(i).iter().map(|&v| BigRational::from_integer(v.into())).collect();
                row.extend((0..n).map(|j| BigRational::from_integer(BigInt::from(i64::from(i == j)))));
                row
            })
            .collect();
        for col in 0..n {
            let piv = (col..n).find(|&r| !m[r][col].is_zero()).expect("invertible");
            m.swap(piv, col);
            let p = m[col][col].clone();
            for v in m[col].iter_mut() {
                *v = &*v / &p;
            }
            let pivot_row = m[col].clone();
            for (r, row) in m.iter_mut().enumerate() {
                if r == col || row[col].is_zero() {
                    continue;
                }
                let f = row[col].clone();
                for (v, pv) in row.iter_mut().zip(&pivot_row) {
                    *v = &*v - &(&f * pv);
                }
            }
        }
        let mut out = Self::zeros(n, n);
        for (i, row) in m.iter().enumerate() {
            for j in 0..n {
                let v = &row[n + j];
                debug_assert!(v.is_integer());
                out.set(i, j, v.to_integer().to_i64().ok_or(MatrixError::Overflow)?);
            }
        }
        Ok(out)
    }

    /// Invariant factors `d_1 | d_2 | …`, non-negative, zeros last.
    pub fn smith_diagonal(&self) -> Vec<BigInt> {
        smith_diagonal(self.to_big())
    }

    /// `(signature, rank)` of a symmetric matrix.
    pub fn symmetric_signature(&self) -> Result<(i64, usize), MatrixError> {
        if !self.is_symmetric() {
            return Err(MatrixError::Shape("signature needs a symmetric matrix".into()));
        }
        Ok(signature(
            self.to_big()
                .into_iter()
                .map(|r| r.into_iter().map(BigRational::from_integer).collect())
                .collect(),
        ))
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            (0..self.rows)
                .map(|i| Value::Array(self.row(i).iter().map(|&v| Value::from(v)).collect()))
                .collect(),
        )
    }

    pub fn from_json(v: &Value) -> Result<Self, MatrixError> {
        let rows = v.as_array().ok_or(MatrixError::Json)?;
        let parsed = rows
            .iter()
            .map(|r| {
                r.as_array()
                    .ok_or(MatrixError::Json)?
                    .iter()
                    .map(|x| x.as_i64().ok_or(MatrixError::Json))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        if parsed.len() == 1 && parsed[0].is_empty() {
            return Err(MatrixError::Ragged);
        }
        let m = Self::new(parsed)?;
        Ok(m)
    }
}

/// `det(A0 + t·A1)` exactly.
pub fn poly_det(a0: &IntMatrix, a1: &IntMatrix) -> Result<IntPolynomial, MatrixError> {
    a0.require_square()?;
    if (a0.rows, a0.cols) != (a1.rows, a1.cols) {
        return Err(MatrixError::Shape("pencil matrices differ in size".into()));
    }
    Ok(IntPolynomial::new(modular::poly_det(&a0.to_big(), &a1.to_big())))
}

fn smith_diagonal(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        // Smallest nonzero entry of the trailing block becomes the pivot.
        let pick = |a: &Vec<Vec<BigInt>>| {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if a[i][j].is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            best
        };
        let Some((pi, pj)) = pick(&a) else {
            break;
        };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                for j in t..cols {
                    let v = &q * &a[t][j];
                    a[i][j] -= v;
                }
                if !a[i][t].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for row in a.iter_mut().skip(t) {
                    let v = &q * &row[t];
                    row[j] -= v;
                }
                if !a[t][j].is_zero() {
                    dirty = true;
                }
            }
            if !dirty {
                // The pivot must divide the rest of the block.
                let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
                match bad {
                    None => break,
                    Some(i) => {
                        for j in t..cols {
                            let v = a[i][j].clone();
                            a[t][j] += v;
                        }
                        continue;
                    }
                }
            }
            // Move the smallest remaining entry of row/column t into place.
            let mut best = (t, t);
            for i in t..rows {
                if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..cols {
                if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            a.swap(t, best.0);
            for row in a.iter_mut() {
                row.swap(t, best.1);
            }
        }
        diag.push(a[t][t].abs());
    }
    diag.resize(rows.min(cols), BigInt::zero());
    diag
}

fn signature(mut a: Vec<Vec<BigRational>>) -> (i64, usize) {
    let n = a.len();
    let (mut pos, mut neg) = (0usize, 0usize);
    let mut k = 0;
    while k < n {
        if a[k][k].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !a[j][j].is_zero()) {
                a.swap(k, j);
                for row in a.iter_mut() {
                    row.swap(k, j);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) {
                // a_kk becomes 2·a_kj ≠ 0 after adding row/column j to k.
                for c in 0..n {
                    let v = a[j][c].clone();
                    a[k][c] += v;
                }
                for row in a.iter_mut() {
                    let v = row[j].clone();
                    row[k] += v;
                }
            } else {
                k += 1;
                continue;
            }
        }
        let p = a[k][k].clone();
        if p.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &p;
            for j in k..n {
                let v = &f * &a[k][j];
                a[i][j] -= v;
            }
        }
        for i in k + 1..n {
            a[k][i] = BigRational::zero();
            a[i][k] = BigRational::zero();
        }
        k += 1;
    }
    (pos as i64 - neg as i64, pos + neg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    fn bigs(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn construction() {
        assert!(IntMatrix::new(vec![vec![1, 2], vec![3]]).is_err());
        let e = IntMatrix::new(vec![]).unwrap();
        assert_eq!((e.n_rows(), e.n_cols()), (0, 0));
        assert_eq!(e.det().unwrap(), BigInt::one());
    }

    #[test]
    fn determinants() {
        assert_eq!(m(&[&[0, -1], &[-1, 2]]).det().unwrap(), BigInt::from(-1));
        assert_eq!(m(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 2]]).det().unwrap(), BigInt::from(6));
        assert_eq!(m(&[&[1, 2], &[2, 4]]).det().unwrap(), BigInt::zero());
        assert!(m(&[&[1, 2]]).det().is_err());
    }

    #[test]
    fn kronecker_layout() {
        let a = m(&[&[1, 2], &[3, 4]]);
        let b = m(&[&[0, 1], &[1, 0]]);
        assert_eq!(
            a.kron(&b).unwrap(),
            m(&[&[0, 1, 0, 2], &[1, 0, 2, 0], &[0, 3, 0, 4], &[3, 0, 4, 0]])
        );
        assert_eq!(a.kron(&IntMatrix::new(vec![]).unwrap()).unwrap().n_rows(), 0);
    }

    #[test]
    fn overflow_is_an_error() {
        let big = m(&[&[i64::MAX]]);
        assert_eq!(big.checked_mul(&m(&[&[2]])), Err(MatrixError::Overflow));
        assert_eq!(big.kron(&m(&[&[2]])), Err(MatrixError::Overflow));
    }

    #[test]
    fn unimodular_inverse() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let inv = a.inverse_unimodular().unwrap();
        assert_eq!(inv, m(&[&[1, -1], &[-1, 2]]));
        assert!(matches!(
            m(&[&[2, 0], &[0, 1]]).inverse_unimodular(),
            Err(MatrixError::NotUnimodular(_))
        ));
    }

    #[test]
    fn smith_forms() {
        assert_eq!(m(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]).smith_diagonal(), bigs(&[2, 6, 12]));
        assert_eq!(m(&[&[0, 0], &[0, 0]]).smith_diagonal(), bigs(&[0, 0]));
        assert_eq!(m(&[&[2, 0], &[0, 3]]).smith_diagonal(), bigs(&[1, 6]));
        assert_eq!(m(&[&[-1, 0], &[1, -1]]).smith_diagonal(), bigs(&[1, 1]));
    }

    #[test]
    fn signatures() {
        assert_eq!(m(&[&[0, -2], &[-2, 4]]).symmetric_signature().unwrap(), (0, 2));
        assert_eq!(m(&[&[2]]).symmetric_signature().unwrap(), (1, 1));
        assert_eq!(m(&[&[0, 1], &[1, 0]]).symmetric_signature().unwrap(), (0, 2));
        assert_eq!(m(&[&[1, 1], &[1, 1]]).symmetric_signature().unwrap(), (1, 1));
        assert_eq!(IntMatrix::diagonal(&[-1, -3, 0]).symmetric_signature().unwrap(), (-2, 2));
        assert!(m(&[&[0, 1], &[0, 0]]).symmetric_signature().is_err());
    }

    #[test]
    fn pencil_determinant() {
        let l = m(&[&[-1, 0], &[1, -1]]);
        let minus_lt = l.transpose().checked_scale(-1).unwrap();
        assert_eq!(poly_det(&minus_lt, &l).unwrap(), IntPolynomial::from_i64(&[1, -1, 1]));
    }

    #[test]
    fn json_round_trip() {
        let a = m(&[&[1, -2], &[3, 4]]);
        assert_eq!(IntMatrix::from_json(&a.to_json()).unwrap(), a);
        assert_eq!(IntMatrix::from_json(&serde_json::json!([])).unwrap().n_rows(), 0);
        assert!(IntMatrix::from_json(&serde_json::json!([[1], [2, 3]])).is_err());
        assert!(IntMatrix::from_json(&serde_json::json!([["a"]])).is_err());
    }

    fn small_matrix(n: usize) -> impl Strategy<Value = IntMatrix> {
        prop::collection::vec(-4i64..=4, n * n).prop_map(move |d| IntMatrix::from_fn(n, n, |i, j| d[i * n + j]))
    }

    proptest! {
        #[test]
        fn det_is_multiplicative(a in small_matrix(3), b in small_matrix(3)) {
            let ab = a.checked_mul(&b).unwrap();
            prop_assert_eq!(ab.det().unwrap(), a.det().unwrap() * b.det().unwrap());
        }

        #[test]
        fn smith_product_is_abs_det(a in small_matrix(3)) {
            let d: BigInt = a.smith_diagonal().iter().product();
            prop_assert_eq!(d, a.det().unwrap().abs());
            let diag = a.smith_diagonal();
            for w in diag.windows(2) {
                prop_assert!(w[1].is_zero() || (!w[0].is_zero() && w[1].is_multiple_of(&w[0])));
            }
        }

        #[test]
        fn pencil_matches_pointwise_det(a in small_matrix(3), b in small_matrix(3), t in -5i64..=5) {
            let p = poly_det(&a, &b).unwrap();
            let at = a.checked_add(&b.checked_scale(t).unwrap()).unwrap();
            prop_assert_eq!(p.eval(&BigInt::from(t)), at.det().unwrap());
        }
    }
}
