//! Integer Seifert forms of fibered links: Λ matrices, signed tensor
//! products for joins, Hopf-band extensions, congruence invariants and
//! monodromy characteristic polynomials.

mod congruence;

use num::{BigInt, One, Signed};
use serde_json::{json, Value};
use thiserror::Error;

pub use crate::intpoly::IntPolynomial;
use crate::matrix::{poly_det, IntMatrix, MatrixError};
pub use congruence::{check_congruent, CongruenceStatus, CongruenceVerdict, SeparatingInvariant, MAX_STATES};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeifertError {
    #[error("Seifert form must be unimodular, det = {0}")]
    NotUnimodular(BigInt),
    #[error("lambda_matrix is undefined for m = 0")]
    ZeroIndex,
    #[error("Brieskorn exponent {0} must satisfy |m| >= 2")]
    InvalidExponent(i64),
    #[error("at least one Brieskorn exponent is required")]
    NoExponents,
    #[error("extension sign must be +1 or -1, got {0}")]
    InvalidEps(i64),
    #[error("border vector has length {found}, form has rank {expected}")]
    BorderLength { expected: usize, found: usize },
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// A square integer bilinear form, optionally tagged with the dimension
/// parameter `k` of the ambient sphere `S^{2k+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SeifertForm {
    entries: IntMatrix,
    k: Option<u32>,
    relaxed: bool,
}

impl SeifertForm {
    /// Checks squareness and `|det| = 1`.
    pub fn new(entries: IntMatrix) -> Result<Self, SeifertError> {
        let det = entries.det()?;
        if !det.abs().is_one() {
            return Err(SeifertError::NotUnimodular(det));
        }
        Ok(Self {
            entries,
            k: None,
            relaxed: false,
        })
    }

    /// Accepts any square matrix; the result is flagged as relaxed.
    pub fn relaxed(entries: IntMatrix) -> Result<Self, SeifertError> {
        if !entries.is_square() {
            return Err(MatrixError::NotSquare {
                rows: entries.n_rows(),
                cols: entries.n_cols(),
            }
            .into());
        }
        Ok(Self {
            entries,
            k: None,
            relaxed: true,
        })
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self, SeifertError> {
        Self::new(IntMatrix::new(rows)?)
    }

    pub fn with_k(mut self, k: u32) -> Self {
        self.k = Some(k);
        self
    }

    pub fn entries(&self) -> &IntMatrix {
        &self.entries
    }

    pub fn rank(&self) -> usize {
        self.entries.n_rows()
    }

    pub fn k(&self) -> Option<u32> {
        self.k
    }

    pub fn is_relaxed(&self) -> bool {
        self.relaxed
    }

    fn require_unimodular(&self) -> Result<(), SeifertError> {
        let det = self.entries.det()?;
        if det.abs().is_one() {
            Ok(())
        } else {
            Err(SeifertError::NotUnimodular(det))
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "entries": self.entries.to_json(),
            "rank": self.rank(),
            "k": self.k,
            "relaxed": self.relaxed,
        })
    }
}

/// `Λ'_m`: size `|m| − 1`, ones on the diagonal and −1 on the subdiagonal
/// for `m > 0`, the transpose for `m < 0`. `|m| = 1` gives the 0×0 form.
pub fn lambda_matrix(m: i64) -> Result<SeifertForm, SeifertError> {
    if m == 0 {
        return Err(SeifertError::ZeroIndex);
    }
    let size = (m.unsigned_abs() - 1) as usize;
    let lower = IntMatrix::from_fn(size, size, |i, j| match i as i64 - j as i64 {
        0 => 1,
        1 => -1,
        _ => 0,
    });
    let entries = if m > 0 { lower } else { lower.transpose() };
    SeifertForm::new(entries)
}

fn sign(exponent: u64) -> i64 {
    if exponent.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Seifert form of a join: `(−1)^{nm} L1 ⊗ L2` where `n`, `m` are the
/// variable counts of the two factors.
pub fn join_tensor(l1: &SeifertForm, n: u32, l2: &SeifertForm, m: u32) -> Result<SeifertForm, SeifertError> {
    l1.require_unimodular()?;
    l2.require_unimodular()?;
    let entries = l1
        .entries
        .kron(&l2.entries)?
        .checked_scale(sign(u64::from(n) * u64::from(m)))?;
    let mut out = SeifertForm::new(entries)?;
    if let (Some(k1), Some(k2)) = (l1.k, l2.k) {
        out.k = Some(k1 + k2 + 1);
    }
    Ok(out)
}

/// `(−1)^{n(n+1)/2} Λ'_{m_1} ⊗ ⋯ ⊗ Λ'_{m_n}` for `Σ z_j^{m_j}`.
pub fn brieskorn_form(exponents: &[i64]) -> Result<SeifertForm, SeifertError> {
    if exponents.is_empty() {
        return Err(SeifertError::NoExponents);
    }
    if let Some(&bad) = exponents.iter().find(|m| m.unsigned_abs() < 2) {
        return Err(SeifertError::InvalidExponent(bad));
    }
    let mut acc = IntMatrix::identity(1);
    for &m in exponents {
        acc = acc.kron(lambda_matrix(m)?.entries())?;
    }
    let n = exponents.len() as u64;
    let entries = acc.checked_scale(sign(n * (n + 1) / 2))?;
    Ok(SeifertForm::new(entries)?.with_k(n as u32 - 1))
}

/// The 1×1 form `((−1)^{m(m−1)/2})` attached to `Σ_{j=1}^m w_j²`.
///
/// This sign convention differs from [`brieskorn_form`] applied to
/// `(2, …, 2)` by an index shift; both are kept as stated.
pub fn sum_of_squares_form(m: u32) -> SeifertForm {
    let m64 = u64::from(m);
    let s = sign(m64 * m64.saturating_sub(1) / 2);
    SeifertForm::new(IntMatrix::diagonal(&[s]))
        .expect("±1 is unimodular")
        .with_k(m.saturating_sub(1))
}

/// Bordered matrix `[[L, 0], [b, eps]]`.
pub fn extend(l: &SeifertForm, b: &[i64], eps: i64) -> Result<SeifertForm, SeifertError> {
    if eps.abs() != 1 {
        return Err(SeifertError::InvalidEps(eps));
    }
    let r = l.rank();
    if b.len() != r {
        return Err(SeifertError::BorderLength {
            expected: r,
            found: b.len(),
        });
    }
    let entries = IntMatrix::from_fn(r + 1, r + 1, |i, j| match (i == r, j == r) {
        (false, false) => l.entries.get(i, j),
        (false, true) => 0,
        (true, false) => b[j],
        (true, true) => eps,
    });
    Ok(SeifertForm {
        entries,
        k: l.k,
        relaxed: l.relaxed,
    })
}

/// Quantities preserved by `L ↦ U L Uᵀ` for unimodular `U`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceInvariants {
    pub rank: usize,
    pub det: BigInt,
    pub smith: Vec<BigInt>,
    /// Signature of `L + Lᵀ`.
    pub signature: i64,
    /// Rank of `L + Lᵀ`.
    pub symmetric_rank: usize,
    /// `det(tL − Lᵀ)`, primitive with positive leading coefficient.
    pub alexander: IntPolynomial,
}

impl CongruenceInvariants {
    /// Named values in a fixed order, used to report which one separates.
    pub fn named(&self) -> Vec<(&'static str, String)> {
        let list = |v: &[BigInt]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
        vec![
            ("rank", self.rank.to_string()),
            ("det", self.det.to_string()),
            ("smith", list(&self.smith)),
            ("signature", self.signature.to_string()),
            ("symmetric_rank", self.symmetric_rank.to_string()),
            ("alexander", self.alexander.to_string()),
        ]
    }

    pub fn to_json(&self) -> Value {
        json!({
            "rank": self.rank,
            "det": self.det.to_string(),
            "smith": self.smith.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "signature": self.signature,
            "symmetric_rank": self.symmetric_rank,
            "alexander": self.alexander.to_json(),
            "alexander_text": self.alexander.to_string(),
        })
    }
}

pub fn congruence_invariants(l: &SeifertForm) -> Result<CongruenceInvariants, SeifertError> {
    let a = &l.entries;
    let at = a.transpose();
    let sym = a.checked_add(&at)?;
    let (signature, symmetric_rank) = sym.symmetric_signature()?;
    let alexander = poly_det(&at.checked_scale(-1)?, a)?.primitive_positive();
    Ok(CongruenceInvariants {
        rank: l.rank(),
        det: a.det()?,
        smith: a.smith_diagonal(),
        signature,
        symmetric_rank,
        alexander,
    })
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum MonodromyConvention {
    /// `H = L⁻¹ Lᵀ`.
    #[default]
    InverseTimesTranspose,
    /// `H = Lᵀ L⁻¹`, conjugate to the default.
    TransposeTimesInverse,
}

pub fn monodromy_matrix(l: &SeifertForm, convention: MonodromyConvention) -> Result<IntMatrix, SeifertError> {
    l.require_unimodular()?;
    let inv = l.entries.inverse_unimodular()?;
    let t = l.entries.transpose();
    Ok(match convention {
        MonodromyConvention::InverseTimesTranspose => inv.checked_mul(&t)?,
        MonodromyConvention::TransposeTimesInverse => t.checked_mul(&inv)?,
    })
}

/// `det(I − tH)` with `H = L⁻¹Lᵀ`, computed as `det(L − tLᵀ) / det L`.
/// Either convention gives the same polynomial.
pub fn monodromy_charpoly(l: &SeifertForm) -> Result<IntPolynomial, SeifertError> {
    l.require_unimodular()?;
    let det = l.entries.det()?;
    let pencil = poly_det(&l.entries, &l.entries.transpose().checked_scale(-1)?)?;
    Ok(pencil.scale(&det))
}
