//! Crate-wide error with stable machine-readable codes.

use thiserror::Error;

use crate::enhanced::EnhancedError;
use crate::matrix::MatrixError;
use crate::newton::NewtonError;
use crate::polyparse::PolyError;
use crate::seifert::SeifertError;
use crate::winding::WindingError;
use crate::zeta::ZetaError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Newton(#[from] NewtonError),
    #[error(transparent)]
    Winding(#[from] WindingError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Seifert(#[from] SeifertError),
    #[error(transparent)]
    Zeta(#[from] ZetaError),
    #[error(transparent)]
    Enhanced(#[from] EnhancedError),
}

impl Error {
    /// Stable identifier of the failure, e.g. `"poly.syntax"`.
    pub fn code(&self) -> &'static str {
        match self {
            Self::Poly(e) => poly_code(e),
            Self::Newton(e) => match e {
                NewtonError::ZeroPolynomial => "newton.zero_polynomial",
                NewtonError::FaceMismatch => "newton.face_mismatch",
                NewtonError::InvalidBudget(_) => "newton.invalid_budget",
                NewtonError::Poly(p) => poly_code(p),
            },
            Self::Winding(e) => match e {
                WindingError::ZeroPolynomial => "winding.zero_polynomial",
                WindingError::NotOneVariable(_) => "winding.not_one_variable",
                WindingError::InvalidRadius(_) => "winding.invalid_radius",
                WindingError::InvalidSamples => "winding.invalid_samples",
                WindingError::NearZeroOnCircle { .. } => "winding.near_zero_on_circle",
                WindingError::InsufficientSamples { .. } => "winding.insufficient_samples",
            },
            Self::Matrix(e) => matrix_code(e),
            Self::Seifert(e) => match e {
                SeifertError::NotUnimodular(_) => "seifert.not_unimodular",
                SeifertError::ZeroIndex => "seifert.zero_index",
                SeifertError::InvalidExponent(_) => "seifert.invalid_exponent",
                SeifertError::NoExponents => "seifert.no_exponents",
                SeifertError::InvalidEps(_) => "seifert.invalid_eps",
                SeifertError::BorderLength { .. } => "seifert.border_length",
                SeifertError::Matrix(m) => matrix_code(m),
            },
            Self::Zeta(e) => match e {
                ZetaError::ZeroRoot(_) => "zeta.zero_root",
                ZetaError::ZeroPolynomial => "zeta.zero_polynomial",
            },
            Self::Enhanced(e) => match e {
                EnhancedError::InvalidLambda(_) => "enhanced.invalid_lambda",
                EnhancedError::NoExponents => "enhanced.no_exponents",
                EnhancedError::InvalidExponent(_) => "enhanced.invalid_exponent",
                EnhancedError::InvalidEll(_) => "enhanced.invalid_ell",
                EnhancedError::InvalidK(_) => "enhanced.invalid_k",
                EnhancedError::Overflow => "enhanced.overflow",
                EnhancedError::Poly(p) => poly_code(p),
            },
        }
    }
}

fn poly_code(e: &PolyError) -> &'static str {
    match e {
        PolyError::Syntax { .. } => "poly.syntax",
        PolyError::VariableIndex { .. } | PolyError::IndexOutOfRange { .. } => "poly.variable_index",
        PolyError::NonIntegerExponent { .. } => "poly.non_integer_exponent",
        PolyError::DimensionMismatch { .. } => "poly.dimension_mismatch",
        PolyError::ExponentOverflow => "poly.exponent_overflow",
        PolyError::NonFinitePoint => "poly.non_finite_point",
        PolyError::Json(_) => "poly.json",
    }
}

fn matrix_code(e: &MatrixError) -> &'static str {
    match e {
        MatrixError::Ragged => "matrix.ragged",
        MatrixError::NotSquare { .. } => "matrix.not_square",
        MatrixError::Shape(_) => "matrix.shape",
        MatrixError::Overflow => "matrix.overflow",
        MatrixError::NotUnimodular(_) => "matrix.not_unimodular",
        MatrixError::Json => "matrix.json",
    }
}
