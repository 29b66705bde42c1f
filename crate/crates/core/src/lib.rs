//! Exact invariants of mixed-polynomial singularities of join type.
//!
//! The modules follow the pipeline from a polynomial to its invariants:
//! [`polyparse`] reads mixed polynomials, [`newton`] builds Newton
//! boundaries and checks non-degeneracy, [`winding`] computes mapping
//! degrees of one-variable factors, [`seifert`] manipulates Seifert forms,
//! [`zeta`] handles zeta-function divisors and their join, and
//! [`enhanced`] tracks enhanced Milnor numbers.

// Dense linear algebra reads more clearly with explicit indices.
#![allow(clippy::needless_range_loop)]

pub mod enhanced;
mod error;
pub mod intpoly;
pub mod matrix;
pub mod newton;
pub mod polyparse;
pub(crate) mod resultant;
pub mod seifert;
pub mod winding;
pub mod zeta;

pub use enhanced::{EnhancedMilnor, JoinWitness, Recipe};
pub use error::Error;
pub use intpoly::IntPolynomial;
pub use matrix::IntMatrix;
pub use newton::{NewtonPolytope, NondegeneracyReport, SamplingBudget, Verdict};
pub use polyparse::{parse, ComplexPoint, GaussianRational, MixedMonomial, MixedPolynomial};
pub use seifert::{CongruenceVerdict, SeifertForm};
pub use winding::DegreeResult;
pub use zeta::{Divisor, ZetaFunction};

pub type Result<T, E = Error> = std::result::Result<T, E>;
