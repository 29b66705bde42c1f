//! Mapping degree of `f/|f|` on a small circle, for one-variable mixed
//! polynomials.

use num::complex::Complex64;
use std::f64::consts::{FRAC_PI_2, TAU};
use thiserror::Error;

use crate::polyparse::MixedPolynomial;

/// Hard cap on function evaluations per circle.
pub const MAX_SAMPLES: usize = 1 << 20;
pub const DEFAULT_EPS: f64 = 1e-2;
pub const DEFAULT_SAMPLES: usize = 256;
const MAX_HALVINGS: usize = 6;
const ZERO_THRESHOLD: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WindingError {
    #[error("polynomial is identically zero")]
    ZeroPolynomial,
    #[error("mapping degree needs a one-variable polynomial, got n = {0}")]
    NotOneVariable(usize),
    #[error("radius must be a positive finite number, got {0}")]
    InvalidRadius(f64),
    #[error("at least one initial sample is required")]
    InvalidSamples,
    #[error("|f| is numerically zero on the circle of radius {radius} at angle {theta}")]
    NearZeroOnCircle { radius: f64, theta: f64 },
    #[error("argument tracking exceeded {cap} samples")]
    InsufficientSamples { cap: usize },
}

#[derive(Clone, Debug, PartialEq)]
pub struct DegreeResult {
    pub degree: i64,
    pub radius_used: f64,
    /// Evaluations spent on the circle of radius `radius_used`.
    pub samples: usize,
    /// Whether the degree at `radius_used / 2` agrees.
    pub stable: bool,
}

/// `(c, ν + μ, ν − μ)` for each term; on `z = r e^{iθ}` a term is
/// `c · r^{ν+μ} · e^{i(ν−μ)θ}`.
struct CircleTerms(Vec<(Complex64, i32, i32)>);

impl CircleTerms {
    fn new(f: &MixedPolynomial) -> Self {
        Self(
            f.terms()
                .iter()
                .map(|(m, c)| (c.to_complex(), (m.nu[0] + m.mu[0]) as i32, m.nu[0] as i32 - m.mu[0] as i32))
                .collect(),
        )
    }

    fn eval(&self, r: f64, theta: f64) -> Complex64 {
        self.0
            .iter()
            .map(|&(c, radial, angular)| c * r.powi(radial) * Complex64::from_polar(1.0, angular as f64 * theta))
            .sum()
    }

    /// Largest `|ν − μ|`; the initial grid resolves this frequency.
    fn max_frequency(&self) -> usize {
        self.0.iter().map(|&(_, _, angular)| angular.unsigned_abs() as usize).max().unwrap_or(0)
    }

    fn threshold(&self, r: f64) -> f64 {
        ZERO_THRESHOLD * self.0.iter().map(|&(c, radial, _)| c.norm() * r.powi(radial)).sum::<f64>()
    }
}

fn winding_on_circle(terms: &CircleTerms, r: f64, samples: usize) -> Result<(i64, usize), WindingError> {
    let threshold = terms.threshold(r);
    let eval = |theta: f64| -> Result<Complex64, WindingError> {
        let v = terms.eval(r, theta);
        let norm = v.norm();
        if norm.is_nan() || norm < threshold {
            return Err(WindingError::NearZeroOnCircle { radius: r, theta });
        }
        Ok(v)
    };
    let samples = samples.max(8 * terms.max_frequency() + 8);
    if samples > MAX_SAMPLES {
        return Err(WindingError::InsufficientSamples { cap: MAX_SAMPLES });
    }
    let mut values = Vec::with_capacity(samples);
    for k in 0..samples {
        let theta = TAU * k as f64 / samples as f64;
        values.push((theta, eval(theta)?));
    }
    let mut used = samples;
    let mut total = 0.0;
    let mut stack = Vec::new();
    for k in 0..samples {
        let (ta, fa) = values[k];
        let (tb, fb) = if k + 1 < samples {
            values[k + 1]
        } else {
            (TAU, values[0].1)
        };
        stack.push((ta, fa, tb, fb));
        while let Some((ta, fa, tb, fb)) = stack.pop() {
            let step = (fb * fa.conj()).arg();
            if step.abs() < FRAC_PI_2 {
                total += step;
                continue;
            }
            if used >= MAX_SAMPLES {
                return Err(WindingError::InsufficientSamples { cap: MAX_SAMPLES });
            }
            let tm = 0.5 * (ta + tb);
            let fm = eval(tm)?;
            used += 1;
            stack.push((tm, fm, tb, fb));
            stack.push((ta, fa, tm, fm));
        }
    }
    Ok(((total / TAU).round() as i64, used))
}

fn prepare(f: &MixedPolynomial, eps: f64, samples: usize) -> Result<CircleTerms, WindingError> {
    if f.n() != 1 {
        return Err(WindingError::NotOneVariable(f.n()));
    }
    if f.is_zero() {
        return Err(WindingError::ZeroPolynomial);
    }
    if !(eps.is_finite() && eps > 0.0) {
        return Err(WindingError::InvalidRadius(eps));
    }
    if samples == 0 {
        return Err(WindingError::InvalidSamples);
    }
    Ok(CircleTerms::new(f))
}

/// Degree of `f/|f|` on `|z| = eps`, starting from at least `samples`
/// equally spaced angles (raised to `8·max|ν−μ| + 8` so no single term
/// aliases) and bisecting until every step turns by less than π/2.
///
/// The zero test is `|f| < 1e-12 · Σ |c| eps^{ν+μ}`, i.e. relative to the
/// size of the terms on that circle.
pub fn mapping_degree(f: &MixedPolynomial, eps: f64, samples: usize) -> Result<DegreeResult, WindingError> {
    let terms = prepare(f, eps, samples)?;
    let (degree, used) = winding_on_circle(&terms, eps, samples)?;
    let stable = matches!(winding_on_circle(&terms, eps / 2.0, samples), Ok((d, _)) if d == degree);
    Ok(DegreeResult {
        degree,
        radius_used: eps,
        samples: used,
        stable,
    })
}

/// Like [`mapping_degree`], halving `eps` up to six times while the circle
/// passes numerically through a zero.
pub fn mapping_degree_adaptive(f: &MixedPolynomial, eps: f64, samples: usize) -> Result<DegreeResult, WindingError> {
    let mut r = eps;
    for _ in 0..MAX_HALVINGS {
        match mapping_degree(f, r, samples) {
            Err(WindingError::NearZeroOnCircle { .. }) => r /= 2.0,
            other => return other,
        }
    }
    mapping_degree(f, r, samples)
}
