//! Strong non-degeneracy of face functions.
//!
//! A point `w ∈ (ℂ*)ⁿ` is critical for a mixed map `P` when the real 2×2n
//! Jacobian of `(Re P, Im P)` has rank < 2. Columns come from the Wirtinger
//! derivatives: `∂P/∂x_j = P_z + P_z̄` and `∂P/∂y_j = i(P_z − P_z̄)`.
//!
//! The search works in log-polar coordinates `z_j = e^{s_j + iθ_j}`, where
//! the columns become `z P_z + z̄ P_z̄` and `i(z P_z − z̄ P_z̄)`. This is a
//! change of basis on `(ℂ*)ⁿ`, so the rank is unchanged, and for a face
//! function (weighted homogeneous for the face normal) the log-polar
//! Jacobian scales uniformly along the weighted ℝ₊-orbit. The residual
//! `σ_min / ‖J‖_F` of that matrix is therefore invariant under the orbit
//! and under multiplying `P` by a nonzero constant.

use num::complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use super::{newton_polytope, Face, NewtonError};
use crate::polyparse::{ComplexPoint, Derivative, MixedPolynomial};

const LOG_CLAMP: f64 = 9.210_340_371_976_184; // ln(1e4)
const SURJECTIVITY_TARGETS: usize = 8;
const SURJECTIVITY_STARTS: usize = 8;

#[derive(Clone, Debug, PartialEq)]
pub struct SamplingBudget {
    /// Random starts per face.
    pub samples: usize,
    /// Descent iterations per start.
    pub iterations: usize,
    pub radius_min: f64,
    pub radius_max: f64,
    /// Residual below which a point counts as critical.
    pub tolerance: f64,
}

impl Default for SamplingBudget {
    fn default() -> Self {
        Self {
            samples: 256,
            iterations: 50,
            radius_min: 1e-2,
            radius_max: 1e1,
            tolerance: 1e-8,
        }
    }
}

impl SamplingBudget {
    fn validate(&self) -> Result<(), NewtonError> {
        if self.samples == 0 {
            return Err(NewtonError::InvalidBudget("samples must be positive".into()));
        }
        if self.iterations == 0 {
            return Err(NewtonError::InvalidBudget("iterations must be positive".into()));
        }
        let radii_ok = self.radius_min.is_finite()
            && self.radius_max.is_finite()
            && self.radius_min > 0.0
            && self.radius_min <= self.radius_max;
        if !radii_ok {
            return Err(NewtonError::InvalidBudget(format!(
                "radius range [{}, {}] is not a positive interval",
                self.radius_min, self.radius_max
            )));
        }
        if self.tolerance.is_nan() || self.tolerance <= 0.0 {
            return Err(NewtonError::InvalidBudget("tolerance must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    DegenerateWitness,
    /// Random search found no critical point. Not a proof.
    NoWitnessFound,
    ExactlyNondegenerate,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::DegenerateWitness => "DegenerateWitness",
            Verdict::NoWitnessFound => "NoWitnessFound",
            Verdict::ExactlyNondegenerate => "ExactlyNondegenerate",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckMethod {
    ExactMonomial,
    NumericSearch,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub point: ComplexPoint,
    pub residual: f64,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BudgetUsed {
    pub samples: usize,
    pub iterations: usize,
}

/// Advisory result of trying to hit target values with the face function.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SurjectivityProbe {
    pub targets: usize,
    pub reached: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct NondegeneracyReport {
    pub verdict: Verdict,
    pub method: CheckMethod,
    pub face: Face,
    pub witness: Option<Witness>,
    pub budget_used: BudgetUsed,
    pub surjectivity: Option<SurjectivityProbe>,
}

impl NondegeneracyReport {
    pub fn is_degenerate(&self) -> bool {
        self.verdict == Verdict::DegenerateWitness
    }

    pub fn to_json(&self) -> Value {
        let witness = self.witness.as_ref().map(|w| {
            json!({
                "point": w.point.coords().iter().map(|c| [c.re, c.im]).collect::<Vec<_>>(),
                "residual": w.residual,
            })
        });
        json!({
            "face": self.face.to_json(),
            "verdict": self.verdict.as_str(),
            "probabilistic": self.verdict == Verdict::NoWitnessFound,
            "method": match self.method {
                CheckMethod::ExactMonomial => "exact-monomial",
                CheckMethod::NumericSearch => "numeric-search",
            },
            "witness": witness,
            "budget_used": {"samples": self.budget_used.samples, "iterations": self.budget_used.iterations},
            "surjectivity": self.surjectivity.map(|s| json!({
                "advisory": true,
                "targets": s.targets,
                "reached": s.reached,
            })),
        })
    }
}

struct Gradient {
    poly: MixedPolynomial,
    holo: Vec<MixedPolynomial>,
    anti: Vec<MixedPolynomial>,
}

impl Gradient {
    fn new(p: &MixedPolynomial) -> Result<Self, NewtonError> {
        let n = p.n();
        let mut holo = Vec::with_capacity(n);
        let mut anti = Vec::with_capacity(n);
        for j in 1..=n {
            holo.push(p.wirtinger(Derivative::Holomorphic, j)?);
            anti.push(p.wirtinger(Derivative::Antiholomorphic, j)?);
        }
        Ok(Self {
            poly: p.clone(),
            holo,
            anti,
        })
    }

    fn n(&self) -> usize {
        self.holo.len()
    }

    /// Columns of the real Jacobian as complex numbers `(Re, Im)`:
    /// `∂/∂x_j` then `∂/∂y_j` for each j.
    fn cartesian_columns(&self, w: &[Complex64]) -> Vec<Complex64> {
        let i = Complex64::new(0.0, 1.0);
        let mut cols = Vec::with_capacity(2 * self.n());
        for j in 0..self.n() {
            let pz = self.holo[j].evaluate_unchecked(w);
            let pzb = self.anti[j].evaluate_unchecked(w);
            cols.push(pz + pzb);
            cols.push(i * (pz - pzb));
        }
        cols
    }

    /// Columns with respect to `(log r_j, θ_j)`.
    fn log_polar_columns(&self, w: &[Complex64]) -> Vec<Complex64> {
        let i = Complex64::new(0.0, 1.0);
        let mut cols = Vec::with_capacity(2 * self.n());
        for (j, &wj) in w.iter().enumerate() {
            let a = wj * self.holo[j].evaluate_unchecked(w);
            let b = wj.conj() * self.anti[j].evaluate_unchecked(w);
            cols.push(a + b);
            cols.push(i * (a - b));
        }
        cols
    }
}

/// Returns `(‖J‖_F², u)` where `u` is the left singular direction of the
/// smallest singular value of the 2×k matrix with the given columns.
fn minor_direction(cols: &[Complex64]) -> (f64, (f64, f64)) {
    let (mut a, mut b, mut c) = (0.0, 0.0, 0.0);
    for z in cols {
        a += z.re * z.re;
        b += z.re * z.im;
        c += z.im * z.im;
    }
    let phi = 0.5 * (2.0 * b).atan2(a - c) + std::f64::consts::FRAC_PI_2;
    (a + c, (phi.cos(), phi.sin()))
}

/// `σ_min / ‖J‖_F`, computed as a sum of squares so that it stays accurate
/// near zero.
fn normalized_residual(cols: &[Complex64]) -> f64 {
    let (frob2, (u0, u1)) = minor_direction(cols);
    if frob2 < f64::MIN_POSITIVE {
        return 0.0;
    }
    let s: f64 = cols.iter().map(|z| (u0 * z.re + u1 * z.im).powi(2)).sum();
    (s / frob2).sqrt()
}

fn point_from_log_polar(v: &[f64], n: usize) -> Vec<Complex64> {
    (0..n).map(|j| Complex64::from_polar(v[j].exp(), v[n + j])).collect()
}

/// The 2×2n real Jacobian of `(Re P, Im P)` at `point`, as two rows.
pub fn real_jacobian(
    p: &MixedPolynomial,
    point: &ComplexPoint,
) -> Result<[Vec<f64>; 2], NewtonError> {
    if point.n() != p.n() {
        return Err(crate::polyparse::PolyError::DimensionMismatch {
            expected: p.n(),
            found: point.n(),
        }
        .into());
    }
    let cols = Gradient::new(p)?.cartesian_columns(point.coords());
    Ok([
        cols.iter().map(|c| c.re).collect(),
        cols.iter().map(|c| c.im).collect(),
    ])
}

/// Scale-invariant criticality residual `σ_min / ‖J‖_F` of the log-polar
/// Jacobian at a point of `(ℂ*)ⁿ`. Zero exactly at critical points.
pub fn criticality_residual(p: &MixedPolynomial, point: &ComplexPoint) -> Result<f64, NewtonError> {
    if point.n() != p.n() {
        return Err(crate::polyparse::PolyError::DimensionMismatch {
            expected: p.n(),
            found: point.n(),
        }
        .into());
    }
    Ok(normalized_residual(&Gradient::new(p)?.log_polar_columns(point.coords())))
}

/// Levenberg–Marquardt with forward-difference Jacobians. Returns the final
/// point and the number of iterations spent.
fn levenberg_marquardt<F>(residuals: F, mut x: Vec<f64>, iterations: usize, stop: f64) -> (Vec<f64>, usize)
where
    F: Fn(&[f64]) -> Vec<f64>,
{
    let cost = |r: &[f64]| r.iter().map(|v| v * v).sum::<f64>();
    let clamp = |x: &mut [f64], n: usize| {
        for s in x.iter_mut().take(n) {
            *s = s.clamp(-LOG_CLAMP, LOG_CLAMP);
        }
    };
    let n_log = (x.len()) / 2;
    let mut r = residuals(&x);
    let mut current = cost(&r);
    let mut lambda = 1e-3;
    let mut used = 0;
    for _ in 0..iterations {
        if current.sqrt() < stop {
            break;
        }
        used += 1;
        let m = r.len();
        let k = x.len();
        let mut jac = vec![vec![0.0; k]; m];
        for c in 0..k {
            let h = 1e-7 * x[c].abs().max(1.0);
            let mut xh = x.clone();
            xh[c] += h;
            let rh = residuals(&xh);
            for row in 0..m {
                jac[row][c] = (rh[row] - r[row]) / h;
            }
        }
        let mut jtj = vec![vec![0.0; k]; k];
        let mut jtr = vec![0.0; k];
        for row in 0..m {
            for a in 0..k {
                jtr[a] += jac[row][a] * r[row];
                for b in 0..k {
                    jtj[a][b] += jac[row][a] * jac[row][b];
                }
            }
        }
        let mut improved = false;
        for _ in 0..10 {
            let mut sys = jtj.clone();
            for (a, row) in sys.iter_mut().enumerate() {
                row[a] += lambda * (row[a] + 1e-12);
            }
            let Some(step) = solve_dense(sys, jtr.iter().map(|v| -v).collect()) else {
                lambda *= 4.0;
                continue;
            };
            let mut trial: Vec<f64> = x.iter().zip(&step).map(|(a, b)| a + b).collect();
            clamp(&mut trial, n_log);
            let rt = residuals(&trial);
            let ct = cost(&rt);
            if ct.is_finite() && ct < current {
                x = trial;
                r = rt;
                current = ct;
                lambda = (lambda / 3.0).max(1e-15);
                improved = true;
                break;
            }
            lambda *= 4.0;
        }
        if !improved {
            break;
        }
    }
    (x, used)
}

fn solve_dense(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[pivot][col].abs() < 1e-300 {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            if f != 0.0 {
                for c in col..n {
                    a[row][c] -= f * a[col][c];
                }
                b[row] -= f * b[col];
            }
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let s: f64 = (row + 1..n).map(|c| a[row][c] * x[c]).sum();
        x[row] = (b[row] - s) / a[row][row];
    }
    x.iter().all(|v| v.is_finite()).then_some(x)
}

fn random_start(rng: &mut ChaCha8Rng, n: usize, budget: &SamplingBudget) -> Vec<f64> {
    let (lo, hi) = (budget.radius_min.ln(), budget.radius_max.ln());
    let mut v = Vec::with_capacity(2 * n);
    for _ in 0..n {
        v.push(if hi > lo { rng.gen_range(lo..hi) } else { lo });
    }
    for _ in 0..n {
        v.push(rng.gen_range(0.0..std::f64::consts::TAU));
    }
    v
}

fn search_critical_point(
    grad: &Gradient,
    budget: &SamplingBudget,
    rng: &mut ChaCha8Rng,
) -> (Option<Witness>, BudgetUsed) {
    let n = grad.n();
    let mut used = BudgetUsed::default();
    // Unknowns: s (n), θ (n), φ (1). Residual: projection of every column on
    // the unit direction (cos φ, sin φ), normalised by ‖J‖_F.
    let residuals = |v: &[f64]| -> Vec<f64> {
        let cols = grad.log_polar_columns(&point_from_log_polar(v, n));
        let frob: f64 = cols.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if frob < f64::MIN_POSITIVE {
            return vec![0.0; cols.len()];
        }
        let (c, s) = (v[2 * n].cos(), v[2 * n].sin());
        cols.iter().map(|z| (c * z.re + s * z.im) / frob).collect()
    };
    for _ in 0..budget.samples {
        used.samples += 1;
        let mut start = random_start(rng, n, budget);
        let (_, (u0, u1)) = minor_direction(&grad.log_polar_columns(&point_from_log_polar(&start, n)));
        start.push(u1.atan2(u0));
        let (x, iters) = levenberg_marquardt(residuals, start, budget.iterations, budget.tolerance * 1e-2);
        used.iterations += iters;
        let w = point_from_log_polar(&x, n);
        let residual = normalized_residual(&grad.log_polar_columns(&w));
        let interior = x[..n].iter().all(|s| s.abs() < LOG_CLAMP - 1.0);
        if residual < budget.tolerance && interior {
            let point = ComplexPoint::new(w).expect("finite by construction");
            return (Some(Witness { point, residual }), used);
        }
    }
    (None, used)
}

fn probe_surjectivity(grad: &Gradient, budget: &SamplingBudget, rng: &mut ChaCha8Rng) -> SurjectivityProbe {
    let n = grad.n();
    let mut reached = 0;
    for t in 0..SURJECTIVITY_TARGETS {
        let radius = if t < SURJECTIVITY_TARGETS / 2 { 1.0 } else { 10.0 };
        let angle = std::f64::consts::FRAC_PI_8 + (t % 4) as f64 * std::f64::consts::FRAC_PI_2;
        let target = Complex64::from_polar(radius, angle);
        let residuals = |v: &[f64]| -> Vec<f64> {
            let d = (grad.poly.evaluate_unchecked(&point_from_log_polar(v, n)) - target) / radius;
            vec![d.re, d.im]
        };
        for _ in 0..SURJECTIVITY_STARTS {
            let start = random_start(rng, n, budget);
            let (x, _) = levenberg_marquardt(residuals, start, budget.iterations * 2, 1e-10);
            let value = grad.poly.evaluate_unchecked(&point_from_log_polar(&x, n));
            if (value - target).norm() <= 1e-8 * radius {
                reached += 1;
                break;
            }
        }
    }
    SurjectivityProbe {
        targets: SURJECTIVITY_TARGETS,
        reached,
    }
}

fn check_face(
    p: &MixedPolynomial,
    face: Face,
    index: usize,
    budget: &SamplingBudget,
    seed: u64,
) -> Result<NondegeneracyReport, NewtonError> {
    let points: std::collections::HashSet<&Vec<u64>> = face.points.iter().collect();
    let face_fn = p.filter_terms(|m| points.contains(&m.radial()));
    let grad = Gradient::new(&face_fn)?;

    if face_fn.len() == 1 {
        // z^ν z̄^μ = r^{ν+μ} e^{i⟨ν−μ, θ⟩}: in log-polar coordinates the map
        // to log P is linear with rows (ν+μ, 0) and (0, ν−μ), so it is
        // critical everywhere iff ν = μ and nowhere otherwise.
        let mono = face_fn.terms().keys().next().expect("one term");
        let (verdict, witness) = if mono.nu == mono.mu {
            let ones = vec![Complex64::new(1.0, 0.0); p.n()];
            let residual = normalized_residual(&grad.log_polar_columns(&ones));
            let point = ComplexPoint::new(ones).expect("finite");
            (Verdict::DegenerateWitness, Some(Witness { point, residual }))
        } else {
            (Verdict::ExactlyNondegenerate, None)
        };
        return Ok(NondegeneracyReport {
            verdict,
            method: CheckMethod::ExactMonomial,
            face,
            witness,
            budget_used: BudgetUsed::default(),
            surjectivity: None,
        });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    let (witness, budget_used) = search_critical_point(&grad, budget, &mut rng);
    let surjectivity = (face.dim >= 1).then(|| probe_surjectivity(&grad, budget, &mut rng));
    Ok(NondegeneracyReport {
        verdict: if witness.is_some() {
            Verdict::DegenerateWitness
        } else {
            Verdict::NoWitnessFound
        },
        method: CheckMethod::NumericSearch,
        face,
        witness,
        budget_used,
        surjectivity,
    })
}

/// One report per compact face, in face-enumeration order. Faces are checked
/// in parallel; each face draws from its own deterministic random stream.
pub fn check_strong_nondegeneracy(
    p: &MixedPolynomial,
    budget: &SamplingBudget,
    seed: u64,
) -> Result<Vec<NondegeneracyReport>, NewtonError> {
    budget.validate()?;
    let faces = newton_polytope(p)?.compact_faces();
    faces
        .into_par_iter()
        .enumerate()
        .map(|(idx, face)| check_face(p, face, idx, budget, seed))
        .collect()
}
