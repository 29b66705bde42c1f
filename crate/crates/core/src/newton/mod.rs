//! Newton polytopes `Γ₊(P)` of mixed polynomials, their compact faces, face
//! functions, convenience, and strong non-degeneracy checks.
//!
//! `Γ₊(P)` is the convex hull of `⋃ (ν+μ) + ℝⁿ₊` over the terms of `P`. All
//! geometry is exact: vertex and face membership are decided by rational
//! linear programs in [`lp`].

mod lp;
mod nondegeneracy;

use std::collections::{BTreeSet, HashSet};

use num::{BigInt, BigRational, Integer, One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::polyparse::{MixedPolynomial, PolyError};

pub use nondegeneracy::{
    check_strong_nondegeneracy, criticality_residual, real_jacobian, BudgetUsed, CheckMethod,
    NondegeneracyReport, SamplingBudget, SurjectivityProbe, Verdict, Witness,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NewtonError {
    #[error("the zero polynomial has no Newton polytope")]
    ZeroPolynomial,
    #[error("face does not belong to the Newton polytope of this polynomial")]
    FaceMismatch,
    #[error("invalid sampling budget: {0}")]
    InvalidBudget(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

pub type LatticePoint = Vec<u64>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NewtonPolytope {
    n: usize,
    generators: Vec<LatticePoint>,
    vertices: Vec<LatticePoint>,
}

/// A compact face of `Γ₊`, cut out by a strictly positive primitive normal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Face {
    pub normal: Vec<u64>,
    /// Minimum of `⟨normal, ·⟩` over `Γ₊`.
    pub value: u64,
    /// Generators attaining the minimum, sorted.
    pub points: Vec<LatticePoint>,
    pub dim: usize,
}

fn q(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn qu(v: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

impl NewtonPolytope {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Distinct radial exponents, sorted.
    pub fn generators(&self) -> &[LatticePoint] {
        &self.generators
    }

    /// Minimal generators that are extreme points of `Γ₊`, sorted.
    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    /// Whether `point ∈ conv(vertices) + ℝⁿ₊`.
    pub fn contains(&self, point: &[u64]) -> bool {
        point.len() == self.n && dominates_hull(point, &self.vertices)
    }

    /// Enumerates all faces with strictly positive normals, ordered by
    /// dimension and then by point set.
    pub fn compact_faces(&self) -> Vec<Face> {
        let nv = self.vertices.len();
        let mut seen: HashSet<BTreeSet<usize>> = HashSet::new();
        let mut queue: Vec<BTreeSet<usize>> = Vec::new();
        for i in 0..nv {
            let s: BTreeSet<usize> = [i].into();
            if seen.insert(s.clone()) {
                queue.push(s);
            }
        }
        let mut idx = 0;
        while idx < queue.len() {
            let face = queue[idx].clone();
            idx += 1;
            for u in 0..nv {
                if face.contains(&u) {
                    continue;
                }
                let mut grown = face.clone();
                grown.insert(u);
                if let Some(closed) = self.closure(&grown) {
                    if seen.insert(closed.clone()) {
                        queue.push(closed);
                    }
                }
            }
        }
        let mut faces: Vec<Face> = queue.iter().map(|s| self.face_from_vertices(s)).collect();
        faces.sort_by(|a, b| a.dim.cmp(&b.dim).then_with(|| a.points.cmp(&b.points)));
        faces
    }

    /// Builds the linear system `w = 1 + x (x ≥ 0)`, equality of
    /// `⟨w, ·⟩` on `support`, and `⟨w, u − s₀⟩ ≥ slack(u)` off it.
    fn support_system(
        &self,
        support: &BTreeSet<usize>,
        slack: &dyn Fn(usize) -> i64,
    ) -> (Vec<Vec<BigRational>>, Vec<BigRational>, usize) {
        let n = self.n;
        let s0 = &self.vertices[*support.iter().next().expect("non-empty support")];
        let others: Vec<usize> = (0..self.vertices.len()).filter(|u| !support.contains(u)).collect();
        let cols = n + others.len();
        let mut a = Vec::new();
        let mut b = Vec::new();
        let diff = |v: &LatticePoint| -> Vec<i64> {
            v.iter().zip(s0).map(|(&x, &y)| x as i64 - y as i64).collect()
        };
        for &v in support.iter().skip(1) {
            let d = diff(&self.vertices[v]);
            let mut row: Vec<BigRational> = d.iter().map(|&x| q(x)).collect();
            row.resize(cols, BigRational::zero());
            a.push(row);
            b.push(q(-d.iter().sum::<i64>()));
        }
        for (k, &u) in others.iter().enumerate() {
            let d = diff(&self.vertices[u]);
            let mut row: Vec<BigRational> = d.iter().map(|&x| q(x)).collect();
            row.resize(cols, BigRational::zero());
            row[n + k] = q(-1);
            a.push(row);
            b.push(q(slack(u) - d.iter().sum::<i64>()));
        }
        (a, b, cols)
    }

    /// Smallest compact face containing the vertex set, if any.
    fn closure(&self, support: &BTreeSet<usize>) -> Option<BTreeSet<usize>> {
        let (a, b, _) = self.support_system(support, &|_| 0);
        lp::feasible(&a, &b)?;
        let mut closed = support.clone();
        for u in 0..self.vertices.len() {
            if support.contains(&u) {
                continue;
            }
            let (a, b, _) = self.support_system(support, &|v| i64::from(v == u));
            if lp::feasible(&a, &b).is_none() {
                closed.insert(u);
            }
        }
        Some(closed)
    }

    fn face_from_vertices(&self, support: &BTreeSet<usize>) -> Face {
        let n = self.n;
        let (a, b, cols) = self.support_system(support, &|_| 1);
        let mut cost = vec![BigRational::zero(); cols];
        for c in cost.iter_mut().take(n) {
            *c = BigRational::one();
        }
        let x = match lp::solve(&a, &b, &cost) {
            lp::LpOutcome::Optimal(x) => x,
            other => unreachable!("closed vertex set must have a strict normal, got {other:?}"),
        };
        let w: Vec<BigRational> = x[..n].iter().map(|xi| xi + BigRational::one()).collect();
        let normal = primitive_integer_vector(&w);
        let weight = |p: &LatticePoint| -> u64 { p.iter().zip(&normal).map(|(a, b)| a * b).sum() };
        let value = weight(&self.vertices[*support.iter().next().expect("non-empty")]);
        let points: Vec<LatticePoint> = self
            .generators
            .iter()
            .filter(|g| weight(g) == value)
            .cloned()
            .collect();
        let dim = affine_dimension(&points);
        Face {
            normal,
            value,
            points,
            dim,
        }
    }
}

fn primitive_integer_vector(w: &[BigRational]) -> Vec<u64> {
    let lcm = w
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = w.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    ints.iter()
        .map(|x| {
            let v = x / &g;
            u64::try_from(v).expect("face normals are small positive integers")
        })
        .collect()
}

/// Rank of the affine span of `points`, by exact elimination.
pub(crate) fn affine_dimension(points: &[LatticePoint]) -> usize {
    let Some(p0) = points.first() else {
        return 0;
    };
    let mut rows: Vec<Vec<BigRational>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(p0).map(|(&a, &b)| q(a as i64 - b as i64)).collect())
        .collect();
    rank(&mut rows)
}

fn rank(rows: &mut [Vec<BigRational>]) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = &rows[i][c] / &rows[r][c];
                let pivot = rows[r].clone();
                for (v, pv) in rows[i].iter_mut().zip(&pivot) {
                    *v = &*v - &(&f * pv);
                }
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

/// Is `point ∈ conv(hull) + ℝⁿ₊`? Decided by LP feasibility of
/// `Σ λ_h h + s = point, Σ λ = 1, λ, s ≥ 0`.
fn dominates_hull(point: &[u64], hull: &[LatticePoint]) -> bool {
    if hull.is_empty() {
        return false;
    }
    if hull.iter().any(|h| h.iter().zip(point).all(|(a, b)| a <= b)) {
        return true;
    }
    let n = point.len();
    let k = hull.len();
    let mut a = Vec::with_capacity(n + 1);
    for j in 0..n {
        let mut row: Vec<BigRational> = hull.iter().map(|h| qu(h[j])).collect();
        row.extend((0..n).map(|i| if i == j { q(1) } else { q(0) }));
        a.push(row);
    }
    let mut sum_row = vec![q(1); k];
    sum_row.extend((0..n).map(|_| q(0)));
    a.push(sum_row);
    let mut b: Vec<BigRational> = point.iter().map(|&p| qu(p)).collect();
    b.push(q(1));
    lp::feasible(&a, &b).is_some()
}

/// The Newton polytope of a nonzero mixed polynomial.
pub fn newton_polytope(p: &MixedPolynomial) -> Result<NewtonPolytope, NewtonError> {
    if p.is_zero() {
        return Err(NewtonError::ZeroPolynomial);
    }
    let generators: Vec<LatticePoint> = p
        .terms()
        .keys()
        .map(|m| m.radial())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let vertices = generators
        .iter()
        .enumerate()
        .filter(|(i, g)| {
            let others: Vec<LatticePoint> = generators
                .iter()
                .enumerate()
                .filter(|(j, _)| j != i)
                .map(|(_, h)| h.clone())
                .collect();
            !dominates_hull(g, &others)
        })
        .map(|(_, g)| g.clone())
        .collect();
    Ok(NewtonPolytope {
        n: p.n(),
        generators,
        vertices,
    })
}

pub fn compact_faces(np: &NewtonPolytope) -> Vec<Face> {
    np.compact_faces()
}

/// Restriction of `p` to the terms whose radial exponent lies on `face`.
pub fn face_function(p: &MixedPolynomial, face: &Face) -> Result<MixedPolynomial, NewtonError> {
    let np = newton_polytope(p)?;
    if face.normal.len() != np.n || face.normal.contains(&0) {
        return Err(NewtonError::FaceMismatch);
    }
    let weight = |g: &[u64]| -> u64 { g.iter().zip(&face.normal).map(|(a, b)| a * b).sum() };
    let min = np.generators.iter().map(|g| weight(g)).min();
    let on_face: Vec<&LatticePoint> = np.generators.iter().filter(|g| weight(g) == face.value).collect();
    let matches = min == Some(face.value)
        && on_face.len() == face.points.len()
        && on_face.iter().zip(&face.points).all(|(a, b)| *a == b);
    if !matches {
        return Err(NewtonError::FaceMismatch);
    }
    let points: HashSet<&LatticePoint> = face.points.iter().collect();
    Ok(p.filter_terms(|m| points.contains(&m.radial())))
}

/// True iff for every axis `j` the restriction `p(0,…,z_j,…,0)` is not
/// identically zero.
pub fn is_convenient(p: &MixedPolynomial) -> bool {
    if p.is_zero() {
        return false;
    }
    (0..p.n()).all(|j| {
        p.terms().keys().any(|m| {
            m.radial()
                .iter()
                .enumerate()
                .all(|(i, &e)| i == j || e == 0)
        })
    })
}

impl Face {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "normal": self.normal,
            "points": self.points,
            "dim": self.dim,
        })
    }

    pub fn is_vertex(&self) -> bool {
        self.dim == 0
    }
}
