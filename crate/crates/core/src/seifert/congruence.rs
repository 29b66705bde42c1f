//! Bounded search for integral congruences `U A Uᵀ = B`.
//!
//! Both sides are expanded breadth-first by elementary moves (row/column
//! swaps, sign changes and transvections with small coefficients) until the
//! two explored sets meet. Elementary moves are closed under inversion, so
//! the same move set serves both directions.

use std::collections::{HashMap, VecDeque};

use num::{One, Signed};
use serde_json::{json, Value};

use super::{congruence_invariants, SeifertError, SeifertForm};
use crate::matrix::IntMatrix;

/// Upper bound on stored matrices across both search directions.
pub const MAX_STATES: usize = 1_000_000;
const COEFF_RANGE: i64 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CongruenceStatus {
    CongruentWitness,
    DistinguishedByInvariant,
    Unknown,
}

impl CongruenceStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::CongruentWitness => "CongruentWitness",
            Self::DistinguishedByInvariant => "DistinguishedByInvariant",
            Self::Unknown => "Unknown",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparatingInvariant {
    pub name: String,
    pub left: String,
    pub right: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceVerdict {
    pub status: CongruenceStatus,
    /// Unimodular `U` with `U A Uᵀ = B`.
    pub witness: Option<IntMatrix>,
    pub separating_invariant: Option<SeparatingInvariant>,
    pub states_explored: usize,
}

impl CongruenceVerdict {
    pub fn to_json(&self) -> Value {
        json!({
            "status": self.status.as_str(),
            "witness": self.witness.as_ref().map(IntMatrix::to_json),
            "separating_invariant": self.separating_invariant.as_ref().map(|s| json!({
                "name": s.name,
                "left": s.left,
                "right": s.right,
            })),
            "states_explored": self.states_explored,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Move {
    Swap(usize, usize),
    Negate(usize),
    /// Row/column `i` += `c` · row/column `j`.
    Add(usize, usize, i64),
}

fn moves(n: usize) -> Vec<Move> {
    let mut out = Vec::new();
    for i in 0..n {
        out.push(Move::Negate(i));
        for j in i + 1..n {
            out.push(Move::Swap(i, j));
        }
    }
    for c in (1..=COEFF_RANGE).flat_map(|c| [c, -c]) {
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    out.push(Move::Add(i, j, c));
                }
            }
        }
    }
    out
}

/// Applies the row operation to `m` (left multiplication by `E`).
fn row_op(m: &mut IntMatrix, mv: Move) -> Option<()> {
    let cols = m.n_cols();
    match mv {
        Move::Swap(i, j) => {
            for c in 0..cols {
                let (a, b) = (m.get(i, c), m.get(j, c));
                m.set(i, c, b);
                m.set(j, c, a);
            }
        }
        Move::Negate(i) => {
            for c in 0..cols {
                m.set(i, c, m.get(i, c).checked_neg()?);
            }
        }
        Move::Add(i, j, k) => {
            for c in 0..cols {
                let v = m.get(i, c).checked_add(m.get(j, c).checked_mul(k)?)?;
                m.set(i, c, v);
            }
        }
    }
    Some(())
}

/// `E M Eᵀ`, or `None` on overflow.
fn congruence_step(m: &IntMatrix, mv: Move) -> Option<IntMatrix> {
    let mut out = m.clone();
    row_op(&mut out, mv)?;
    let mut t = out.transpose();
    row_op(&mut t, mv)?;
    Some(t.transpose())
}

struct Side {
    parents: HashMap<IntMatrix, Option<(IntMatrix, Move)>>,
    frontier: VecDeque<IntMatrix>,
    depth: usize,
}

impl Side {
    fn new(start: IntMatrix) -> Self {
        let mut parents = HashMap::new();
        parents.insert(start.clone(), None);
        Self {
            parents,
            frontier: VecDeque::from([start]),
            depth: 0,
        }
    }

    /// `U` with `U · start · Uᵀ = m`, composed from the recorded moves.
    fn transform_to(&self, m: &IntMatrix) -> IntMatrix {
        let mut path = Vec::new();
        let mut cur = m.clone();
        while let Some(Some((parent, mv))) = self.parents.get(&cur) {
            path.push(*mv);
            cur = parent.clone();
        }
        let mut u = IntMatrix::identity(m.n_rows());
        for mv in path.into_iter().rev() {
            row_op(&mut u, mv).expect("witness entries stay small");
        }
        u
    }
}

/// Expands one BFS layer of `side`. Returns a matrix also reached by
/// `other`, if any, choosing the first in deterministic move order.
fn expand(side: &mut Side, other: &Side, moves: &[Move], budget: &mut usize) -> Option<IntMatrix> {
    let layer: Vec<IntMatrix> = side.frontier.drain(..).collect();
    side.depth += 1;
    for m in layer {
        for &mv in moves {
            let Some(next) = congruence_step(&m, mv) else {
                continue;
            };
            if side.parents.contains_key(&next) {
                continue;
            }
            if *budget == 0 {
                return None;
            }
            *budget -= 1;
            side.parents.insert(next.clone(), Some((m.clone(), mv)));
            if other.parents.contains_key(&next) {
                return Some(next);
            }
            side.frontier.push_back(next);
        }
    }
    None
}

/// Decides whether `B = U A Uᵀ` for some unimodular `U`, within `depth`
/// elementary moves in total.
pub fn check_congruent(a: &SeifertForm, b: &SeifertForm, depth: usize) -> Result<CongruenceVerdict, SeifertError> {
    let ia = congruence_invariants(a)?;
    let ib = congruence_invariants(b)?;
    for ((name, left), (_, right)) in ia.named().into_iter().zip(ib.named()) {
        if left != right {
            return Ok(CongruenceVerdict {
                status: CongruenceStatus::DistinguishedByInvariant,
                witness: None,
                separating_invariant: Some(SeparatingInvariant {
                    name: name.to_string(),
                    left,
                    right,
                }),
                states_explored: 0,
            });
        }
    }

    let (ma, mb) = (a.entries().clone(), b.entries().clone());
    let mut fwd = Side::new(ma.clone());
    let mut bwd = Side::new(mb.clone());
    let meet = if ma == mb {
        Some(ma.clone())
    } else {
        let mv = moves(ma.n_rows());
        let mut budget = MAX_STATES.saturating_sub(2);
        let mut meet = None;
        while fwd.depth + bwd.depth < depth && budget > 0 {
            let found = if fwd.frontier.len() <= bwd.frontier.len() {
                expand(&mut fwd, &bwd, &mv, &mut budget)
            } else {
                expand(&mut bwd, &fwd, &mv, &mut budget)
            };
            if found.is_some() {
                meet = found;
                break;
            }
            if fwd.frontier.is_empty() && bwd.frontier.is_empty() {
                break;
            }
        }
        meet
    };
    let states_explored = fwd.parents.len() + bwd.parents.len();
    let Some(m) = meet else {
        return Ok(CongruenceVerdict {
            status: CongruenceStatus::Unknown,
            witness: None,
            separating_invariant: None,
            states_explored,
        });
    };

    // U1 A U1ᵀ = M = U2 B U2ᵀ, so U = U2⁻¹ U1 carries A to B.
    let u1 = fwd.transform_to(&m);
    let u2 = bwd.transform_to(&m);
    let u = u2.inverse_unimodular()?.checked_mul(&u1)?;
    let check = u.checked_mul(&ma)?.checked_mul(&u.transpose())?;
    debug_assert_eq!(check, mb);
    debug_assert!(u.det()?.abs().is_one());
    if check != mb {
        return Ok(CongruenceVerdict {
            status: CongruenceStatus::Unknown,
            witness: None,
            separating_invariant: None,
            states_explored,
        });
    }
    Ok(CongruenceVerdict {
        status: CongruenceStatus::CongruentWitness,
        witness: Some(u),
        separating_invariant: None,
        states_explored,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn form(rows: &[&[i64]]) -> SeifertForm {
        SeifertForm::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    fn verify(a: &SeifertForm, b: &SeifertForm, v: &CongruenceVerdict) {
        let u = v.witness.as_ref().unwrap();
        assert!(u.det().unwrap().abs().is_one());
        let uau = u.checked_mul(a.entries()).unwrap().checked_mul(&u.transpose()).unwrap();
        assert_eq!(&uau, b.entries());
    }

    #[test]
    fn sign_change_witness() {
        let a = form(&[&[0, -1], &[-1, 2]]);
        let b = form(&[&[0, 1], &[1, 2]]);
        let v = check_congruent(&a, &b, 8).unwrap();
        assert_eq!(v.status, CongruenceStatus::CongruentWitness);
        verify(&a, &b, &v);
        assert_eq!(v.witness.unwrap().to_rows().len(), 2);
    }

    #[test]
    fn extension_to_diagonal() {
        let a = form(&[&[0, 1, 0], &[1, 2, 0], &[0, 0, 1]]);
        let b = SeifertForm::new(IntMatrix::diagonal(&[1, 1, -1])).unwrap();
        let v = check_congruent(&a, &b, 8).unwrap();
        assert_eq!(v.status, CongruenceStatus::CongruentWitness);
        verify(&a, &b, &v);
    }

    #[test]
    fn distinguished_by_det() {
        let v = check_congruent(&form(&[&[1]]), &form(&[&[-1]]), 8).unwrap();
        assert_eq!(v.status, CongruenceStatus::DistinguishedByInvariant);
        let sep = v.separating_invariant.unwrap();
        assert_eq!((sep.name.as_str(), sep.left.as_str(), sep.right.as_str()), ("det", "1", "-1"));
    }

    #[test]
    fn identical_forms_need_no_search() {
        let a = form(&[&[1, 0], &[-1, 1]]);
        let v = check_congruent(&a, &a, 0).unwrap();
        assert_eq!(v.status, CongruenceStatus::CongruentWitness);
        assert_eq!(v.witness.unwrap(), IntMatrix::identity(2));
    }

    #[test]
    fn zero_depth_is_unknown() {
        let a = form(&[&[0, -1], &[-1, 2]]);
        let b = form(&[&[0, 1], &[1, 2]]);
        assert_eq!(check_congruent(&a, &b, 0).unwrap().status, CongruenceStatus::Unknown);
    }

    #[test]
    fn trefoil_and_its_transpose() {
        // Λ_3 and its transpose share all invariants and are congruent.
        let a = form(&[&[1, 0], &[-1, 1]]);
        let b = form(&[&[1, -1], &[0, 1]]);
        let v = check_congruent(&a, &b, 6).unwrap();
        assert_eq!(v.status, CongruenceStatus::CongruentWitness);
        verify(&a, &b, &v);
    }

    #[test]
    fn search_is_deterministic() {
        let a = form(&[&[0, 1, 0], &[1, 2, 0], &[0, 0, 1]]);
        let b = SeifertForm::new(IntMatrix::diagonal(&[1, 1, -1])).unwrap();
        assert_eq!(check_congruent(&a, &b, 8).unwrap(), check_congruent(&a, &b, 8).unwrap());
    }
}
