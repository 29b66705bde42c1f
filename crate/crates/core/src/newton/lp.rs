//! Exact two-phase simplex over ℚ with Bland's rule.
//!
//! Solves `min cᵀx  s.t.  A x = b, x ≥ 0`. Problem sizes here are tiny
//! (a handful of lattice points), so a dense tableau is fine.

use num::{BigRational, Signed, Zero};

#[derive(Clone, Debug, PartialEq)]
pub(crate) enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal(Vec<BigRational>),
}

struct Tableau {
    /// `rows × (cols + 1)`, last column is the right-hand side.
    rows: Vec<Vec<BigRational>>,
    basis: Vec<usize>,
    cols: usize,
}

impl Tableau {
    fn pivot(&mut self, row: usize, col: usize) {
        let p = self.rows[row][col].clone();
        for v in self.rows[row].iter_mut() {
            *v = &*v / &p;
        }
        let pivot_row = self.rows[row].clone();
        for (r, other) in self.rows.iter_mut().enumerate() {
            if r == row || other[col].is_zero() {
                continue;
            }
            let factor = other[col].clone();
            for (v, pv) in other.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v = &*v - &(&factor * pv);
                }
            }
        }
        self.basis[row] = col;
    }

    fn rhs(&self, row: usize) -> &BigRational {
        &self.rows[row][self.cols]
    }

    /// Runs simplex iterations for `cost` restricted to columns where
    /// `allowed` holds. Returns false if unbounded.
    fn optimize(&mut self, cost: &[BigRational], allowed: &dyn Fn(usize) -> bool) -> bool {
        loop {
            // Reduced cost of column j: c_j − Σ_r c_{basis[r]} · a_{r,j}.
            let entering = (0..self.cols).filter(|&j| allowed(j)).find(|&j| {
                if self.basis.contains(&j) {
                    return false;
                }
                let mut rc = cost[j].clone();
                for (r, &b) in self.basis.iter().enumerate() {
                    if !cost[b].is_zero() && !self.rows[r][j].is_zero() {
                        rc -= &cost[b] * &self.rows[r][j];
                    }
                }
                rc.is_negative()
            });
            let Some(col) = entering else {
                return true;
            };
            let mut best: Option<(usize, BigRational)> = None;
            for r in 0..self.rows.len() {
                let a = &self.rows[r][col];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(r) / a;
                let better = match &best {
                    None => true,
                    Some((br, bv)) => {
                        ratio < *bv || (ratio == *bv && self.basis[r] < self.basis[*br])
                    }
                };
                if better {
                    best = Some((r, ratio));
                }
            }
            match best {
                Some((row, _)) => self.pivot(row, col),
                None => return false,
            }
        }
    }
}

pub(crate) fn solve(a: &[Vec<BigRational>], b: &[BigRational], c: &[BigRational]) -> LpOutcome {
    let m = a.len();
    let n = c.len();
    debug_assert!(a.iter().all(|row| row.len() == n));
    debug_assert_eq!(b.len(), m);
    let total = n + m;
    let mut rows = Vec::with_capacity(m);
    for (i, (row, rhs)) in a.iter().zip(b).enumerate() {
        let flip = rhs.is_negative();
        let mut t: Vec<BigRational> = row
            .iter()
            .map(|v| if flip { -v.clone() } else { v.clone() })
            .collect();
        t.extend((0..m).map(|k| {
            if k == i {
                BigRational::from_integer(1.into())
            } else {
                BigRational::zero()
            }
        }));
        t.push(if flip { -rhs.clone() } else { rhs.clone() });
        rows.push(t);
    }
    let mut tab = Tableau {
        rows,
        basis: (n..total).collect(),
        cols: total,
    };

    // Phase one: minimise the sum of artificials.
    let mut phase_one = vec![BigRational::zero(); total];
    for v in phase_one.iter_mut().skip(n) {
        *v = BigRational::from_integer(1.into());
    }
    tab.optimize(&phase_one, &|_| true);
    let infeasibility: BigRational = (0..m)
        .filter(|&r| tab.basis[r] >= n)
        .map(|r| tab.rhs(r).clone())
        .fold(BigRational::zero(), |acc, v| acc + v);
    if !infeasibility.is_zero() {
        return LpOutcome::Infeasible;
    }

    // Drive zero-valued artificials out of the basis; drop redundant rows.
    let mut r = 0;
    while r < tab.rows.len() {
        if tab.basis[r] >= n {
            match (0..n).find(|&j| !tab.rows[r][j].is_zero()) {
                Some(j) => tab.pivot(r, j),
                None => {
                    tab.rows.remove(r);
                    tab.basis.remove(r);
                    continue;
                }
            }
        }
        r += 1;
    }

    let mut cost = c.to_vec();
    cost.extend((0..m).map(|_| BigRational::zero()));
    if !tab.optimize(&cost, &|j| j < n) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![BigRational::zero(); n];
    for (r, &bv) in tab.basis.iter().enumerate() {
        if bv < n {
            x[bv] = tab.rhs(r).clone();
        }
    }
    LpOutcome::Optimal(x)
}

pub(crate) fn feasible(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = a.first().map_or(0, Vec::len);
    match solve(a, b, &vec![BigRational::zero(); n]) {
        LpOutcome::Optimal(x) => Some(x),
        _ => None,
    }
}
