//! Arithmetic modulo word-sized primes, used to compute polynomial
//! determinants exactly by Chinese remaindering.

use std::sync::OnceLock;

use num::{BigInt, Integer, One, Signed, Zero};

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn primes_below(top: u64) -> impl Iterator<Item = u64> {
    ((1u64 << 61)..top).rev().filter(|&n| n % 2 == 1 && is_prime(n))
}

/// Primes just below 2^62, in decreasing order. The first few are cached.
fn primes() -> impl Iterator<Item = u64> {
    static CACHE: OnceLock<Vec<u64>> = OnceLock::new();
    let cached = CACHE.get_or_init(|| primes_below(1 << 62).take(32).collect());
    let last = *cached.last().expect("cache is non-empty");
    cached.iter().copied().chain(primes_below(last))
}

fn reduce(v: &BigInt, p: u64) -> u64 {
    let r = v.mod_floor(&BigInt::from(p));
    r.try_into().expect("residue fits in u64")
}

type Mat = Vec<Vec<u64>>;

/// Solves `M X = B` in place; returns `det M`, or `None` if `M` is singular.
fn solve_in_place(mut m: Mat, b: &mut Mat, p: u64) -> Option<u64> {
    let n = m.len();
    let mut det = 1u64;
    for col in 0..n {
        let piv = (col..n).find(|&r| m[r][col] != 0)?;
        if piv != col {
            m.swap(piv, col);
            b.swap(piv, col);
            det = (p - det) % p;
        }
        det = mul_mod(det, m[col][col], p);
        let inv = inv_mod(m[col][col], p);
        for c in col..n {
            m[col][c] = mul_mod(m[col][c], inv, p);
        }
        for v in b[col].iter_mut() {
            *v = mul_mod(*v, inv, p);
        }
        for r in 0..n {
            if r == col || m[r][col] == 0 {
                continue;
            }
            let f = m[r][col];
            for c in col..n {
                m[r][c] = (m[r][c] + p - mul_mod(f, m[col][c], p)) % p;
            }
            let (src, dst) = if r < col {
                let (lo, hi) = b.split_at_mut(col);
                (&hi[0], &mut lo[r])
            } else {
                let (lo, hi) = b.split_at_mut(r);
                (&lo[col], &mut hi[0])
            };
            for (d, s) in dst.iter_mut().zip(src.iter()) {
                *d = (*d + p - mul_mod(f, *s, p)) % p;
            }
        }
    }
    Some(det)
}

/// Monic characteristic polynomial `det(xI − A)`, constant term first,
/// via reduction to Hessenberg form.
fn charpoly(mut h: Mat, p: u64) -> Vec<u64> {
    let n = h.len();
    for m in 1..n {
        let Some(i) = (m..n).find(|&i| h[i][m - 1] != 0) else {
            continue;
        };
        if i != m {
            h.swap(i, m);
            for row in h.iter_mut() {
                row.swap(i, m);
            }
        }
        let inv = inv_mod(h[m][m - 1], p);
        for i in m + 1..n {
            let u = mul_mod(h[i][m - 1], inv, p);
            if u == 0 {
                continue;
            }
            for c in 0..n {
                let v = mul_mod(u, h[m][c], p);
                h[i][c] = (h[i][c] + p - v) % p;
            }
            for row in h.iter_mut() {
                let v = mul_mod(u, row[i], p);
                row[m] = (row[m] + v) % p;
            }
        }
    }
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for m in 1..=n {
        let prev = &polys[m - 1];
        let mut next = vec![0u64; m + 1];
        let d = h[m - 1][m - 1];
        for (k, &c) in prev.iter().enumerate() {
            next[k + 1] = (next[k + 1] + c) % p;
            next[k] = (next[k] + p - mul_mod(d, c, p)) % p;
        }
        let mut t = 1u64;
        for i in (1..m).rev() {
            t = mul_mod(t, h[i][i - 1], p);
            let f = mul_mod(h[i - 1][m - 1], t, p);
            if f == 0 {
                continue;
            }
            for (k, &c) in polys[i - 1].iter().enumerate() {
                next[k] = (next[k] + p - mul_mod(f, c, p)) % p;
            }
        }
        polys.push(next);
    }
    polys.pop().expect("n + 1 polynomials")
}

/// `P(t − c)` from `P(s)`.
fn taylor_shift(mut coeffs: Vec<u64>, c: u64, p: u64) -> Vec<u64> {
    let minus_c = (p - c % p) % p;
    let n = coeffs.len();
    for i in 0..n {
        for k in (i..n - 1).rev() {
            let v = mul_mod(minus_c, coeffs[k + 1], p);
            coeffs[k] = (coeffs[k] + v) % p;
        }
    }
    coeffs
}

/// Coefficients of `det(A0 + t·A1) mod p`, degree ≤ n.
fn poly_det_mod(a0: &[Vec<BigInt>], a1: &[Vec<BigInt>], p: u64) -> Vec<u64> {
    let n = a0.len();
    let r0: Mat = a0.iter().map(|r| r.iter().map(|v| reduce(v, p)).collect()).collect();
    let r1: Mat = a1.iter().map(|r| r.iter().map(|v| reduce(v, p)).collect()).collect();
    for c in 0..=n as u64 {
        let m: Mat = r0
            .iter()
            .zip(&r1)
            .map(|(x, y)| x.iter().zip(y).map(|(&a, &b)| (a + mul_mod(c, b, p)) % p).collect())
            .collect();
        let mut x = r1.clone();
        let Some(d) = solve_in_place(m, &mut x, p) else {
            continue;
        };
        // det(M + sA1) = det M · det(I + sX) and det(I + sX) is the reversed
        // characteristic polynomial of −X.
        let neg: Mat = x.iter().map(|r| r.iter().map(|&v| (p - v) % p).collect()).collect();
        let mut coeffs = charpoly(neg, p);
        coeffs.reverse();
        for v in coeffs.iter_mut() {
            *v = mul_mod(*v, d, p);
        }
        return taylor_shift(coeffs, c, p);
    }
    // Singular at n + 1 points: the polynomial vanishes mod p.
    vec![0; n + 1]
}

/// Exact `det(A0 + t·A1)` over ℤ, constant term first (trailing zeros
/// included up to degree n).
pub(crate) fn poly_det(a0: &[Vec<BigInt>], a1: &[Vec<BigInt>]) -> Vec<BigInt> {
    let n = a0.len();
    if n == 0 {
        return vec![BigInt::one()];
    }
    // Every coefficient is bounded by Π_i Σ_j (|a0_ij| + |a1_ij|).
    let bound: BigInt = a0
        .iter()
        .zip(a1)
        .map(|(x, y)| x.iter().zip(y).map(|(a, b)| a.abs() + b.abs()).sum::<BigInt>())
        .product();
    let target = bound * 2 + 1;
    let mut modulus = BigInt::one();
    let mut acc = vec![BigInt::zero(); n + 1];
    for p in primes() {
        let residues = poly_det_mod(a0, a1, p);
        let pb = BigInt::from(p);
        // x ≡ acc (mod modulus), x ≡ r (mod p).
        let inv = BigInt::from(inv_mod(reduce(&modulus, p), p));
        for (a, &r) in acc.iter_mut().zip(&residues) {
            let diff = (BigInt::from(r) - &*a).mod_floor(&pb);
            *a += &modulus * ((diff * &inv).mod_floor(&pb));
        }
        modulus *= pb;
        if modulus >= target {
            break;
        }
    }
    let half = &modulus / 2;
    for a in acc.iter_mut() {
        if *a > half {
            *a -= &modulus;
        }
    }
    acc
}
