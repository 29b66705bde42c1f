//! End-to-end acceptance checks. Runs without the libtest harness and
//! prints one PASS/FAIL line per criterion; exits nonzero if any fail.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use mixjoin_core::enhanced::{join_enhanced, witness, EnhancedMilnor};
use mixjoin_core::matrix::IntMatrix;
use mixjoin_core::newton::{check_strong_nondegeneracy, is_convenient, SamplingBudget, Verdict};
use mixjoin_core::polyparse::{parse, GaussianRational, MixedMonomial, MixedPolynomial};
use mixjoin_core::seifert::{
    brieskorn_form, check_congruent, congruence_invariants, extend, lambda_matrix, monodromy_charpoly, CongruenceStatus,
    SeifertForm,
};
use mixjoin_core::winding::mapping_degree;
use mixjoin_core::zeta::{composed_product, divisor_join, divisor_of, reduced_zeta, zeta_from_middle_charpoly, Divisor};
use mixjoin_core::IntPolynomial;
use nalgebra::{Complex, DMatrix};
use num::{BigInt, BigRational, One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || format!("took {elapsed:.2?}, limit {limit:?}"))
}

fn p(c: &[i64]) -> IntPolynomial {
    IntPolynomial::from_i64(c)
}

fn figure_eight_join() -> Outcome {
    let start = Instant::now();
    let fig8 = divisor_of(&p(&[1, -3, 1]), &p(&[1])).map_err(|e| e.to_string())?;
    let joined = divisor_join(&fig8, &fig8);
    let elapsed = start.elapsed();
    let expect_num = &p(&[-1, 1]).pow(2) * &p(&[1, -7, 1]);
    ensure(joined.num() == &expect_num && joined.den().is_one(), || format!("got {joined}"))?;
    ensure(expect_num == p(&[1, -9, 16, -9, 1]), || "expansion mismatch".into())?;
    within(elapsed, Duration::from_secs(1))?;
    Ok(format!("{joined} in {elapsed:.2?}"))
}

fn random_poly(rng: &mut ChaCha8Rng) -> IntPolynomial {
    let deg = rng.gen_range(1..=5);
    let mut c: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-10..=10)).collect();
    while c[0] == 0 {
        c[0] = rng.gen_range(-10..=10);
    }
    while c[deg] == 0 {
        c[deg] = rng.gen_range(-10..=10);
    }
    p(&c)
}

/// Roots as eigenvalues of the companion matrix.
fn roots(q: &IntPolynomial) -> Vec<Complex<f64>> {
    let c = q.to_f64_coeffs();
    let n = c.len() - 1;
    let lead = c[n];
    let companion = DMatrix::from_fn(n, n, |i, j| {
        if j == n - 1 {
            -c[i] / lead
        } else if i == j + 1 {
            1.0
        } else {
            0.0
        }
    });
    companion.complex_eigenvalues().iter().copied().collect()
}

fn monic_from_roots(rs: &[Complex<f64>]) -> Vec<Complex<f64>> {
    let mut out = vec![Complex::new(1.0, 0.0)];
    for r in rs {
        let mut next = vec![Complex::new(0.0, 0.0); out.len() + 1];
        for (k, c) in out.iter().enumerate() {
            next[k + 1] += c;
            next[k] -= c * r;
        }
        out = next;
    }
    out
}

fn composed_product_oracle() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut worst = 0f64;
    for case in 0..200 {
        let (a, b) = (random_poly(&mut rng), random_poly(&mut rng));
        let exact = composed_product(&a, &b).map_err(|e| e.to_string())?;
        let (ra, rb) = (roots(&a), roots(&b));
        let products: Vec<_> = ra.iter().flat_map(|x| rb.iter().map(move |y| x * y)).collect();
        let numeric = monic_from_roots(&products);
        let ex = exact.to_f64_coeffs();
        ensure(ex.len() == numeric.len(), || format!("case {case}: degree mismatch"))?;
        let lead = *ex.last().expect("nonzero");
        let scale = ex.iter().map(|c| (c / lead).abs()).fold(1.0, f64::max);
        let err = ex
            .iter()
            .zip(&numeric)
            .map(|(e, n)| (Complex::new(e / lead, 0.0) - n).norm())
            .fold(0.0, f64::max)
            / scale;
        worst = worst.max(err);
        ensure(err <= 1e-6, || format!("case {case}: {a} ⊛ {b} relative error {err:e}"))?;
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(30))?;
    Ok(format!("200 pairs, worst relative error {worst:.1e}, {elapsed:.2?}"))
}

fn reduced_zeta_of(form: &SeifertForm, n_vars: usize) -> Result<Divisor, String> {
    let cp = monodromy_charpoly(form).map_err(|e| e.to_string())?;
    let z = zeta_from_middle_charpoly(&cp, n_vars).map_err(|e| e.to_string())?;
    Ok(reduced_zeta(&z))
}

fn join_consistency() -> Outcome {
    let start = Instant::now();
    let pairs: Vec<(i64, i64)> = (2..=4).flat_map(|x| (2..=4).map(move |y| (x, y))).collect();
    let mut cases = 0;
    for &(a1, a2) in &pairs {
        let za = reduced_zeta_of(&brieskorn_form(&[a1, a2]).map_err(|e| e.to_string())?, 2)?;
        for &(b1, b2) in &pairs {
            let zb = reduced_zeta_of(&brieskorn_form(&[b1, b2]).map_err(|e| e.to_string())?, 2)?;
            let form = brieskorn_form(&[a1, a2, b1, b2]).map_err(|e| e.to_string())?;
            let whole = reduced_zeta_of(&form, 4)?;
            let joined = divisor_join(&za, &zb);
            ensure(whole == joined, || {
                format!("({a1},{a2})*({b1},{b2}): form gives {whole}, join gives {joined}")
            })?;
            cases += 1;
        }
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(10))?;
    Ok(format!("{cases} cases in {elapsed:.2?}"))
}

fn lambda_formula() -> Outcome {
    let trefoil = brieskorn_form(&[2, 3]).map_err(|e| e.to_string())?;
    let alex = congruence_invariants(&trefoil).map_err(|e| e.to_string())?.alexander;
    ensure(alex == p(&[1, -1, 1]), || format!("Alexander polynomial of (2,3) is {alex}"))?;
    let l = brieskorn_form(&[2, 2, 2]).map_err(|e| e.to_string())?;
    let n: i64 = 3;
    let sign = if (n * (n + 1) / 2) % 2 == 0 { 1 } else { -1 };
    ensure(l.entries() == &IntMatrix::diagonal(&[sign]), || {
        format!("(2,2,2) gives {:?}", l.entries().to_rows())
    })?;
    let lam3 = lambda_matrix(3).map_err(|e| e.to_string())?;
    ensure(lam3.entries().to_rows() == vec![vec![1, 0], vec![-1, 1]], || "Λ_3 mismatch".into())?;
    Ok(format!("Δ = {alex}, (2,2,2) → [[{sign}]]"))
}

fn verify_witness(a: &SeifertForm, b: &SeifertForm, u: &IntMatrix) -> Result<(), String> {
    let det = u.det().map_err(|e| e.to_string())?;
    ensure(det.abs().is_one(), || format!("witness has det {det}"))?;
    let uau = u
        .checked_mul(a.entries())
        .and_then(|m| m.checked_mul(&u.transpose()))
        .map_err(|e| e.to_string())?;
    ensure(&uau == b.entries(), || "U A Uᵀ ≠ B".into())
}

fn example_chain() -> Outcome {
    let start = Instant::now();
    let form = |rows: Vec<Vec<i64>>| SeifertForm::from_rows(rows).map_err(|e| e.to_string());
    let a = form(vec![vec![0, -1], vec![-1, 2]])?;
    let b = form(vec![vec![0, 1], vec![1, 2]])?;
    let v = check_congruent(&a, &b, 8).map_err(|e| e.to_string())?;
    ensure(v.status == CongruenceStatus::CongruentWitness, || format!("first step: {:?}", v.status))?;
    verify_witness(&a, &b, v.witness.as_ref().ok_or("no witness")?)?;

    let ext = extend(&b, &[0, 0], 1).map_err(|e| e.to_string())?;
    let displayed = vec![vec![0, 1, 0], vec![1, 2, 0], vec![0, 0, 1]];
    ensure(ext.entries().to_rows() == displayed, || format!("extend gave {:?}", ext.entries().to_rows()))?;

    let diag = SeifertForm::new(IntMatrix::diagonal(&[1, 1, -1])).map_err(|e| e.to_string())?;
    let v = check_congruent(&ext, &diag, 8).map_err(|e| e.to_string())?;
    ensure(v.status == CongruenceStatus::CongruentWitness, || format!("last step: {:?}", v.status))?;
    verify_witness(&ext, &diag, v.witness.as_ref().ok_or("no witness")?)?;
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(60))?;
    Ok(format!("{} states in {elapsed:.2?}", v.states_explored))
}

fn mapping_degrees() -> Outcome {
    let start = Instant::now();
    for m in (-5i64..=5).filter(|&m| m != 0) {
        for ell in 0..=3i64 {
            let (a, b) = (m.max(0) + ell, (-m).max(0) + ell);
            let g = parse(&format!("z1^{a}*zb1^{b}")).map_err(|e| e.to_string())?;
            let r = mapping_degree(&g, 1e-2, 256).map_err(|e| format!("m={m}, ℓ={ell}: {e}"))?;
            ensure(r.degree == m && r.stable, || format!("m={m}, ℓ={ell}: got {r:?}"))?;
        }
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(5))?;
    Ok(format!("40 cases in {elapsed:.2?}"))
}

fn enhanced_arithmetic() -> Outcome {
    for ell in 1..=10 {
        for k in 2..=5 {
            let w = witness(ell, k).map_err(|e| e.to_string())?;
            ensure((w.invariant.mu(), w.invariant.lambda()) == (ell as u64, 1), || {
                format!("witness({ell}, {k}) has {:?}", w.invariant)
            })?;
            ensure(w.variable_count == k as usize + 1 && w.polynomial.n() == k as usize + 1, || {
                format!("witness({ell}, {k}) has {} variables", w.variable_count)
            })?;
            ensure(w.is_consistent() && is_convenient(&w.polynomial), || format!("witness({ell}, {k}) invalid"))?;
        }
    }
    let mut checked = 0;
    for m1 in 0..=20u64 {
        for m2 in 0..=20u64 {
            for (l1, l2) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
                let e1 = EnhancedMilnor::new(m1, l1, 2).map_err(|e| e.to_string())?;
                let e2 = EnhancedMilnor::new(m2, l2, 2).map_err(|e| e.to_string())?;
                let j = join_enhanced(&e1, &e2, 5).map_err(|e| e.to_string())?;
                let lambda = (l1 as u64 * m2 + m1 * l2 as u64) % 2;
                ensure(j.mu() == m1 * m2 && j.lambda() as u64 == lambda, || {
                    format!("({m1},{l1}) ⊛ ({m2},{l2}) = {j:?}")
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!("40 witnesses, {checked} joins"))
}

fn newton_engine() -> Outcome {
    let start = Instant::now();
    let budget = SamplingBudget::default();
    let mut summary = Vec::new();
    for src in ["z1^2 + zb2^2", "z1^2 + z2^3", "z1^3 + z2^4 + z3^5", "z1^2 + z2^2 + z3^2 + z4^2"] {
        let poly = parse(src).map_err(|e| e.to_string())?;
        ensure(is_convenient(&poly), || format!("{src} not convenient"))?;
        let reports = check_strong_nondegeneracy(&poly, &budget, 0).map_err(|e| e.to_string())?;
        ensure(!reports.is_empty(), || format!("{src}: no faces"))?;
        for r in &reports {
            ensure(
                matches!(r.verdict, Verdict::ExactlyNondegenerate | Verdict::NoWitnessFound) && r.witness.is_none(),
                || format!("{src}: face {:?} reported {}", r.face, r.verdict.as_str()),
            )?;
        }
        summary.push(format!("{src}: {} faces", reports.len()));
    }
    let zz = parse("z1*zb1").map_err(|e| e.to_string())?;
    let reports = check_strong_nondegeneracy(&zz, &budget, 0).map_err(|e| e.to_string())?;
    ensure(reports.iter().any(|r| r.verdict == Verdict::DegenerateWitness), || {
        "z1*zb1 has no degenerate face".into()
    })?;
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(10))?;
    Ok(format!("{}; z·z̄ degenerate; {elapsed:.2?}", summary.join(", ")))
}

fn random_divisor(rng: &mut ChaCha8Rng) -> Divisor {
    let mut small = || {
        let deg = rng.gen_range(1..=3);
        let mut c: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-6..=6)).collect();
        if c[0] == 0 {
            c[0] = 1;
        }
        if c[deg] == 0 {
            c[deg] = 1;
        }
        p(&c)
    };
    let (num, den) = (small(), small());
    divisor_of(&num, &den).expect("constant terms are nonzero")
}

fn random_matrix(rng: &mut ChaCha8Rng, n: usize) -> IntMatrix {
    IntMatrix::from_fn(n, n, |_, _| rng.gen_range(-4..=4))
}

/// Product of random elementary matrices.
fn random_unimodular(rng: &mut ChaCha8Rng, n: usize) -> IntMatrix {
    let mut u = IntMatrix::identity(n);
    for _ in 0..6 {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let mut e = IntMatrix::identity(n);
        if i == j {
            e.set(i, i, -1);
        } else {
            e.set(i, j, rng.gen_range(-2..=2));
        }
        u = e.checked_mul(&u).expect("small entries");
    }
    u
}

fn random_mixed(rng: &mut ChaCha8Rng) -> MixedPolynomial {
    let n = rng.gen_range(1..=3);
    let terms: Vec<_> = (0..rng.gen_range(1..=5))
        .map(|_| {
            let nu = (0..n).map(|_| rng.gen_range(0..=3)).collect();
            let mu = (0..n).map(|_| rng.gen_range(0..=3)).collect();
            let q = |rng: &mut ChaCha8Rng| BigRational::new(BigInt::from(rng.gen_range(-9..=9)), BigInt::from(rng.gen_range(1..=4)));
            let c = GaussianRational::new(q(rng), q(rng));
            (MixedMonomial::new(nu, mu).expect("lengths agree"), c)
        })
        .collect();
    MixedPolynomial::from_terms(n, terms).expect("valid terms")
}

fn property_suites() -> Outcome {
    const CASES: usize = 100;
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for case in 0..CASES {
        let (x, y, z) = (random_divisor(&mut rng), random_divisor(&mut rng), random_divisor(&mut rng));
        ensure(divisor_join(&x, &y) == divisor_join(&y, &x), || format!("commutativity case {case}"))?;
        let left = divisor_join(&divisor_join(&x, &y), &z);
        let right = divisor_join(&x, &divisor_join(&y, &z));
        ensure(left == right, || format!("associativity case {case}"))?;
    }
    for case in 0..CASES {
        let (n, m) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
        let (a, b) = (random_matrix(&mut rng, n), random_matrix(&mut rng, m));
        let lhs = a.kron(&b).and_then(|k| k.det()).map_err(|e| e.to_string())?;
        let da = a.det().map_err(|e| e.to_string())?;
        let db = b.det().map_err(|e| e.to_string())?;
        let rhs = num::pow(da, m) * num::pow(db, n);
        ensure(lhs == rhs, || format!("Kronecker case {case}"))?;
    }
    let mut generated = 0;
    while generated < CASES {
        let n = rng.gen_range(1..=4);
        let Ok(form) = SeifertForm::new(random_matrix(&mut rng, n)) else {
            continue;
        };
        generated += 1;
        let u = random_unimodular(&mut rng, n);
        let moved = u
            .checked_mul(form.entries())
            .and_then(|m| m.checked_mul(&u.transpose()))
            .map_err(|e| e.to_string())?;
        let moved = SeifertForm::new(moved).map_err(|e| e.to_string())?;
        let (i1, i2) = (congruence_invariants(&form), congruence_invariants(&moved));
        ensure(i1.is_ok() && i1 == i2, || format!("invariant case {generated}"))?;
    }
    for case in 0..CASES {
        let poly = random_mixed(&mut rng);
        let text = poly.to_string();
        let back = mixjoin_core::polyparse::parse_with_vars(&text, poly.n()).map_err(|e| format!("{text}: {e}"))?;
        ensure(back == poly, || format!("round-trip case {case}: {text}"))?;
    }
    Ok(format!("4 suites × {CASES} cases"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("figure-eight join", figure_eight_join),
        ("composed-product oracle", composed_product_oracle),
        ("form/join zeta consistency", join_consistency),
        ("Λ-matrix formula", lambda_formula),
        ("congruence chain", example_chain),
        ("mapping degree", mapping_degrees),
        ("enhanced Milnor arithmetic", enhanced_arithmetic),
        ("Newton engine", newton_engine),
        ("property suites", property_suites),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        eprintln!("{failed} acceptance criteria failed");
        ExitCode::FAILURE
    }
}
