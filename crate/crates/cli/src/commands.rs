use std::fs;
use std::path::Path;

use mixjoin_core::enhanced::{base_cases, brieskorn_enhanced, join_enhanced, witness, EnhancedMilnor};
use mixjoin_core::newton::{check_strong_nondegeneracy, is_convenient, newton_polytope, SamplingBudget};
use mixjoin_core::polyparse::{parse_with_vars, MixedPolynomial};
use mixjoin_core::seifert::{
    brieskorn_form, check_congruent, congruence_invariants, extend, join_tensor, lambda_matrix, monodromy_charpoly,
    SeifertForm,
};
use mixjoin_core::winding::{mapping_degree, mapping_degree_adaptive};
use mixjoin_core::zeta::{
    composed_product, divisor_join, divisor_of, reduce_divisor, reduced_zeta, zeta_from_charpolys, ZetaFunction,
};
use mixjoin_core::{parse, IntMatrix, IntPolynomial};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::args::{DegreeArgs, EnhancedCommand, NewtonArgs, ParseArgs, PolySource, SeifertCommand, ZetaCommand};
use crate::error::{core, CliError};

/// State shared by the commands of one invocation.
#[derive(Debug, Default)]
pub struct Context {
    pub seed: u64,
    pub warnings: Vec<String>,
    /// `(path, sha256)` of every file read, in reading order.
    pub inputs: Vec<(String, String)>,
}

impl Context {
    pub fn read(&mut self, path: &Path) -> Result<String, CliError> {
        let shown = path.display().to_string();
        let bytes = fs::read(path).map_err(|e| CliError::Io {
            path: shown.clone(),
            message: e.to_string(),
        })?;
        self.inputs.push((shown.clone(), hex::encode(Sha256::digest(&bytes))));
        String::from_utf8(bytes).map_err(|_| CliError::Io {
            path: shown,
            message: "not valid UTF-8".into(),
        })
    }

    pub fn read_json(&mut self, path: &Path) -> Result<Value, CliError> {
        let text = self.read(path)?;
        serde_json::from_str(&text).map_err(|e| CliError::Json {
            source_name: path.display().to_string(),
            message: e.to_string(),
        })
    }
}

/// Integer coefficients, constant term first, as `1,-3,1` or `[1,-3,1]`.
pub fn parse_coeffs(text: &str) -> Result<IntPolynomial, CliError> {
    let inner = text.trim().trim_start_matches('[').trim_end_matches(']');
    let coeffs = inner
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| CliError::Input(format!("bad coefficient {s:?}"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(IntPolynomial::new(coeffs))
}

pub fn poly_from_json(v: &Value) -> Result<IntPolynomial, CliError> {
    IntPolynomial::from_json(v).ok_or_else(|| CliError::Input(format!("expected a coefficient list, got {v}")))
}

pub fn form_from_json(v: &Value) -> Result<SeifertForm, CliError> {
    let entries = v.get("entries").unwrap_or(v);
    let m = IntMatrix::from_json(entries).map_err(core)?;
    let form = SeifertForm::new(m).map_err(core)?;
    Ok(match v.get("k").and_then(Value::as_u64) {
        Some(k) => form.with_k(k as u32),
        None => form,
    })
}

fn read_poly(ctx: &mut Context, src: &PolySource, vars: Option<usize>) -> Result<MixedPolynomial, CliError> {
    let poly = match (&src.poly, &src.file) {
        (Some(text), _) => match vars {
            Some(n) => parse_with_vars(text, n),
            None => parse(text),
        }
        .map_err(core)?,
        (None, Some(path)) => {
            let v = ctx.read_json(path)?;
            MixedPolynomial::from_json(&v).map_err(core)?
        }
        (None, None) => return Err(CliError::Input("no polynomial given".into())),
    };
    Ok(poly)
}

fn read_form(ctx: &mut Context, path: &Path) -> Result<SeifertForm, CliError> {
    let v = ctx.read_json(path)?;
    form_from_json(&v)
}

pub fn parse_cmd(ctx: &mut Context, a: &ParseArgs) -> Result<Value, CliError> {
    let p = read_poly(ctx, &a.source, a.vars)?;
    Ok(json!({"n": p.n(), "text": p.to_string(), "polynomial": p.to_json()}))
}

pub fn newton_cmd(ctx: &mut Context, a: &NewtonArgs) -> Result<Value, CliError> {
    let p = read_poly(ctx, &a.source, None)?;
    let all = !(a.faces || a.convenient || a.nondegenerate);
    let mut out = serde_json::Map::new();
    out.insert("text".into(), json!(p.to_string()));
    if a.faces || all {
        let np = newton_polytope(&p).map_err(core)?;
        let faces: Vec<Value> = np.compact_faces().iter().map(|f| f.to_json()).collect();
        out.insert("vertices".into(), json!(np.vertices()));
        out.insert("faces".into(), Value::Array(faces));
    }
    if a.convenient || all {
        out.insert("convenient".into(), json!(is_convenient(&p)));
    }
    if a.nondegenerate || all {
        let budget = SamplingBudget {
            samples: a.samples,
            iterations: a.iterations,
            ..SamplingBudget::default()
        };
        let reports = check_strong_nondegeneracy(&p, &budget, ctx.seed).map_err(core)?;
        let degenerate = reports.iter().filter(|r| r.is_degenerate()).count();
        out.insert("nondegenerate".into(), json!(degenerate == 0));
        out.insert("reports".into(), Value::Array(reports.iter().map(|r| r.to_json()).collect()));
    }
    Ok(Value::Object(out))
}

pub fn degree_cmd(ctx: &mut Context, a: &DegreeArgs) -> Result<Value, CliError> {
    let p = read_poly(ctx, &a.source, None)?;
    let r = if a.adaptive {
        mapping_degree_adaptive(&p, a.eps, a.samples)
    } else {
        mapping_degree(&p, a.eps, a.samples)
    }
    .map_err(core)?;
    Ok(json!({
        "degree": r.degree,
        "stable": r.stable,
        "eps": a.eps,
        "radius_used": r.radius_used,
        "samples": r.samples,
    }))
}

pub fn seifert_cmd(ctx: &mut Context, c: &SeifertCommand) -> Result<Value, CliError> {
    match c {
        SeifertCommand::Lambda { m } => Ok(lambda_matrix(*m).map_err(core)?.entries().to_json()),
        SeifertCommand::Tensor { n, m, left, right } => {
            let (l1, l2) = (read_form(ctx, left)?, read_form(ctx, right)?);
            Ok(join_tensor(&l1, *n, &l2, *m).map_err(core)?.to_json())
        }
        SeifertCommand::Brieskorn { exponents } => Ok(brieskorn_form(exponents).map_err(core)?.to_json()),
        SeifertCommand::Extend { file, b, eps, k } => {
            let l = read_form(ctx, file)?;
            if let Some(k) = k.or(l.k()).filter(|&k| k < 3) {
                ctx.warnings
                    .push(format!("k = {k} < 3: the extension is algebraic only, no plumbing is implied"));
            }
            Ok(extend(&l, b, *eps).map_err(core)?.to_json())
        }
        SeifertCommand::Congruent { depth, left, right } => {
            let (a, b) = (read_form(ctx, left)?, read_form(ctx, right)?);
            Ok(check_congruent(&a, &b, *depth).map_err(core)?.to_json())
        }
        SeifertCommand::Charpoly { file } => {
            let cp = monodromy_charpoly(&read_form(ctx, file)?).map_err(core)?;
            Ok(json!({"charpoly": cp.to_json(), "text": cp.to_string()}))
        }
        SeifertCommand::Invariants { file } => {
            Ok(congruence_invariants(&read_form(ctx, file)?).map_err(core)?.to_json())
        }
    }
}

pub fn zeta_cmd(ctx: &mut Context, c: &ZetaCommand) -> Result<Value, CliError> {
    match c {
        ZetaCommand::Join { num1, den1, num2, den2 } => {
            let d1 = divisor_of(&parse_coeffs(num1)?, &parse_coeffs(den1)?).map_err(core)?;
            let d2 = divisor_of(&parse_coeffs(num2)?, &parse_coeffs(den2)?).map_err(core)?;
            Ok(divisor_join(&d1, &d2).to_json())
        }
        ZetaCommand::FromCharpolys { file } => {
            let v = ctx.read_json(file)?;
            let list = v
                .as_array()
                .ok_or_else(|| CliError::Input("expected a list of coefficient lists".into()))?;
            let ps = list.iter().map(poly_from_json).collect::<Result<Vec<_>, _>>()?;
            let z = zeta_from_charpolys(&ps).map_err(core)?;
            Ok(zeta_json(&z))
        }
        ZetaCommand::Reduced { num, den } => {
            let d = divisor_of(&parse_coeffs(num)?, &parse_coeffs(den)?).map_err(core)?;
            Ok(reduce_divisor(&d).to_json())
        }
        ZetaCommand::Composed { p, q } => {
            let r = composed_product(&parse_coeffs(p)?, &parse_coeffs(q)?).map_err(core)?;
            Ok(json!({"product": r.to_json(), "text": r.to_string()}))
        }
    }
}

pub fn zeta_json(z: &ZetaFunction) -> Value {
    let mut v = z.to_json();
    v["reduced"] = reduced_zeta(z).to_json();
    v
}

pub fn enhanced_cmd(_ctx: &mut Context, c: &EnhancedCommand) -> Result<Value, CliError> {
    match c {
        EnhancedCommand::Join {
            mu1,
            lambda1,
            mu2,
            lambda2,
            k,
        } => {
            let e1 = EnhancedMilnor::new(*mu1, *lambda1, 1).map_err(core)?;
            let e2 = EnhancedMilnor::new(*mu2, *lambda2, 1).map_err(core)?;
            Ok(join_enhanced(&e1, &e2, *k).map_err(core)?.to_json())
        }
        EnhancedCommand::Brieskorn { exponents } => Ok(brieskorn_enhanced(exponents).map_err(core)?.to_json()),
        EnhancedCommand::Witness { ell, k } => Ok(witness(*ell, *k).map_err(core)?.to_json()),
        EnhancedCommand::BaseCases => Ok(Value::Array(
            base_cases()
                .iter()
                .map(|b| {
                    json!({
                        "name": b.name,
                        "polynomial": b.polynomial.to_string(),
                        "invariant": b.invariant.to_json(),
                    })
                })
                .collect(),
        )),
    }
}
