//! Sequential evaluation of JSON step lists.
//!
//! A step is an object `{"op": name, ...}`. Fields named `input`, `left`,
//! `right` and `inputs` hold indices of earlier results; all other fields
//! are literal parameters.

use mixjoin_core::enhanced::{brieskorn_enhanced, join_enhanced, witness, EnhancedMilnor};
use mixjoin_core::newton::{check_strong_nondegeneracy, is_convenient, newton_polytope, SamplingBudget};
use mixjoin_core::seifert::{
    brieskorn_form, check_congruent, congruence_invariants, extend, join_tensor, lambda_matrix, monodromy_charpoly,
    SeifertForm,
};
use mixjoin_core::winding::mapping_degree;
use mixjoin_core::zeta::{
    composed_product, divisor_join, divisor_of, reduced_zeta, zeta_from_charpolys, zeta_from_middle_charpoly,
    ZetaFunction,
};
use mixjoin_core::{parse, Divisor, IntPolynomial, MixedPolynomial};
use serde_json::{json, Map, Value};

use crate::commands::{form_from_json, poly_from_json, zeta_json, Context};
use crate::error::{core, CliError};

#[derive(Clone, Debug)]
enum Item {
    Mixed(MixedPolynomial),
    Poly(IntPolynomial),
    Form(SeifertForm),
    Zeta(ZetaFunction),
    Divisor(Divisor),
    Enhanced(EnhancedMilnor),
    /// Results that later steps cannot consume.
    Report(Value),
}

impl Item {
    fn kind(&self) -> &'static str {
        match self {
            Self::Mixed(_) => "mixed polynomial",
            Self::Poly(_) => "integer polynomial",
            Self::Form(_) => "Seifert form",
            Self::Zeta(_) => "zeta function",
            Self::Divisor(_) => "divisor",
            Self::Enhanced(_) => "enhanced Milnor number",
            Self::Report(_) => "report",
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Self::Mixed(p) => json!({"text": p.to_string(), "polynomial": p.to_json()}),
            Self::Poly(p) => json!({"coeffs": p.to_json(), "text": p.to_string()}),
            Self::Form(f) => f.to_json(),
            Self::Zeta(z) => zeta_json(z),
            Self::Divisor(d) => d.to_json(),
            Self::Enhanced(e) => e.to_json(),
            Self::Report(v) => v.clone(),
        }
    }
}

/// Outcome of a run: the results so far and, if a step failed, its index
/// and error.
pub struct PipelineOutcome {
    pub results: Vec<Value>,
    pub failure: Option<(usize, CliError)>,
}

pub fn run_script(ctx: &mut Context, script: &Value) -> Result<PipelineOutcome, CliError> {
    let steps = script
        .as_array()
        .ok_or_else(|| CliError::Input("pipeline script must be a JSON list".into()))?;
    let mut items: Vec<Item> = Vec::with_capacity(steps.len());
    for (i, step) in steps.iter().enumerate() {
        match run_step(ctx, i, step, &items) {
            Ok(item) => items.push(item),
            Err(e) => {
                return Ok(PipelineOutcome {
                    results: items.iter().map(Item::to_json).collect(),
                    failure: Some((i, e)),
                })
            }
        }
    }
    Ok(PipelineOutcome {
        results: items.iter().map(Item::to_json).collect(),
        failure: None,
    })
}

struct Step<'a> {
    index: usize,
    fields: &'a Map<String, Value>,
    items: &'a [Item],
}

impl<'a> Step<'a> {
    fn field(&self, name: &str) -> Result<&'a Value, CliError> {
        self.fields
            .get(name)
            .ok_or_else(|| CliError::Input(format!("step {} is missing {name:?}", self.index)))
    }

    fn int(&self, name: &str) -> Result<i64, CliError> {
        self.field(name)?
            .as_i64()
            .ok_or_else(|| CliError::Input(format!("step {}: {name:?} must be an integer", self.index)))
    }

    fn int_or(&self, name: &str, default: i64) -> Result<i64, CliError> {
        match self.fields.get(name) {
            Some(_) => self.int(name),
            None => Ok(default),
        }
    }

    fn ints(&self, name: &str) -> Result<Vec<i64>, CliError> {
        let bad = || CliError::Input(format!("step {}: {name:?} must be a list of integers", self.index));
        self.field(name)?
            .as_array()
            .ok_or_else(bad)?
            .iter()
            .map(|v| v.as_i64().ok_or_else(bad))
            .collect()
    }

    fn u32(&self, name: &str) -> Result<u32, CliError> {
        u32::try_from(self.int(name)?)
            .map_err(|_| CliError::Input(format!("step {}: {name:?} must be a small nonnegative integer", self.index)))
    }

    fn reference(&self, index: i64) -> Result<&'a Item, CliError> {
        usize::try_from(index)
            .ok()
            .filter(|&j| j < self.items.len())
            .map(|j| &self.items[j])
            .ok_or(CliError::DanglingReference {
                step: self.index,
                index: index.max(0) as usize,
            })
    }

    fn get(&self, name: &str) -> Result<(usize, &'a Item), CliError> {
        let index = self.int(name)?;
        Ok((index as usize, self.reference(index)?))
    }

    fn mismatch(&self, index: usize, expected: &'static str, found: &Item) -> CliError {
        CliError::TypeMismatch {
            step: self.index,
            index,
            expected,
            found: found.kind(),
        }
    }

    fn form(&self, name: &str) -> Result<&'a SeifertForm, CliError> {
        match self.get(name)? {
            (_, Item::Form(f)) => Ok(f),
            (i, other) => Err(self.mismatch(i, "Seifert form", other)),
        }
    }

    fn poly(&self, name: &str) -> Result<&'a IntPolynomial, CliError> {
        match self.get(name)? {
            (_, Item::Poly(p)) => Ok(p),
            (i, other) => Err(self.mismatch(i, "integer polynomial", other)),
        }
    }

    fn mixed(&self, name: &str) -> Result<&'a MixedPolynomial, CliError> {
        match self.get(name)? {
            (_, Item::Mixed(p)) => Ok(p),
            (i, other) => Err(self.mismatch(i, "mixed polynomial", other)),
        }
    }

    fn divisor(&self, name: &str) -> Result<&'a Divisor, CliError> {
        match self.get(name)? {
            (_, Item::Divisor(d)) => Ok(d),
            (i, other) => Err(self.mismatch(i, "divisor", other)),
        }
    }

    fn enhanced(&self, name: &str) -> Result<&'a EnhancedMilnor, CliError> {
        match self.get(name)? {
            (_, Item::Enhanced(e)) => Ok(e),
            (i, other) => Err(self.mismatch(i, "enhanced Milnor number", other)),
        }
    }

    /// A mixed polynomial from `input` or an inline `source`.
    fn mixed_or_source(&self) -> Result<MixedPolynomial, CliError> {
        match self.fields.get("source") {
            Some(v) => {
                let text = v
                    .as_str()
                    .ok_or_else(|| CliError::Input(format!("step {}: \"source\" must be a string", self.index)))?;
                parse(text).map_err(core)
            }
            None => self.mixed("input").cloned(),
        }
    }
}

fn run_step(ctx: &mut Context, index: usize, step: &Value, items: &[Item]) -> Result<Item, CliError> {
    let fields = step
        .as_object()
        .ok_or_else(|| CliError::Input(format!("step {index} must be an object")))?;
    let op = fields
        .get("op")
        .and_then(Value::as_str)
        .ok_or_else(|| CliError::Input(format!("step {index} has no \"op\"")))?;
    let s = Step { index, fields, items };
    let item = match op {
        "parse" => Item::Mixed(s.mixed_or_source()?),
        "newton_faces" => {
            let np = newton_polytope(&s.mixed_or_source()?).map_err(core)?;
            Item::Report(json!({
                "vertices": np.vertices(),
                "faces": np.compact_faces().iter().map(|f| f.to_json()).collect::<Vec<_>>(),
            }))
        }
        "convenient" => Item::Report(json!(is_convenient(&s.mixed_or_source()?))),
        "nondegeneracy" => {
            let budget = SamplingBudget {
                samples: s.int_or("samples", 256)? as usize,
                ..SamplingBudget::default()
            };
            let reports = check_strong_nondegeneracy(&s.mixed_or_source()?, &budget, ctx.seed).map_err(core)?;
            Item::Report(Value::Array(reports.iter().map(|r| r.to_json()).collect()))
        }
        "degree" => {
            let eps = s.fields.get("eps").and_then(Value::as_f64).unwrap_or(1e-2);
            let r = mapping_degree(&s.mixed_or_source()?, eps, 256).map_err(core)?;
            Item::Report(json!({"degree": r.degree, "stable": r.stable, "eps": eps}))
        }
        "form" => Item::Form(form_from_json(s.field("rows")?)?),
        "lambda_matrix" => Item::Form(lambda_matrix(s.int("m")?).map_err(core)?),
        "brieskorn_form" => Item::Form(brieskorn_form(&s.ints("exponents")?).map_err(core)?),
        "join_tensor" => {
            let (l1, l2) = (s.form("left")?, s.form("right")?);
            Item::Form(join_tensor(l1, s.u32("n")?, l2, s.u32("m")?).map_err(core)?)
        }
        "extend" => Item::Form(extend(s.form("input")?, &s.ints("b")?, s.int_or("eps", 1)?).map_err(core)?),
        "congruent" => {
            let depth = s.int_or("depth", 8)?.max(0) as usize;
            let v = check_congruent(s.form("left")?, s.form("right")?, depth).map_err(core)?;
            Item::Report(v.to_json())
        }
        "congruence_invariants" => Item::Report(congruence_invariants(s.form("input")?).map_err(core)?.to_json()),
        "monodromy_charpoly" => Item::Poly(monodromy_charpoly(s.form("input")?).map_err(core)?),
        "polynomial" => Item::Poly(poly_from_json(s.field("coeffs")?)?),
        "zeta_from_charpolys" => {
            if let Some(list) = fields.get("inputs") {
                let refs = list
                    .as_array()
                    .ok_or_else(|| CliError::Input(format!("step {index}: \"inputs\" must be a list")))?;
                let mut ps = Vec::with_capacity(refs.len());
                for r in refs {
                    let j = r
                        .as_i64()
                        .ok_or_else(|| CliError::Input(format!("step {index}: references must be integers")))?;
                    match s.reference(j)? {
                        Item::Poly(p) => ps.push(p.clone()),
                        other => return Err(s.mismatch(j as usize, "integer polynomial", other)),
                    }
                }
                Item::Zeta(zeta_from_charpolys(&ps).map_err(core)?)
            } else {
                let (i, item) = s.get("input")?;
                let (middle, n_vars) = match item {
                    Item::Poly(p) => (p.clone(), s.int("n_vars")? as usize),
                    // A form's charpoly sits in degree k of a (k + 1)-variable germ.
                    Item::Form(f) => {
                        let n = match fields.get("n_vars") {
                            Some(_) => s.int("n_vars")? as usize,
                            None => f.k().map(|k| k as usize + 1).ok_or_else(|| {
                                CliError::Input(format!("step {index}: form has no k, give \"n_vars\""))
                            })?,
                        };
                        (monodromy_charpoly(f).map_err(core)?, n)
                    }
                    other => return Err(s.mismatch(i, "integer polynomial", other)),
                };
                Item::Zeta(zeta_from_middle_charpoly(&middle, n_vars).map_err(core)?)
            }
        }
        "reduced_zeta" => match s.get("input")? {
            (_, Item::Zeta(z)) => Item::Divisor(reduced_zeta(z)),
            (i, other) => return Err(s.mismatch(i, "zeta function", other)),
        },
        "divisor" => {
            let den = match fields.get("den") {
                Some(v) => poly_from_json(v)?,
                None => IntPolynomial::one(),
            };
            Item::Divisor(divisor_of(&poly_from_json(s.field("num")?)?, &den).map_err(core)?)
        }
        "divisor_join" => Item::Divisor(divisor_join(s.divisor("left")?, s.divisor("right")?)),
        "composed_product" => Item::Poly(composed_product(s.poly("left")?, s.poly("right")?).map_err(core)?),
        "brieskorn_enhanced" => Item::Enhanced(brieskorn_enhanced(&s.ints("exponents")?).map_err(core)?),
        "enhanced" => {
            let lambda = u8::try_from(s.int("lambda")?).unwrap_or(u8::MAX);
            let mu = u64::try_from(s.int("mu")?)
                .map_err(|_| CliError::Input(format!("step {index}: \"mu\" must be nonnegative")))?;
            Item::Enhanced(EnhancedMilnor::new(mu, lambda, s.u32("k")?).map_err(core)?)
        }
        "join_enhanced" => {
            Item::Enhanced(join_enhanced(s.enhanced("left")?, s.enhanced("right")?, s.u32("k")?).map_err(core)?)
        }
        "witness" => Item::Report(witness(s.int("ell")?, s.int("k")?).map_err(core)?.to_json()),
        other => {
            return Err(CliError::UnknownOperation {
                step: index,
                op: other.to_string(),
            })
        }
    };
    Ok(item)
}
