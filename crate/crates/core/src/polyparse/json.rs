//! `{"n": 2, "terms": [{"nu": [2,0], "mu": [0,0], "c": ["1/1", "0/1"]}]}`

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{
    rational_from_str, rational_to_string, GaussianRational, MixedMonomial, MixedPolynomial,
    PolyError,
};

#[derive(Serialize, Deserialize)]
struct TermRepr {
    nu: Vec<u32>,
    mu: Vec<u32>,
    c: [String; 2],
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    n: usize,
    terms: Vec<TermRepr>,
}

pub(super) fn to_json(p: &MixedPolynomial) -> Value {
    let repr = PolyRepr {
        n: p.n(),
        terms: p
            .terms()
            .iter()
            .map(|(m, c)| TermRepr {
                nu: m.nu.clone(),
                mu: m.mu.clone(),
                c: [rational_to_string(&c.re), rational_to_string(&c.im)],
            })
            .collect(),
    };
    serde_json::to_value(repr).expect("plain data serializes")
}

pub(super) fn from_json(value: &Value) -> Result<MixedPolynomial, PolyError> {
    let repr: PolyRepr =
        serde_json::from_value(value.clone()).map_err(|e| PolyError::Json(e.to_string()))?;
    let mut terms = Vec::with_capacity(repr.terms.len());
    for t in repr.terms {
        if t.nu.len() != repr.n || t.mu.len() != repr.n {
            return Err(PolyError::Json(format!(
                "term exponent vectors must have length {}",
                repr.n
            )));
        }
        let parse = |s: &str| {
            rational_from_str(s).ok_or_else(|| PolyError::Json(format!("bad rational `{s}`")))
        };
        let c = GaussianRational::new(parse(&t.c[0])?, parse(&t.c[1])?);
        terms.push((MixedMonomial::new(t.nu, t.mu)?, c));
    }
    MixedPolynomial::from_terms(repr.n, terms)
}
