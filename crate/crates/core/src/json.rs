//! JSON formats for series, group elements, candidates, and reports.
//!
//! A series is `{ "m", "truncation", "mode": "rational"|"complex",
//! "terms": [ { "word": [ints], "tpow": int, "coeff": ... } ] }` with
//! rational coefficients as `"p/q"` strings and complex ones as
//! `[re, im]` pairs. A group element is `{ "s": 0|1, "w": int }`; a flat
//! element is a list of `{ "welem", "series" }` parts. A candidate
//! document wraps one series with its exponents, and builders attach a
//! provenance block (rational mode) or a convergence report (complex
//! mode) plus verification reports.
//!
//! Emission is canonical (terms in the deterministic storage order);
//! parsers accept object keys in any order and validate sizes, letter
//! ranges, and truncation bounds.

use crate::associator::{Candidate, VerifyReport};
use crate::construct::TIE_BREAK_RULE;
use crate::dihedral::{FlatElem, WElem};
use crate::error::{Error, Result};
use crate::scalar::{cx, Coeff, Cx, Rat};
use crate::series::{GSeries, Mono};
use crate::transcendental::ConvergenceReport;
use num::BigInt;
use num_traits::Zero;
use serde_json::{json, Map, Value};

/// Coefficient codec: ties a scalar type to its JSON shape and mode tag.
pub trait JsonCoeff: Coeff {
    const MODE: &'static str;
    fn coeff_to_json(&self) -> Value;
    fn coeff_from_json(v: &Value) -> Result<Self>;
}

impl JsonCoeff for Rat {
    const MODE: &'static str = "rational";

    fn coeff_to_json(&self) -> Value {
        Value::String(self.to_string())
    }

    fn coeff_from_json(v: &Value) -> Result<Self> {
        let s = v
            .as_str()
            .ok_or_else(|| Error::InvalidInput("rational coefficients are \"p/q\" strings".into()))?;
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n, d),
            None => (s, "1"),
        };
        let n: BigInt = num
            .trim()
            .parse()
            .map_err(|e| Error::InvalidInput(format!("bad numerator in {s:?}: {e}")))?;
        let d: BigInt = den
            .trim()
            .parse()
            .map_err(|e| Error::InvalidInput(format!("bad denominator in {s:?}: {e}")))?;
        if d.is_zero() {
            return Err(Error::InvalidInput(format!("zero denominator in {s:?}")));
        }
        Ok(Rat::new(n, d))
    }
}

impl JsonCoeff for Cx {
    const MODE: &'static str = "complex";

    fn coeff_to_json(&self) -> Value {
        json!([self.re, self.im])
    }

    fn coeff_from_json(v: &Value) -> Result<Self> {
        let pair = v
            .as_array()
            .filter(|a| a.len() == 2)
            .ok_or_else(|| Error::InvalidInput("complex coefficients are [re, im] pairs".into()))?;
        let part = |x: &Value| {
            x.as_f64()
                .ok_or_else(|| Error::InvalidInput("complex parts must be numbers".into()))
        };
        Ok(cx(part(&pair[0])?, part(&pair[1])?))
    }
}

fn field<'v>(obj: &'v Map<String, Value>, key: &str) -> Result<&'v Value> {
    obj.get(key)
        .ok_or_else(|| Error::InvalidInput(format!("missing field {key:?}")))
}

fn as_object(v: &Value) -> Result<&Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| Error::InvalidInput("expected a JSON object".into()))
}

fn get_u32(obj: &Map<String, Value>, key: &str) -> Result<u32> {
    field(obj, key)?
        .as_u64()
        .and_then(|x| u32::try_from(x).ok())
        .ok_or_else(|| Error::InvalidInput(format!("field {key:?} must be a small nonnegative integer")))
}

pub fn series_to_json<C: JsonCoeff>(x: &GSeries<C>) -> Value {
    let terms: Vec<Value> = x
        .terms()
        .map(|(mono, c)| {
            json!({
                "word": mono.word,
                "tpow": mono.tpow,
                "coeff": c.coeff_to_json(),
            })
        })
        .collect();
    json!({
        "m": x.m(),
        "truncation": x.trunc(),
        "mode": C::MODE,
        "terms": terms,
    })
}

pub fn series_from_json<C: JsonCoeff>(v: &Value) -> Result<GSeries<C>> {
    let obj = as_object(v)?;
    let mode = field(obj, "mode")?
        .as_str()
        .ok_or_else(|| Error::InvalidInput("field \"mode\" must be a string".into()))?;
    if mode != C::MODE {
        return Err(Error::InvalidInput(format!(
            "mode mismatch: document says {mode:?}, caller expects {:?}",
            C::MODE
        )));
    }
    let m = get_u32(obj, "m")?;
    if m < 3 {
        return Err(Error::InvalidInput("m must be at least 3".into()));
    }
    let trunc = get_u32(obj, "truncation")?;
    let terms = field(obj, "terms")?
        .as_array()
        .ok_or_else(|| Error::InvalidInput("field \"terms\" must be a list".into()))?;
    let mut out = GSeries::zero(m, trunc);
    for term in terms {
        let tobj = as_object(term)?;
        let word_vals = field(tobj, "word")?
            .as_array()
            .ok_or_else(|| Error::InvalidInput("term field \"word\" must be a list".into()))?;
        let mut word = Vec::with_capacity(word_vals.len());
        for w in word_vals {
            let letter = w
                .as_u64()
                .filter(|&x| x + 1 < m as u64)
                .ok_or_else(|| {
                    Error::InvalidInput(format!("word letters must be integers below {}", m - 1))
                })?;
            word.push(letter as u8);
        }
        let tpow = get_u32(tobj, "tpow")?;
        let mono = Mono::new(word, tpow);
        if mono.degree() > trunc {
            return Err(Error::InvalidInput(format!(
                "term degree {} exceeds the truncation {trunc}",
                mono.degree()
            )));
        }
        let coeff = C::coeff_from_json(field(tobj, "coeff")?)?;
        out.add_term(mono, coeff);
    }
    Ok(out)
}

pub fn welem_to_json(g: &WElem) -> Value {
    let (e, k) = g.normal_form();
    json!({ "s": e, "w": k })
}

pub fn welem_from_json(m: u32, v: &Value) -> Result<WElem> {
    let obj = as_object(v)?;
    let e = field(obj, "s")?
        .as_u64()
        .filter(|&x| x <= 1)
        .ok_or_else(|| Error::InvalidInput("field \"s\" must be 0 or 1".into()))?;
    let k = field(obj, "w")?
        .as_i64()
        .ok_or_else(|| Error::InvalidInput("field \"w\" must be an integer".into()))?;
    Ok(WElem::new(m, e as u8, k))
}

pub fn flat_to_json<C: JsonCoeff>(x: &FlatElem<C>) -> Value {
    let parts: Vec<Value> = x
        .parts()
        .map(|(g, series)| {
            json!({
                "welem": welem_to_json(g),
                "series": series_to_json(series),
            })
        })
        .collect();
    Value::Array(parts)
}

pub fn flat_from_json<C: JsonCoeff>(v: &Value) -> Result<FlatElem<C>> {
    let parts = v
        .as_array()
        .ok_or_else(|| Error::InvalidInput("flat elements are lists of parts".into()))?;
    let mut out: Option<FlatElem<C>> = None;
    for part in parts {
        let obj = as_object(part)?;
        let series: GSeries<C> = series_from_json(field(obj, "series")?)?;
        let g = welem_from_json(series.m(), field(obj, "welem")?)?;
        let piece = FlatElem::from_pair(g, series);
        out = Some(match out {
            None => piece,
            Some(acc) => acc.add(&piece),
        });
    }
    out.ok_or_else(|| Error::InvalidInput("flat element needs at least one part".into()))
}

pub fn report_to_json(r: &VerifyReport) -> Value {
    json!({
        "equation": r.equation,
        "pass": r.pass,
        "first_bad_degree": r.first_bad_degree,
        "residual_norm": r.residual_norm,
    })
}

pub fn report_from_json(v: &Value) -> Result<VerifyReport> {
    let obj = as_object(v)?;
    let equation = field(obj, "equation")?
        .as_str()
        .ok_or_else(|| Error::InvalidInput("field \"equation\" must be a string".into()))?
        .to_string();
    let pass = field(obj, "pass")?
        .as_bool()
        .ok_or_else(|| Error::InvalidInput("field \"pass\" must be a boolean".into()))?;
    let first_bad_degree = match obj.get("first_bad_degree") {
        None | Some(Value::Null) => None,
        Some(x) => Some(
            x.as_u64()
                .and_then(|d| u32::try_from(d).ok())
                .ok_or_else(|| Error::InvalidInput("bad \"first_bad_degree\"".into()))?,
        ),
    };
    let residual_norm = match obj.get("residual_norm") {
        None | Some(Value::Null) => None,
        Some(x) => Some(
            x.as_f64()
                .ok_or_else(|| Error::InvalidInput("bad \"residual_norm\"".into()))?,
        ),
    };
    Ok(VerifyReport { equation, pass, first_bad_degree, residual_norm })
}

/// Candidate core: exponents plus the series, under a mode tag.
pub fn candidate_to_json<C: JsonCoeff>(cand: &Candidate<C>) -> Value {
    json!({
        "mode": C::MODE,
        "lambda": cand.lambda().coeff_to_json(),
        "mu": cand.mu().coeff_to_json(),
        "flip_duality": cand.uses_flip_duality(),
        "series": series_to_json(cand.phi()),
    })
}

pub fn candidate_from_json<C: JsonCoeff>(v: &Value) -> Result<Candidate<C>> {
    let obj = as_object(v)?;
    let phi: GSeries<C> = series_from_json(field(obj, "series")?)?;
    let lambda = C::coeff_from_json(field(obj, "lambda")?)?;
    let mu = match obj.get("mu") {
        None | Some(Value::Null) => lambda.clone(),
        Some(x) => C::coeff_from_json(x)?,
    };
    let cand = Candidate::with_exponents(phi, lambda, mu)?;
    Ok(match obj.get("flip_duality").and_then(Value::as_bool) {
        Some(false) => cand.without_flip_duality(),
        _ => cand,
    })
}

/// A parsed candidate document of either mode.
pub enum AnyCandidate {
    Rational(Candidate<Rat>),
    Complex(Candidate<Cx>),
}

pub fn any_candidate_from_json(v: &Value) -> Result<AnyCandidate> {
    let obj = as_object(v)?;
    match field(obj, "mode")?.as_str() {
        Some("rational") => Ok(AnyCandidate::Rational(candidate_from_json(v)?)),
        Some("complex") => Ok(AnyCandidate::Complex(candidate_from_json(v)?)),
        other => Err(Error::InvalidInput(format!("unknown mode {other:?}"))),
    }
}

/// Document for an exactly constructed candidate: the candidate plus a
/// provenance block naming the inputs and the tie-break rule, plus any
/// verification reports.
pub fn rational_build_document(cand: &Candidate<Rat>, reports: &[VerifyReport]) -> Value {
    let mut doc = candidate_to_json(cand);
    doc["provenance"] = json!({
        "m": cand.m(),
        "lambda": cand.lambda().coeff_to_json(),
        "degree": cand.trunc(),
        "tie_break": TIE_BREAK_RULE,
    });
    doc["reports"] = Value::Array(reports.iter().map(report_to_json).collect());
    doc
}

/// Document for an analytically glued candidate: the candidate plus the
/// per-degree convergence tails and any verification reports.
pub fn transcendental_document(
    cand: &Candidate<Cx>,
    convergence: &ConvergenceReport,
    reports: &[VerifyReport],
) -> Value {
    let mut doc = candidate_to_json(cand);
    doc["convergence"] = json!({ "tail_by_degree": convergence.tail_by_degree });
    doc["reports"] = Value::Array(reports.iter().map(report_to_json).collect());
    doc
}
