use chromatic_core::arith::Rat;
use chromatic_core::hondatate::{
    invariants_and_dimension, newton_polygon, slopes_of_type, validate_type, CMPlaceStructure, HondaTateError, PAdicType, Place,
    TypeViolation,
};
use serde_json::{json, Value};

use super::{outcome, parse_rat, rat_list};
use crate::args::HondaTateArgs;
use crate::error::{pre, CliError};
use crate::Outcome;

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value, CliError> {
    v.get(key).ok_or_else(|| pre(format!("type file lacks `{key}`")))
}

fn uint(v: &Value, key: &str) -> Result<u64, CliError> {
    field(v, key)?.as_u64().ok_or_else(|| pre(format!("`{key}` must be a nonnegative integer")))
}

fn rat_value(v: &Value) -> Result<Rat, CliError> {
    match v {
        Value::String(s) => parse_rat(s),
        Value::Number(n) => n.as_i64().map(Rat::from).ok_or_else(|| pre("eta entries must be integers or strings")),
        _ => Err(pre("eta entries must be integers or strings")),
    }
}

fn type_from_json(v: &Value) -> Result<PAdicType, CliError> {
    let places = field(v, "places")?
        .as_array()
        .ok_or_else(|| pre("`places` must be an array"))?
        .iter()
        .map(|x| Ok(Place::new(field(x, "id")?.as_str().ok_or_else(|| pre("place ids are strings"))?, uint(x, "e")?, uint(x, "f")?)))
        .collect::<Result<Vec<_>, CliError>>()?;
    let conj = field(v, "conj")?
        .as_array()
        .ok_or_else(|| pre("`conj` must be an array"))?
        .iter()
        .map(|c| c.as_u64().map(|c| c as usize).ok_or_else(|| pre("`conj` entries are indices")))
        .collect::<Result<Vec<_>, _>>()?;
    let real = v.get("real_places").and_then(Value::as_u64).unwrap_or(0);
    let s = CMPlaceStructure::new(uint(v, "p")?, places, conj, uint(v, "degree")?, real).map_err(pre)?;
    let eta = field(v, "eta")?.as_array().ok_or_else(|| pre("`eta` must be an array"))?.iter().map(rat_value).collect::<Result<Vec<_>, _>>()?;
    PAdicType::new(s, eta).map_err(pre)
}

pub fn type_to_json(t: &PAdicType) -> Value {
    let s = &t.structure;
    json!({
        "p": s.p(),
        "places": s.places().iter().map(|x| json!({ "id": x.id, "e": x.e, "f": x.f })).collect::<Vec<_>>(),
        "conj": s.conj(),
        "degree": s.degree(),
        "real_places": s.real_places(),
        "eta": rat_list(&t.eta),
    })
}

fn violation_text(v: &TypeViolation) -> String {
    match v {
        TypeViolation::ConjugateSum { place, sum } => format!("slopes at {place} and its conjugate sum to {sum}, not 1"),
        TypeViolation::SlopeRange { place, slope } => format!("slope {slope} at {place} lies outside [0, 1]"),
    }
}

pub fn run(a: &HondaTateArgs) -> Result<Outcome, CliError> {
    let t = match (&a.type_file, a.split_height) {
        (Some(path), None) => {
            let bytes = std::fs::read(path)?;
            let v: Value = serde_json::from_slice(&bytes).map_err(|e| pre(format!("type file is not JSON: {e}")))?;
            type_from_json(&v)?
        }
        (None, Some(n)) if n >= 1 => PAdicType::split_height(a.p, n),
        _ => return Err(pre("give either --type FILE or --split-height N (N >= 1)")),
    };
    if let Err(vs) = validate_type(&t) {
        return Err(pre(vs.iter().map(violation_text).collect::<Vec<_>>().join("; ")));
    }
    let inv = invariants_and_dimension(&t).map_err(pre)?;
    let slopes = slopes_of_type(&t).map_err(pre)?;
    let (poly, poly_err) = match newton_polygon(&t) {
        Ok(p) => (Some(p), None),
        Err(e @ HondaTateError::NonRealizable { .. }) => (None, Some(e.to_string())),
        Err(e) => return Err(pre(e)),
    };
    let outputs = json!({
        "inv": rat_list(&inv.inv),
        "real_inv": rat_list(&inv.real_inv),
        "m": inv.m,
        "dim_a": inv.dim_a.to_string(),
        "slopes": rat_list(&slopes),
        "newton": poly.as_ref().map(super::newton::polygon_json),
        "newton_error": poly_err,
    });
    let ids: Vec<&str> = t.structure.places().iter().map(|x| x.id.as_str()).collect();
    let mut text = String::new();
    for ((id, i), s) in ids.iter().zip(&inv.inv).zip(&slopes) {
        text.push_str(&format!("{id}: slope {s}, inv {i}\n"));
    }
    text.push_str(&format!("m = {}, dim A = {}\n", inv.m, inv.dim_a));
    if let Some(p) = &poly {
        let bps: Vec<String> = p.breakpoints().iter().map(|(x, y)| format!("({x},{y})")).collect();
        text.push_str(&format!("newton breakpoints {}\n", bps.join(",")));
    }
    Ok(outcome("hondatate", json!({ "type": type_to_json(&t) }), outputs, None, text))
}
