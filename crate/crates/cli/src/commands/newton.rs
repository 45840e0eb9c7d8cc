use chromatic_core::newton::NewtonPolygon;
use serde_json::{json, Value};

use super::outcome;
use crate::args::NewtonArgs;
use crate::error::{pre, CliError};
use crate::Outcome;

/// `d/h` or `d/hxm`; a bare integer `d` means `d/1`.
fn parse_slope(s: &str) -> Result<(u64, u64, u64), CliError> {
    let bad = || pre(format!("slope {s:?} is not of the form d/h or d/hxm"));
    let (frac, mult) = match s.split_once('x') {
        Some((f, m)) => (f, m.trim().parse().map_err(|_| bad())?),
        None => (s, 1),
    };
    let (d, h) = match frac.split_once('/') {
        Some((d, h)) => (d.trim().parse().map_err(|_| bad())?, h.trim().parse().map_err(|_| bad())?),
        None => (frac.trim().parse().map_err(|_| bad())?, 1),
    };
    Ok((d, h, mult))
}

pub fn polygon_json(p: &NewtonPolygon) -> Value {
    let (height, dim) = p.total();
    json!({
        "height": height,
        "dimension": dim,
        "breakpoints": p.breakpoints(),
        "slopes": p.segments().iter().map(|s| json!({ "slope": s.slope().to_string(), "d": s.d, "h": s.h, "mult": s.mult })).collect::<Vec<_>>(),
        "polarizable": p.is_polarizable(),
    })
}

fn breakpoint_text(p: &NewtonPolygon) -> String {
    p.breakpoints().iter().map(|(x, y)| format!("({x},{y})")).collect::<Vec<_>>().join(",")
}

pub fn run(a: &NewtonArgs) -> Result<Outcome, CliError> {
    let pairs: Vec<(u64, u64, u64)> = a.slopes.split(',').filter(|s| !s.trim().is_empty()).map(parse_slope).collect::<Result<_, _>>()?;
    let p = NewtonPolygon::from_slopes(&pairs).map_err(pre)?;
    let dual = p.dual();
    let mut outputs = polygon_json(&p);
    outputs["dual"] = polygon_json(&dual);
    outputs["notes"] = json!(p.notes());
    let (height, dim) = p.total();
    let mut text = format!("breakpoints {}\nheight {height}, dimension {dim}\ndual breakpoints {}\npolarizable: {}\n", breakpoint_text(&p), breakpoint_text(&dual), p.is_polarizable());
    for n in p.notes() {
        text.push_str(&format!("note: {n}\n"));
    }
    text.push_str(&p.render_ascii());
    if !text.ends_with('\n') {
        text.push('\n');
    }
    Ok(outcome("newton", json!({ "slopes": a.slopes }), outputs, None, text))
}
