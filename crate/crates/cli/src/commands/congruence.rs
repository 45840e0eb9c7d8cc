use chromatic_core::arith::Submodule;
use chromatic_core::congruence::{compute_a, compute_b, serre_congruence_check, CongruenceGroup, WitnessSpace};
use chromatic_core::modforms::{delta, eisenstein, sturm_bound, QSeries, Rationals, WeightedForm};
use serde_json::{json, Value};

use super::outcome;
use crate::args::{CongruenceCmd, GlobalOpts, SpaceArg};
use crate::cache::{resolve_dir, QCache};
use crate::error::{pre, CliError};
use crate::Outcome;

pub const DEFAULT_SERRE_PREC: usize = 50;

fn open_cache(g: &GlobalOpts) -> Result<QCache, CliError> {
    Ok(QCache::open(resolve_dir(g.cache_dir.as_deref()))?)
}

fn eisenstein_cached(cache: &QCache, t: u32, prec: usize) -> Result<QSeries<Rationals>, CliError> {
    eisenstein(t, 1).map_err(pre)?;
    Ok(cache.get_or_compute(&format!("eisenstein:{t}"), prec, |n| eisenstein(t, n).expect("weight checked")).0)
}

fn delta_cached(cache: &QCache, prec: usize) -> QSeries<Rationals> {
    cache.get_or_compute("delta", prec, delta).0
}

/// Product of factors `1`, `E<t>^<e>`, `Delta^<e>` (negative powers of `Delta` are poles).
fn parse_form(cache: &QCache, s: &str, prec: usize) -> Result<WeightedForm, CliError> {
    let mut weight = 0i64;
    let mut delta_exp = 0i64;
    let mut series = QSeries::one(Rationals, prec);
    for tok in s.split('*').map(str::trim) {
        let (base, exp) = match tok.split_once('^') {
            Some((b, e)) => (b.trim(), e.trim().parse::<i64>().map_err(|_| pre(format!("bad exponent in {tok:?}")))?),
            None => (tok, 1),
        };
        if base == "1" {
            continue;
        }
        if base == "Delta" || base == "D" {
            delta_exp += exp;
            weight += 12 * exp;
            continue;
        }
        let t: u32 = base.strip_prefix('E').and_then(|w| w.parse().ok()).ok_or_else(|| pre(format!("unknown factor {tok:?}")))?;
        if exp < 0 {
            return Err(pre(format!("negative power of E{t} is not a modular form")));
        }
        series = series.mul(&eisenstein_cached(cache, t, prec)?.pow(exp as u32));
        weight += t as i64 * exp;
    }
    let pole = (-delta_exp).max(0) as u32;
    let positive = delta_exp.max(0) as u32;
    let cleared = series.mul(&delta_cached(cache, prec).pow(positive));
    Ok(WeightedForm { weight, pole_order: pole, cleared })
}

fn group_json(g: &CongruenceGroup) -> Value {
    json!({
        "modulus": g.ring().modulus().to_string(),
        "log_size": g.log_size,
        "log_exponent": g.log_exponent,
        "exponent": g.exponent().to_string(),
        "monomials": g.monomials.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
        "generators": g.generators.iter().map(|x| json!({
            "coordinates": x.coordinates.iter().map(u64::to_string).collect::<Vec<_>>(),
            "log_order": x.log_order,
        })).collect::<Vec<_>>(),
        "verdict": g.verdict.map(|v| v.as_str()),
        "weight_drop": g.weight_drop,
    })
}

fn group_text(g: &CongruenceGroup) -> String {
    format!(
        "order p^{}, exponent {}, {} generator(s) modulo {}\n",
        g.log_size,
        g.exponent(),
        g.generators.len(),
        g.ring().modulus()
    )
}

pub fn run(c: &CongruenceCmd, g: &GlobalOpts) -> Result<Outcome, CliError> {
    let m_max = g.mmax.unwrap_or(0);
    match *c {
        CongruenceCmd::A { p, l, t, j } => {
            let prec = g.prec.unwrap_or_else(|| sturm_bound(t, l, m_max));
            let group = compute_a(p, l, t, j, m_max, prec)?;
            let mut outputs = group_json(&group);
            let mut text = group_text(&group);
            if t >= 4 && t % 2 == 0 {
                let cache = open_cache(g)?;
                let n = group.precision_used;
                let e = eisenstein_cached(&cache, t as u32, n)?.mul(&delta_cached(&cache, n).pow(m_max));
                let v = e.reduce(group.ring()).map_err(pre)?.coeffs().to_vec();
                let rows: Vec<Vec<u64>> = group.generators.iter().map(|x| x.series.coeffs().to_vec()).collect();
                let inside = Submodule::new(group.ring(), n, &rows).contains(&v);
                let log_order = Submodule::order_log(group.ring(), &v);
                outputs["eisenstein"] = json!({ "in_group": inside, "log_order": log_order });
                text.push_str(&format!("E_{t} in group: {inside}, order p^{log_order}\n"));
            }
            let inputs = json!({ "p": p, "l": l, "t": t, "j": j, "mmax": m_max, "prec": prec });
            Ok(outcome("congruence A", inputs, outputs, Some(group.precision_used), text))
        }
        CongruenceCmd::B { p, l, t, j, k } => {
            let prec = g.prec.unwrap_or_else(|| sturm_bound(t, l, m_max));
            let space = match g.witness_space {
                Some(SpaceArg::Old) => WitnessSpace::Old,
                Some(SpaceArg::Full) => WitnessSpace::Full,
                None if l == 2 => WitnessSpace::Full,
                None => WitnessSpace::Old,
            };
            let group = compute_b(p, l, t, j, k, m_max, prec, space)?;
            let mut text = group_text(&group);
            if let Some(v) = group.verdict {
                text.push_str(&format!("verdict: {}\n", v.as_str()));
            }
            let inputs = json!({ "p": p, "l": l, "t": t, "j": j, "k": k, "mmax": m_max, "prec": prec, "witness_space": space.as_str() });
            Ok(outcome("congruence B", inputs, group_json(&group), Some(group.precision_used), text))
        }
        CongruenceCmd::Serre { p, k, ref f1, ref f2 } => {
            let prec = g.prec.unwrap_or(DEFAULT_SERRE_PREC);
            let cache = open_cache(g)?;
            let a = parse_form(&cache, f1, prec)?;
            let b = parse_form(&cache, f2, prec)?;
            let v = serre_congruence_check(&a, &b, p, k)?;
            let outputs = json!({ "verdict": v.as_str(), "weights": [a.weight, b.weight] });
            let text = format!("weights {} and {}: {}\n", a.weight, b.weight, v.as_str());
            let inputs = json!({ "p": p, "k": k, "f1": f1, "f2": f2, "prec": prec });
            Ok(outcome("congruence serre", inputs, outputs, Some(prec), text))
        }
    }
}
