use chromatic_core::level1::{class_group, classical_generator, decomposition_count, find_generator_prime, j_homotopy_orders, torsion_units};
use serde_json::json;

use super::{field, outcome, rat_str};
use crate::args::Level1Cmd;
use crate::error::CliError;
use crate::Outcome;

pub fn run(c: &Level1Cmd) -> Result<Outcome, CliError> {
    match *c {
        Level1Cmd::Classgroup { d } => {
            let f = field(d)?;
            let g = class_group(&f);
            let forms: Vec<[i64; 3]> = g.forms.iter().map(|q| [q.a, q.b, q.c]).collect();
            let outputs = json!({
                "discriminant": g.disc,
                "h": g.order(),
                "forms": forms,
                "structure": g.structure(),
                "table": g.table,
                "torsion_units": torsion_units(&f),
            });
            let fs: Vec<String> = forms.iter().map(|[a, b, c]| format!("({a},{b},{c})")).collect();
            let text = format!("D = {}, h = {}\nforms {}\nstructure {:?}\n", g.disc, g.order(), fs.join(","), g.structure());
            Ok(outcome("level1 classgroup", json!({ "d": d }), outputs, None, text))
        }
        Level1Cmd::Genprime { d, p, cap } => {
            let f = field(d)?;
            let w = find_generator_prime(&f, p, cap)?;
            let (a, b) = w.t.in_sqrt_d(&f);
            let outputs = json!({
                "l": w.l,
                "t": [rat_str(&a), rat_str(&b)],
                "q_mod_p2": w.q_mod_p2.to_string(),
                "q_power_mod_p2": w.q_power_mod_p2.to_string(),
                "torsion_units": torsion_units(&f),
                "rejected": w.rejected.iter().map(|(l, why)| json!({ "l": l, "reason": why })).collect::<Vec<_>>(),
            });
            let text = format!(
                "l = {}, t = {a} + {b} sqrt({d})\nq = {} mod {}, q^{} = {} mod {}\n",
                w.l,
                w.q_mod_p2,
                p * p,
                torsion_units(&f),
                w.q_power_mod_p2,
                p * p
            );
            Ok(outcome("level1 genprime", json!({ "d": d, "p": p, "cap": cap }), outputs, None, text))
        }
        Level1Cmd::Jorders { p, k, tmin, tmax } => {
            if p < 3 || !chromatic_core::arith::is_prime(p) {
                return Err(crate::error::pre(format!("p = {p} must be an odd prime")));
            }
            let k = k.unwrap_or_else(|| classical_generator(p));
            let table = j_homotopy_orders(p, k, tmin, tmax)?;
            let rows: Vec<_> = table.rows.iter().map(|r| json!({ "t": r.t, "nu": r.nu, "order": r.order.to_string() })).collect();
            let mut text = format!("p = {p}, k = {k}\n{:>6} {:>4} {:>12}\n", "t", "nu", "order");
            for r in &table.rows {
                text.push_str(&format!("{:>6} {:>4} {:>12}\n", r.t, r.nu, r.order));
            }
            Ok(outcome("level1 jorders", json!({ "p": p, "k": k, "tmin": tmin, "tmax": tmax }), json!({ "rows": rows }), None, text))
        }
        Level1Cmd::Decomp { d, p } => {
            let f = field(d)?;
            let dc = decomposition_count(&f, p)?;
            let outputs = json!({
                "prime": { "l": dc.prime.l, "b": dc.prime.b },
                "f": dc.f,
                "factors": dc.factors,
                "h": dc.h,
            });
            let text = format!("f = {}, {} factor(s), h = {}\n", dc.f, dc.factors, dc.h);
            Ok(outcome("level1 decomp", json!({ "d": d, "p": p }), outputs, None, text))
        }
    }
}
