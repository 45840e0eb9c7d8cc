use chromatic_core::greek::{alpha_invariant_order, beta_invariant_exists, InvariantVerdict};
use serde_json::{json, Value};

use super::outcome;
use crate::args::GreekCmd;
use crate::error::{pre, CliError};
use crate::Outcome;

fn verdict_json(v: &InvariantVerdict, p: u64) -> (Value, String) {
    match v {
        InvariantVerdict::Exists { log_order } => {
            let order = p.pow(*log_order);
            (json!({ "exists": true, "log_order": log_order, "order": order.to_string() }), format!("exists, order {order}"))
        }
        InvariantVerdict::DoesNotExist => (json!({ "exists": false }), "does not exist".to_owned()),
    }
}

pub fn run(c: &GreekCmd) -> Result<Outcome, CliError> {
    match *c {
        GreekCmd::Alpha { p, t, j } => {
            let v = alpha_invariant_order(p, t, j).map_err(pre)?;
            let (outputs, text) = verdict_json(&v, p);
            Ok(outcome("greek alpha", json!({ "p": p, "t": t, "j": j }), outputs, None, format!("{text}\n")))
        }
        GreekCmd::Beta { p, i, j, k } => {
            let b = beta_invariant_exists(p, i, j, k).map_err(pre)?;
            let (mut outputs, text) = verdict_json(&b.verdict, p);
            outputs["t"] = json!(b.t);
            outputs["m"] = json!(b.m);
            outputs["k_bound"] = json!(b.k_bound);
            outputs["nu_zero_flag"] = json!(b.nu_zero_flag);
            outputs["failed_condition"] = json!(b.failed_condition);
            let mut text = format!("{text}\nt = {}, m = {}, k bound = {}\n", b.t, b.m, b.k_bound);
            if let Some(c) = b.failed_condition {
                text.push_str(&format!("condition {c} fails\n"));
            }
            if b.nu_zero_flag {
                text.push_str("nu_p(i) = 0: the literal bracketing admits no k\n");
            }
            Ok(outcome("greek beta", json!({ "p": p, "i": i, "j": j, "k": k }), outputs, None, text))
        }
    }
}
