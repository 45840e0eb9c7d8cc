use chromatic_core::hermitian::{
    global_classify_gu, global_exists_u, local_class_u, norm_index, GUClassification, GlobalFormSpec, LocalClass, LocalFormClass, Place,
    Splitting,
};
use serde_json::{json, Value};

use super::{field, outcome, parse_place, parse_rats};
use crate::args::FormsCmd;
use crate::error::{pre, CliError};
use crate::Outcome;

fn splitting_str(s: Splitting) -> &'static str {
    match s {
        Splitting::Split => "split",
        Splitting::Inert => "inert",
        Splitting::Ramified => "ramified",
        Splitting::Archimedean => "archimedean",
    }
}

fn class_json(c: &LocalFormClass) -> Value {
    let class = match c.class {
        LocalClass::SplitTrivial => json!({ "kind": "split-trivial" }),
        LocalClass::Nonsplit(b) => json!({ "kind": "nonsplit", "disc_class": b }),
        LocalClass::Signature { p, q } => json!({ "kind": "signature", "p": p, "q": q }),
    };
    json!({ "place": c.place.to_string(), "class": class, "xi": c.xi() })
}

fn class_text(c: &LocalFormClass) -> String {
    let body = match c.class {
        LocalClass::SplitTrivial => "split, trivial".to_owned(),
        LocalClass::Nonsplit(b) => format!("disc class {b}"),
        LocalClass::Signature { p, q } => format!("signature ({p}, {q})"),
    };
    format!("{}: {body}, xi = {}", c.place, c.xi())
}

/// `l:c` or `inf:p,q`.
fn parse_local(f: &chromatic_core::hermitian::QuadImagField, s: &str) -> Result<LocalFormClass, CliError> {
    let (place, class) = s.split_once(':').ok_or_else(|| pre(format!("local datum {s:?} is not place:class")))?;
    let place = parse_place(place)?;
    let bad = || pre(format!("cannot read the class in {s:?}"));
    let class = match f.splitting(place) {
        Splitting::Archimedean => {
            let (p, q) = class.split_once(',').ok_or_else(bad)?;
            LocalClass::Signature { p: p.trim().parse().map_err(|_| bad())?, q: q.trim().parse().map_err(|_| bad())? }
        }
        Splitting::Split => match class.trim() {
            "0" => LocalClass::SplitTrivial,
            _ => return Err(pre(format!("{place} splits; its class is trivial"))),
        },
        _ => LocalClass::Nonsplit(class.trim().parse().map_err(|_| bad())?),
    };
    Ok(LocalFormClass { place, class })
}

pub fn run(c: &FormsCmd) -> Result<Outcome, CliError> {
    match c {
        FormsCmd::Local { d, place, entries } => {
            let f = field(*d)?;
            let pl = parse_place(place)?;
            let es = parse_rats(entries)?;
            let cls = local_class_u(&f, es.len(), pl, &es).map_err(pre)?;
            let idx = match pl {
                Place::Prime(_) => Some(norm_index(&f, pl).map_err(pre)?),
                Place::Infinity => None,
            };
            let outputs = json!({
                "splitting": splitting_str(f.splitting(pl)),
                "norm_index": idx,
                "local": class_json(&cls),
            });
            let text = format!("{} ({})\n", class_text(&cls), splitting_str(f.splitting(pl)));
            Ok(outcome("forms local", json!({ "d": d, "place": pl.to_string(), "entries": entries }), outputs, None, text))
        }
        FormsCmd::Global { d, entries, n, local } => {
            let f = field(*d)?;
            let (spec, inputs) = match (entries, n) {
                (Some(e), _) => (GlobalFormSpec::from_diagonal(f, &parse_rats(e)?).map_err(pre)?, json!({ "d": d, "entries": e })),
                (None, Some(n)) => {
                    let data = local.iter().map(|s| parse_local(&f, s)).collect::<Result<Vec<_>, _>>()?;
                    (GlobalFormSpec::new(f, *n, data).map_err(pre)?, json!({ "d": d, "n": n, "local": local }))
                }
                (None, None) => return Err(pre("give --entries or -n with --local data")),
            };
            let exists = global_exists_u(&spec);
            let gu = match global_classify_gu(&spec) {
                GUClassification::OddRank { signature } => json!({ "rank_parity": "odd", "signature": [signature.0, signature.1] }),
                GUClassification::EvenRank { exists } => json!({ "rank_parity": "even", "exists": exists }),
            };
            let outputs = json!({
                "n": spec.n(),
                "local": spec.local().iter().map(class_json).collect::<Vec<_>>(),
                "exists_u": exists,
                "gu": gu,
            });
            let mut text: String = spec.local().iter().map(|c| class_text(c) + "\n").collect();
            text.push_str(&format!("global U-form exists: {exists}\n"));
            match global_classify_gu(&spec) {
                GUClassification::OddRank { signature } => text.push_str(&format!("GU class: signature {{{}, {}}}\n", signature.0, signature.1)),
                GUClassification::EvenRank { exists } => text.push_str(&format!("GU class exists: {exists}\n")),
            }
            Ok(outcome("forms global", inputs, outputs, None, text))
        }
    }
}
