mod building;
mod congruence;
mod forms;
mod greek;
mod hondatate;
mod level1;
mod newton;

use chromatic_core::arith::Rat;
use chromatic_core::hermitian::{Place, QuadImagField};
use serde_json::Value;

use crate::args::{Cli, Command};
use crate::error::{pre, CliError};
use crate::Outcome;

pub fn dispatch(cli: &Cli) -> Result<Outcome, CliError> {
    let g = &cli.global;
    match &cli.command {
        Command::Greek(c) => greek::run(c),
        Command::Congruence(c) => congruence::run(c, g),
        Command::Newton(a) => newton::run(a),
        Command::Hondatate(a) => hondatate::run(a),
        Command::Forms(c) => forms::run(c),
        Command::Building(c) => building::run(c, g),
        Command::Level1(c) => level1::run(c),
    }
}

pub(crate) fn outcome(command: &str, inputs: Value, outputs: Value, precision_used: Option<usize>, text: String) -> Outcome {
    Outcome { command: command.to_owned(), inputs, outputs, precision_used, text }
}

pub(crate) fn rat_str(r: &Rat) -> Value {
    Value::String(r.to_string())
}

pub(crate) fn rat_list(rs: &[Rat]) -> Value {
    Value::Array(rs.iter().map(rat_str).collect())
}

pub(crate) fn parse_rat(s: &str) -> Result<Rat, CliError> {
    s.trim().parse().map_err(|e| pre(format!("cannot read {s:?} as a rational: {e}")))
}

pub(crate) fn parse_rats(s: &str) -> Result<Vec<Rat>, CliError> {
    s.split(',').filter(|x| !x.trim().is_empty()).map(parse_rat).collect()
}

pub(crate) fn parse_place(s: &str) -> Result<Place, CliError> {
    match s.trim() {
        "inf" | "infinity" => Ok(Place::Infinity),
        x => x.parse().map(Place::Prime).map_err(|_| pre(format!("place {x:?} is neither a prime nor `inf`"))),
    }
}

pub(crate) fn field(d: i64) -> Result<QuadImagField, CliError> {
    QuadImagField::new(d).map_err(pre)
}
