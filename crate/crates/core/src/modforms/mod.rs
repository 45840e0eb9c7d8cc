//! q-expansions of level one modular forms: Bernoulli numbers, Eisenstein series, bases.

mod basis;
mod bernoulli;
mod eisenstein;
mod level_two;
mod series;

pub use basis::{basis_monomials, dim_mk, spanning_monomials, sturm_bound, Monomial, SeriesFactory, WeightedForm};
pub use bernoulli::{bernoulli, eisenstein_constant};
pub use eisenstein::{delta, eisenstein, sigma};
pub use level_two::{level_two_a, level_two_d, level_two_exponents};
pub use series::{CoeffRing, QSeries, Rationals};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModFormError {
    #[error("Eisenstein series needs an even weight >= 4, got {0}")]
    BadEisensteinWeight(u32),
    #[error("pole of order {order} exceeds the clearing bound {bound}")]
    PoleTooDeep { order: i64, bound: u32 },
}
