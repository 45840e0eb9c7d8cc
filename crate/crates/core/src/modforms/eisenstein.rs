use alloc::vec::Vec;

use num_bigint::BigInt;

use super::bernoulli::eisenstein_constant;
use super::series::{QSeries, Rationals};
use super::ModFormError;
use crate::arith::{divisors, Rat};

/// Divisor power sum `sigma_k(n)`.
pub fn sigma(k: u32, n: u64) -> BigInt {
    divisors(n).into_iter().map(|d| BigInt::from(d).pow(k)).sum()
}

/// Normalised Eisenstein series `E_t = 1 - (2t/B_t) sum sigma_{t-1}(n) q^n` for even `t >= 4`;
/// `E_0 = 1`.
pub fn eisenstein(t: u32, prec: usize) -> Result<QSeries<Rationals>, ModFormError> {
    if t == 0 {
        return Ok(QSeries::one(Rationals, prec));
    }
    if t < 4 || t % 2 == 1 {
        return Err(ModFormError::BadEisensteinWeight(t));
    }
    let c = eisenstein_constant(t);
    let mut coeffs = Vec::with_capacity(prec);
    for n in 0..prec {
        if n == 0 {
            coeffs.push(Rat::one());
        } else {
            coeffs.push(&c * Rat::from_int(sigma(t - 1, n as u64)));
        }
    }
    Ok(QSeries::from_rats(coeffs))
}

/// The discriminant `(E_4^3 - E_6^2) / 1728`.
pub fn delta(prec: usize) -> QSeries<Rationals> {
    let e4 = eisenstein(4, prec).expect("weight 4");
    let e6 = eisenstein(6, prec).expect("weight 6");
    let num = e4.pow(3).sub(&e6.pow(2));
    num.scale(&Rat::new(1, 1728).expect("nonzero"))
}
