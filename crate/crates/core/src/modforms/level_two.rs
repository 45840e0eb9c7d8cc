use alloc::vec::Vec;

use super::eisenstein::{eisenstein, sigma};
use super::series::{QSeries, Rationals};
use crate::arith::Rat;

/// The weight 2 form `2 E_2(q^2) - E_2(q)` on `Gamma_0(2)`.
pub fn level_two_a(prec: usize) -> QSeries<Rationals> {
    let e2: Vec<Rat> = (0..prec)
        .map(|n| {
            if n == 0 {
                Rat::one()
            } else {
                Rat::from_int(sigma(1, n as u64)) * Rat::from(-24)
            }
        })
        .collect();
    let e2 = QSeries::from_rats(e2);
    e2.v_op(2).scale(&Rat::from(2)).sub(&e2)
}

/// The weight 4 form `(E_4 - A^2) / 192 = q + O(q^2)` on `Gamma_0(2)`.
pub fn level_two_d(prec: usize) -> QSeries<Rationals> {
    let a = level_two_a(prec);
    let e4 = eisenstein(4, prec).expect("weight 4");
    e4.sub(&a.mul(&a)).scale(&Rat::new(1, 192).expect("nonzero"))
}

/// Exponents `(a, b)` with `2a + 4b = w`; the monomials `A^a D^b` form a basis of
/// `M_w(Gamma_0(2))`, unitriangular in `q`.
pub fn level_two_exponents(w: i64) -> Vec<(u32, u32)> {
    if w < 0 || w % 2 != 0 {
        return Vec::new();
    }
    (0..=w / 4).map(|b| (((w - 4 * b) / 2) as u32, b as u32)).collect()
}
