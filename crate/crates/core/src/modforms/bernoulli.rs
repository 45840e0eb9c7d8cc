use alloc::vec::Vec;

use num_bigint::BigInt;
use spin::RwLock;

use crate::arith::{binomial, Rat};

static TABLE: RwLock<Vec<Rat>> = RwLock::new(Vec::new());

/// Bernoulli number `B_t`, from `sum_{k<=t} C(t+1, k) B_k = 0` (so `B_1 = -1/2`).
///
/// Values are memoised in a process-wide table.
pub fn bernoulli(t: u32) -> Rat {
    let t = t as usize;
    {
        let table = TABLE.read();
        if let Some(b) = table.get(t) {
            return b.clone();
        }
    }
    let mut table = TABLE.write();
    while table.len() <= t {
        let n = table.len();
        let b = if n == 0 {
            Rat::one()
        } else if n > 1 && n % 2 == 1 {
            Rat::zero()
        } else {
            let mut acc = Rat::zero();
            for (k, bk) in table.iter().enumerate() {
                if !bk.is_zero() {
                    acc += &(Rat::from_int(binomial(n as u64 + 1, k as u64)) * bk);
                }
            }
            -acc / Rat::from(n as u64 + 1)
        };
        table.push(b);
    }
    table[t].clone()
}

/// The constant `-2t / B_t` multiplying the divisor sums in the normalised Eisenstein series.
pub fn eisenstein_constant(t: u32) -> Rat {
    let b = bernoulli(t);
    -(Rat::from_int(BigInt::from(2u64 * t as u64))) / b
}
