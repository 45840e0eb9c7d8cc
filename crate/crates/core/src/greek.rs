//! Existence and order predicates for the invariants `x_{i/j}` and `x_{i/j,k}`, and Greek-letter stems.

use alloc::vec::Vec;

use thiserror::Error;

use crate::arith::{is_prime, val_u64, Rat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GreekError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("this predicate needs p > {min}, got {p}")]
    PrimeTooSmall { p: u64, min: u64 },
    #[error("index entries must be positive")]
    NonPositive,
    #[error("an index needs at least two entries (i_0, ..., i_n with n >= 1)")]
    ShortIndex,
}

/// `I = (i_0, ..., i_n)` at a prime `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreekIndex {
    pub p: u64,
    pub exponents: Vec<u64>,
}

impl GreekIndex {
    pub fn new(p: u64, exponents: Vec<u64>) -> Result<Self, GreekError> {
        if !is_prime(p) {
            return Err(GreekError::NotPrime(p));
        }
        if exponents.len() < 2 {
            return Err(GreekError::ShortIndex);
        }
        if exponents.iter().any(|&e| e == 0) {
            return Err(GreekError::NonPositive);
        }
        Ok(GreekIndex { p, exponents })
    }

    /// Chromatic level `n`.
    pub fn level(&self) -> usize {
        self.exponents.len() - 1
    }
}

/// Degree `|v_k| = 2(p^k - 1)`.
pub fn v_degree(p: u64, k: u32) -> i64 {
    2 * (p.pow(k) as i64 - 1)
}

/// `||I|| = i_1 |v_1| + ... + i_{n-1} |v_{n-1}| + n`.
pub fn norm_i(idx: &GreekIndex) -> i64 {
    let n = idx.level();
    let sum: i64 = (1..n).map(|k| idx.exponents[k] as i64 * v_degree(idx.p, k as u32)).sum();
    sum + n as i64
}

/// Stem `i_n s |v_n| - ||I||` of the Greek-letter composite.
pub fn greek_stem(idx: &GreekIndex, s: u64) -> i64 {
    let n = idx.level();
    idx.exponents[n] as i64 * s as i64 * v_degree(idx.p, n as u32) - norm_i(idx)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InvariantVerdict {
    /// Exists, with additive order `p^log_order`.
    Exists { log_order: u32 },
    DoesNotExist,
}

impl InvariantVerdict {
    pub fn exists(&self) -> bool {
        matches!(self, InvariantVerdict::Exists { .. })
    }
}

/// `x_{i/j}` in degree `t` exists (with order `p^j`) iff `t = (p-1)i` and `j <= nu_p(i) + 1`.
pub fn alpha_invariant_order(p: u64, t: i64, j: u32) -> Result<InvariantVerdict, GreekError> {
    if !is_prime(p) {
        return Err(GreekError::NotPrime(p));
    }
    if p == 2 {
        return Err(GreekError::PrimeTooSmall { p, min: 2 });
    }
    if j == 0 {
        return Err(GreekError::NonPositive);
    }
    let step = p as i64 - 1;
    if t <= 0 || t % step != 0 {
        return Ok(InvariantVerdict::DoesNotExist);
    }
    let i = (t / step) as u64;
    if j <= val_u64(i, p) + 1 {
        Ok(InvariantVerdict::Exists { log_order: j })
    } else {
        Ok(InvariantVerdict::DoesNotExist)
    }
}

/// Outcome of the literal `x_{i/j,k}` existence test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BetaVerdict {
    pub verdict: InvariantVerdict,
    /// `(p^2 - 1) i - (p - 1) j`.
    pub t: i64,
    /// The integer `m` solving the bracketing inequality.
    pub m: i64,
    /// Largest admissible `k` under the third condition (may be `<= 0`).
    pub k_bound: i64,
    /// Set when `nu_p(i) = 0`, where the literal bracketing gives `m = -1` and admits no `k`.
    pub nu_zero_flag: bool,
    /// Which condition failed, if any.
    pub failed_condition: Option<u8>,
}

/// `p^e + p^{e-1} - 1` as an exact rational (negative `e` allowed).
fn bracket(p: u64, e: i64) -> Rat {
    let pr = Rat::from(p);
    pr.pow(e).expect("p != 0") + pr.pow(e - 1).expect("p != 0") - Rat::one()
}

/// Literal evaluation of the three conditions for `x_{i/j,k}`.
pub fn beta_invariant_exists(p: u64, i: u64, j: u64, k: u64) -> Result<BetaVerdict, GreekError> {
    if !is_prime(p) {
        return Err(GreekError::NotPrime(p));
    }
    if p <= 3 {
        return Err(GreekError::PrimeTooSmall { p, min: 3 });
    }
    if i == 0 || j == 0 || k == 0 {
        return Err(GreekError::NonPositive);
    }
    let nu = val_u64(i, p) as i64;
    let t = (p as i64 * p as i64 - 1) * i as i64 - (p as i64 - 1) * j as i64;
    let jr = Rat::from(j);
    // bracket(e) is strictly increasing with bracket(0) = 1/p < 1 <= j, so the least e with
    // j <= bracket(e) is positive and the bracketing m = nu - e is unique.
    let mut e = 1i64;
    while bracket(p, e) < jr {
        e += 1;
    }
    let m = nu - e;
    let k_bound = (val_u64(j, p) as i64 + 1).min(m + 1);
    let cond2 = if nu == 0 { j == 1 } else { jr <= bracket(p, nu) };
    let failed_condition = if !cond2 {
        Some(2)
    } else if (k as i64) > k_bound {
        Some(3)
    } else {
        None
    };
    let verdict = match failed_condition {
        None => InvariantVerdict::Exists { log_order: k as u32 },
        Some(_) => InvariantVerdict::DoesNotExist,
    };
    Ok(BetaVerdict { verdict, t, m, k_bound, nu_zero_flag: nu == 0, failed_condition })
}
