//! Exact rationals, residue rings `Z/p^k`, Howell forms and elementary number theory.

mod howell;
mod numth;
mod rat;
mod residue;

pub use howell::{howell_form, howell_kernel, Submodule};
pub use numth::{
    binomial, crt_pair, divisors, factor, gcd_u64, hensel_sqrt, is_prime, kronecker, lcm_u64,
    legendre, mod_inv, mod_pow, primes_up_to, sqrt_mod_prime, val_u64,
};
pub use rat::{Rat, Valuation};
pub use residue::{ResidueElt, ResidueMatrix, ResidueRing};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("modulus {0} is not a prime power")]
    NotPrimePower(u64),
    #[error("modulus {0} is too large for 64-bit residues")]
    ModulusTooLarge(u128),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not invertible modulo {1}")]
    NotInvertible(u64, u64),
    #[error("dimension mismatch: {0}")]
    Dimension(&'static str),
    #[error("could not parse rational from {0:?}")]
    Parse(alloc::string::String),
    #[error("{0} is not a p-adic integer at {1}")]
    NotIntegral(alloc::string::String, u64),
}
