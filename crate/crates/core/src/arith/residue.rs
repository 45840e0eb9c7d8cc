use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use super::numth::{factor, is_prime, mod_inv, mod_pow, val_u64};
use super::{ArithError, Rat};

/// The ring `Z/p^k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ResidueRing {
    p: u64,
    k: u32,
    modulus: u64,
}

impl ResidueRing {
    pub fn new(p: u64, k: u32) -> Result<ResidueRing, ArithError> {
        if !is_prime(p) {
            return Err(ArithError::NotPrime(p));
        }
        if k == 0 {
            return Err(ArithError::NotPrimePower(1));
        }
        let modulus = p
            .checked_pow(k)
            .ok_or(ArithError::ModulusTooLarge((p as u128).saturating_pow(k)))?;
        if modulus > (1u64 << 62) {
            return Err(ArithError::ModulusTooLarge(modulus as u128));
        }
        Ok(ResidueRing { p, k, modulus })
    }

    pub fn from_modulus(m: u64) -> Result<ResidueRing, ArithError> {
        let f = factor(m);
        if f.len() != 1 {
            return Err(ArithError::NotPrimePower(m));
        }
        ResidueRing::new(f[0].0, f[0].1)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn reduce_i128(&self, x: i128) -> u64 {
        x.rem_euclid(self.modulus as i128) as u64
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        ((a as u128 + b as u128) % self.modulus as u128) as u64
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        ((a as u128 + self.modulus as u128 - b as u128 % self.modulus as u128)
            % self.modulus as u128) as u64
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.modulus as u128) as u64
    }

    pub fn neg(&self, a: u64) -> u64 {
        self.sub(0, a)
    }

    pub fn pow(&self, a: u64, e: u64) -> u64 {
        mod_pow(a, e, self.modulus)
    }

    /// `a^e` for a possibly negative exponent; needs `a` to be a unit when `e < 0`.
    pub fn pow_signed(&self, a: u64, e: i64) -> Result<u64, ArithError> {
        if e >= 0 {
            return Ok(self.pow(a, e as u64));
        }
        let inv = self.inv(a)?;
        Ok(self.pow(inv, e.unsigned_abs()))
    }

    pub fn inv(&self, a: u64) -> Result<u64, ArithError> {
        mod_inv(a, self.modulus).ok_or(ArithError::NotInvertible(a, self.modulus))
    }

    /// Valuation of a residue, capped at `k` for zero.
    pub fn val(&self, a: u64) -> u32 {
        let a = a % self.modulus;
        if a == 0 {
            self.k
        } else {
            val_u64(a, self.p)
        }
    }

    pub fn p_pow(&self, e: u32) -> u64 {
        if e >= self.k {
            0
        } else {
            self.p.pow(e)
        }
    }

    pub fn from_rat(&self, r: &Rat) -> Result<u64, ArithError> {
        r.reduce_mod(self.modulus)
    }

    pub fn elt(&self, v: u64) -> ResidueElt {
        ResidueElt { ring: *self, value: v % self.modulus }
    }
}

/// An element of `Z/p^k`, represented in `[0, p^k)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct ResidueElt {
    ring: ResidueRing,
    value: u64,
}

impl ResidueElt {
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn ring(&self) -> ResidueRing {
        self.ring
    }

    pub fn val(&self) -> u32 {
        self.ring.val(self.value)
    }

    pub fn inv(&self) -> Result<ResidueElt, ArithError> {
        Ok(self.ring.elt(self.ring.inv(self.value)?))
    }

    pub fn pow(&self, e: u64) -> ResidueElt {
        self.ring.elt(self.ring.pow(self.value, e))
    }
}

impl fmt::Debug for ResidueElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.value, self.ring.modulus)
    }
}

impl fmt::Display for ResidueElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for ResidueElt {
    type Output = ResidueElt;
    fn add(self, o: ResidueElt) -> ResidueElt {
        debug_assert_eq!(self.ring, o.ring);
        self.ring.elt(self.ring.add(self.value, o.value))
    }
}

impl Sub for ResidueElt {
    type Output = ResidueElt;
    fn sub(self, o: ResidueElt) -> ResidueElt {
        debug_assert_eq!(self.ring, o.ring);
        self.ring.elt(self.ring.sub(self.value, o.value))
    }
}

impl Mul for ResidueElt {
    type Output = ResidueElt;
    fn mul(self, o: ResidueElt) -> ResidueElt {
        debug_assert_eq!(self.ring, o.ring);
        self.ring.elt(self.ring.mul(self.value, o.value))
    }
}

impl Neg for ResidueElt {
    type Output = ResidueElt;
    fn neg(self) -> ResidueElt {
        self.ring.elt(self.ring.neg(self.value))
    }
}

/// Dense row-major matrix over `Z/p^k`.
#[derive(Clone, PartialEq, Eq)]
pub struct ResidueMatrix {
    ring: ResidueRing,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl ResidueMatrix {
    pub fn zeros(ring: ResidueRing, rows: usize, cols: usize) -> ResidueMatrix {
        ResidueMatrix { ring, rows, cols, data: alloc::vec![0; rows * cols] }
    }

    pub fn from_rows(ring: ResidueRing, rows: &[Vec<u64>]) -> Result<ResidueMatrix, ArithError> {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(ArithError::Dimension("ragged rows"));
            }
            data.extend(r.iter().map(|x| x % ring.modulus));
        }
        Ok(ResidueMatrix { ring, rows: rows.len(), cols, data })
    }

    pub fn ring(&self) -> ResidueRing {
        self.ring
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v % self.ring.modulus;
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> ResidueMatrix {
        let mut t = ResidueMatrix::zeros(self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[u64]) -> Result<Vec<u64>, ArithError> {
        if v.len() != self.cols {
            return Err(ArithError::Dimension("matrix-vector product"));
        }
        let m = self.ring.modulus as u128;
        Ok((0..self.rows)
            .map(|i| {
                let mut acc: u128 = 0;
                for (a, b) in self.row(i).iter().zip(v) {
                    acc = (acc + *a as u128 * (*b % self.ring.modulus) as u128) % m;
                }
                acc as u64
            })
            .collect())
    }

    pub fn mul(&self, o: &ResidueMatrix) -> Result<ResidueMatrix, ArithError> {
        if self.cols != o.rows || self.ring != o.ring {
            return Err(ArithError::Dimension("matrix product"));
        }
        let mut out = ResidueMatrix::zeros(self.ring, self.rows, o.cols);
        let m = self.ring.modulus as u128;
        for i in 0..self.rows {
            for j in 0..o.cols {
                let mut acc: u128 = 0;
                for t in 0..self.cols {
                    acc = (acc + self.get(i, t) as u128 * o.get(t, j) as u128) % m;
                }
                out.data[i * o.cols + j] = acc as u64;
            }
        }
        Ok(out)
    }

    /// Generators of `{x : M x = 0}` in Howell form.
    pub fn kernel(&self) -> Vec<Vec<u64>> {
        super::howell_kernel(self)
    }
}

impl fmt::Debug for ResidueMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{} mod {}]", self.rows, self.cols, self.ring.modulus)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}
