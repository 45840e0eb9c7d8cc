use alloc::vec::Vec;
use core::fmt;

use crate::arith::{ArithError, Rat, ResidueRing};

/// Coefficient ring for truncated power series.
pub trait CoeffRing: Clone + PartialEq + fmt::Debug {
    type Elt: Clone + PartialEq + fmt::Debug;
    fn zero(&self) -> Self::Elt;
    fn one(&self) -> Self::Elt;
    fn add(&self, a: &Self::Elt, b: &Self::Elt) -> Self::Elt;
    fn sub(&self, a: &Self::Elt, b: &Self::Elt) -> Self::Elt;
    fn mul(&self, a: &Self::Elt, b: &Self::Elt) -> Self::Elt;
    fn from_i64(&self, n: i64) -> Self::Elt;
    fn from_rat(&self, r: &Rat) -> Result<Self::Elt, ArithError>;
    fn is_zero(&self, a: &Self::Elt) -> bool;
}

/// The field of rational numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Rationals;

impl CoeffRing for Rationals {
    type Elt = Rat;
    fn zero(&self) -> Rat {
        Rat::zero()
    }
    fn one(&self) -> Rat {
        Rat::one()
    }
    fn add(&self, a: &Rat, b: &Rat) -> Rat {
        a + b
    }
    fn sub(&self, a: &Rat, b: &Rat) -> Rat {
        a - b
    }
    fn mul(&self, a: &Rat, b: &Rat) -> Rat {
        a * b
    }
    fn from_i64(&self, n: i64) -> Rat {
        Rat::from(n)
    }
    fn from_rat(&self, r: &Rat) -> Result<Rat, ArithError> {
        Ok(r.clone())
    }
    fn is_zero(&self, a: &Rat) -> bool {
        a.is_zero()
    }
}

impl CoeffRing for ResidueRing {
    type Elt = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.modulus()
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ResidueRing::add(self, *a, *b)
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        ResidueRing::sub(self, *a, *b)
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ResidueRing::mul(self, *a, *b)
    }
    fn from_i64(&self, n: i64) -> u64 {
        self.reduce_i128(n as i128)
    }
    fn from_rat(&self, r: &Rat) -> Result<u64, ArithError> {
        r.reduce_mod(self.modulus())
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
}

/// A power series `sum a_n q^n + O(q^N)`; the precision `N` is the number of stored coefficients.
#[derive(Clone, PartialEq)]
pub struct QSeries<R: CoeffRing> {
    ring: R,
    coeffs: Vec<R::Elt>,
}

impl<R: CoeffRing> QSeries<R> {
    pub fn new(ring: R, coeffs: Vec<R::Elt>) -> Self {
        QSeries { ring, coeffs }
    }

    pub fn zero(ring: R, prec: usize) -> Self {
        let z = ring.zero();
        QSeries { coeffs: alloc::vec![z; prec], ring }
    }

    pub fn one(ring: R, prec: usize) -> Self {
        let mut s = Self::zero(ring, prec);
        if prec > 0 {
            s.coeffs[0] = s.ring.one();
        }
        s
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[R::Elt] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Option<&R::Elt> {
        self.coeffs.get(n)
    }

    pub fn into_coeffs(self) -> Vec<R::Elt> {
        self.coeffs
    }

    pub fn truncate(&self, prec: usize) -> Self {
        QSeries {
            ring: self.ring.clone(),
            coeffs: self.coeffs[..prec.min(self.coeffs.len())].to_vec(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.precision().min(o.precision());
        let coeffs = (0..n).map(|i| self.ring.add(&self.coeffs[i], &o.coeffs[i])).collect();
        QSeries { ring: self.ring.clone(), coeffs }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.precision().min(o.precision());
        let coeffs = (0..n).map(|i| self.ring.sub(&self.coeffs[i], &o.coeffs[i])).collect();
        QSeries { ring: self.ring.clone(), coeffs }
    }

    pub fn scale(&self, c: &R::Elt) -> Self {
        let coeffs = self.coeffs.iter().map(|a| self.ring.mul(a, c)).collect();
        QSeries { ring: self.ring.clone(), coeffs }
    }

    pub fn neg(&self) -> Self {
        let z = self.ring.zero();
        let coeffs = self.coeffs.iter().map(|a| self.ring.sub(&z, a)).collect();
        QSeries { ring: self.ring.clone(), coeffs }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.precision().min(o.precision());
        let mut coeffs = alloc::vec![self.ring.zero(); n];
        for (i, a) in self.coeffs[..n].iter().enumerate() {
            if self.ring.is_zero(a) {
                continue;
            }
            for (j, b) in o.coeffs[..n - i].iter().enumerate() {
                if !self.ring.is_zero(b) {
                    coeffs[i + j] = self.ring.add(&coeffs[i + j], &self.ring.mul(a, b));
                }
            }
        }
        QSeries { ring: self.ring.clone(), coeffs }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.ring.clone(), self.precision());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `f(q) -> f(q^l)`, at the same precision.
    pub fn v_op(&self, l: usize) -> Self {
        let n = self.precision();
        let mut coeffs = alloc::vec![self.ring.zero(); n];
        let mut i = 0;
        while i * l < n {
            coeffs[i * l] = self.coeffs[i].clone();
            i += 1;
        }
        QSeries { ring: self.ring.clone(), coeffs }
    }

    /// Multiply by `q^s`, keeping the precision.
    pub fn shift(&self, s: usize) -> Self {
        let n = self.precision();
        let mut coeffs = alloc::vec![self.ring.zero(); n];
        for i in s..n {
            coeffs[i] = self.coeffs[i - s].clone();
        }
        QSeries { ring: self.ring.clone(), coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|a| self.ring.is_zero(a))
    }

    /// Index of the first nonzero coefficient.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|a| !self.ring.is_zero(a))
    }
}

impl QSeries<Rationals> {
    pub fn from_rats(coeffs: Vec<Rat>) -> Self {
        QSeries::new(Rationals, coeffs)
    }

    /// Image in `Z/p^k[[q]]`; fails when some coefficient is not `p`-integral.
    pub fn reduce(&self, ring: ResidueRing) -> Result<QSeries<ResidueRing>, ArithError> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.reduce_mod(ring.modulus()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(QSeries::new(ring, coeffs))
    }

    /// Congruence modulo `p^k` up to the common precision.
    pub fn congruent_mod(&self, o: &Self, ring: ResidueRing) -> Result<bool, ArithError> {
        let d = self.sub(o);
        Ok(d.reduce(ring)?.is_zero())
    }
}

impl<R: CoeffRing> fmt::Debug for QSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if self.ring.is_zero(c) {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c:?}")?,
                1 => write!(f, "{c:?}*q")?,
                _ => write!(f, "{c:?}*q^{i}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(q^{})", self.precision())
    }
}
