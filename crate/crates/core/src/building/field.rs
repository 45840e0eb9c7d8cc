//! Local fields `Q_l`, `Q_l(sqrt d)` modelled by exact elements of `Q(sqrt d)`.

use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::ToPrimitive;

use super::BuildingError;
use crate::arith::{is_prime, legendre, Rat, Valuation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Extension {
    None,
    Inert,
    Ramified,
}

/// Ring of integers of `Q_l` or of a quadratic extension `Q_l(sqrt d)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LocalRing {
    l: u64,
    ext: Extension,
    d: i64,
}

/// `a + b sqrt(d)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KElt {
    pub a: Rat,
    pub b: Rat,
    d: i64,
}

impl LocalRing {
    pub fn rational(l: u64) -> Result<Self, BuildingError> {
        if !is_prime(l) {
            return Err(BuildingError::NotPrime(l));
        }
        Ok(LocalRing { l, ext: Extension::None, d: 0 })
    }

    pub fn inert(l: u64, d: i64) -> Result<Self, BuildingError> {
        if !is_prime(l) {
            return Err(BuildingError::NotPrime(l));
        }
        let ok = if l == 2 { d.rem_euclid(8) == 5 } else { d % l as i64 != 0 && legendre(d, l) == -1 };
        if !ok {
            return Err(BuildingError::BadExtension { l, d });
        }
        Ok(LocalRing { l, ext: Extension::Inert, d })
    }

    pub fn ramified(l: u64, d: i64) -> Result<Self, BuildingError> {
        if !is_prime(l) {
            return Err(BuildingError::NotPrime(l));
        }
        if d == 0 || Rat::from(d).val(l) != Valuation::Finite(1) {
            return Err(BuildingError::BadExtension { l, d });
        }
        Ok(LocalRing { l, ext: Extension::Ramified, d })
    }

    /// Unramified quadratic extension with the smallest admissible `|d|`.
    pub fn inert_default(l: u64) -> Result<Self, BuildingError> {
        if l == 2 {
            return Self::inert(2, -3);
        }
        let d = (2..l as i64).find(|&d| legendre(d, l) == -1).ok_or(BuildingError::NotPrime(l))?;
        Self::inert(l, d)
    }

    /// `Q_l(sqrt l)`.
    pub fn ramified_default(l: u64) -> Result<Self, BuildingError> {
        Self::ramified(l, l as i64)
    }

    pub fn l(&self) -> u64 {
        self.l
    }

    pub fn ext(&self) -> Extension {
        self.ext
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn is_quadratic(&self) -> bool {
        self.ext != Extension::None
    }

    /// Size of the residue field.
    pub fn residue_size(&self) -> u64 {
        match self.ext {
            Extension::Inert => self.l * self.l,
            _ => self.l,
        }
    }

    pub fn elt(&self, a: Rat, b: Rat) -> KElt {
        let b = if self.is_quadratic() { b } else { Rat::zero() };
        KElt { a, b, d: self.d }
    }

    pub fn from_rat(&self, a: Rat) -> KElt {
        self.elt(a, Rat::zero())
    }

    pub fn from_int(&self, a: i64) -> KElt {
        self.from_rat(Rat::from(a))
    }

    pub fn zero(&self) -> KElt {
        self.from_int(0)
    }

    pub fn one(&self) -> KElt {
        self.from_int(1)
    }

    pub fn sqrt_d(&self) -> KElt {
        self.elt(Rat::zero(), Rat::one())
    }

    fn omega_is_half(&self) -> bool {
        self.ext == Extension::Inert && self.l == 2
    }

    /// Coordinates in the `Z_l`-basis `{1, omega}` of the ring of integers.
    pub fn o_coords(&self, x: &KElt) -> (Rat, Rat) {
        if self.omega_is_half() {
            (&x.a - &x.b, Rat::from(2) * &x.b)
        } else {
            (x.a.clone(), x.b.clone())
        }
    }

    pub fn from_o_coords(&self, a: Rat, b: Rat) -> KElt {
        if self.omega_is_half() {
            let half = Rat::new(1, 2).expect("nonzero");
            self.elt(&a + &b * &half, &b * &half)
        } else {
            self.elt(a, b)
        }
    }

    /// The uniformizer: `l`, or `sqrt d` when ramified.
    pub fn pi(&self) -> KElt {
        match self.ext {
            Extension::Ramified => self.sqrt_d(),
            _ => self.from_int(self.l as i64),
        }
    }

    pub fn pi_pow(&self, e: i64) -> KElt {
        match self.ext {
            Extension::Ramified => {
                let d = Rat::from(self.d);
                let half = e.div_euclid(2);
                let base = d.pow(half).expect("d nonzero");
                if e.rem_euclid(2) == 0 {
                    self.from_rat(base)
                } else {
                    self.elt(Rat::zero(), base)
                }
            }
            _ => self.from_rat(Rat::from(self.l).pow(e).expect("l nonzero")),
        }
    }

    /// Normalised valuation with `v(pi) = 1`.
    pub fn val(&self, x: &KElt) -> Valuation {
        if x.is_zero() {
            return Valuation::Infinite;
        }
        let fin = |r: &Rat| r.val(self.l).finite();
        match self.ext {
            Extension::None => x.a.val(self.l),
            Extension::Inert => {
                let (a, b) = self.o_coords(x);
                let v = [fin(&a), fin(&b)].into_iter().flatten().min().expect("nonzero");
                Valuation::Finite(v)
            }
            Extension::Ramified => {
                let va = fin(&x.a).map(|v| 2 * v);
                let vb = fin(&x.b).map(|v| 2 * v + 1);
                Valuation::Finite([va, vb].into_iter().flatten().min().expect("nonzero"))
            }
        }
    }

    pub fn val_finite(&self, x: &KElt) -> Option<i64> {
        self.val(x).finite()
    }

    pub fn is_integral(&self, x: &KElt) -> bool {
        self.val(x) >= Valuation::Finite(0)
    }

    fn frac_l(&self, y: &Rat) -> Rat {
        match y.val(self.l) {
            Valuation::Finite(v) if v < 0 => {
                let m = self.l.pow((-v) as u32);
                let scaled = y * Rat::from(m);
                let c = scaled.reduce_mod(m).expect("unit denominator");
                Rat::new(c, m).expect("nonzero")
            }
            _ => Rat::zero(),
        }
    }

    /// Canonical representative of `x` modulo the ring of integers.
    pub fn frac(&self, x: &KElt) -> KElt {
        let (a, b) = self.o_coords(x);
        self.from_o_coords(self.frac_l(&a), self.frac_l(&b))
    }

    /// Canonical representative of `x` modulo `pi^e O`.
    pub fn reduce(&self, x: &KElt, e: i64) -> KElt {
        let p = self.pi_pow(e);
        let y = x * &self.pi_pow(-e);
        &p * &self.frac(&y)
    }

    /// A complete system of representatives of `O / pi^e`.
    pub fn residues(&self, e: u32) -> Vec<KElt> {
        let (na, nb) = match self.ext {
            Extension::None => (self.l.pow(e), 1),
            Extension::Inert => (self.l.pow(e), self.l.pow(e)),
            Extension::Ramified => (self.l.pow(e.div_ceil(2)), self.l.pow(e / 2)),
        };
        let mut out = Vec::with_capacity((na * nb) as usize);
        for b in 0..nb {
            for a in 0..na {
                out.push(self.from_o_coords(Rat::from(a), Rat::from(b)));
            }
        }
        out
    }

    /// `l`-adic valuation of a rational norm or form value.
    pub fn val_l(&self, x: &Rat) -> Valuation {
        x.val(self.l)
    }

    /// `v_l(N(pi))`: `2` unramified over `Q_l`, `1` ramified, `1` for `Q_l` itself.
    pub fn norm_pi_val(&self) -> i64 {
        match self.ext {
            Extension::Inert => 2,
            _ => 1,
        }
    }

    /// Small sample element `a + b sqrt d` from integer coordinates.
    pub fn small(&self, a: i64, b: i64) -> KElt {
        self.elt(Rat::from(a), Rat::from(b))
    }

    pub fn rat_to_u64(x: &Rat) -> Option<u64> {
        if x.is_integer() {
            x.numer().to_u64()
        } else {
            None
        }
    }
}

impl KElt {
    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn conj(&self) -> KElt {
        KElt { a: self.a.clone(), b: -&self.b, d: self.d }
    }

    pub fn norm(&self) -> Rat {
        &self.a * &self.a - Rat::from(self.d) * &self.b * &self.b
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn inv(&self) -> Option<KElt> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        let c = self.conj();
        Some(KElt { a: &c.a / &n, b: &c.b / &n, d: self.d })
    }

    pub fn scale(&self, r: &Rat) -> KElt {
        KElt { a: &self.a * r, b: &self.b * r, d: self.d }
    }
}

impl core::fmt::Display for KElt {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            write!(f, "{}*s", self.b)
        } else {
            write!(f, "{}+{}*s", self.a, self.b)
        }
    }
}

impl Add for &KElt {
    type Output = KElt;
    fn add(self, o: &KElt) -> KElt {
        KElt { a: &self.a + &o.a, b: &self.b + &o.b, d: self.d }
    }
}

impl Sub for &KElt {
    type Output = KElt;
    fn sub(self, o: &KElt) -> KElt {
        KElt { a: &self.a - &o.a, b: &self.b - &o.b, d: self.d }
    }
}

impl Mul for &KElt {
    type Output = KElt;
    fn mul(self, o: &KElt) -> KElt {
        let d = Rat::from(self.d);
        KElt {
            a: &self.a * &o.a + d * &self.b * &o.b,
            b: &self.a * &o.b + &self.b * &o.a,
            d: self.d,
        }
    }
}

impl Neg for &KElt {
    type Output = KElt;
    fn neg(self) -> KElt {
        KElt { a: -&self.a, b: -&self.b, d: self.d }
    }
}

/// Dense matrix over `K`; lattice bases are stored column-wise.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KMatrix {
    rows: usize,
    cols: usize,
    data: Vec<KElt>,
}

impl KMatrix {
    pub fn zeros(ring: &LocalRing, rows: usize, cols: usize) -> Self {
        KMatrix { rows, cols, data: alloc::vec![ring.zero(); rows * cols] }
    }

    pub fn identity(ring: &LocalRing, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    pub fn from_rows(ring: &LocalRing, rows: Vec<Vec<KElt>>) -> Result<Self, BuildingError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|x| x.len() != c) {
            return Err(BuildingError::Dimension);
        }
        let mut m = Self::zeros(ring, r, c);
        for (i, row) in rows.into_iter().enumerate() {
            for (j, x) in row.into_iter().enumerate() {
                m.set(i, j, x);
            }
        }
        Ok(m)
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(ring: &LocalRing, cols: &[Vec<KElt>]) -> Result<Self, BuildingError> {
        let c = cols.len();
        let r = cols.first().map_or(0, Vec::len);
        if cols.iter().any(|x| x.len() != r) {
            return Err(BuildingError::Dimension);
        }
        let mut m = Self::zeros(ring, r, c);
        for (j, col) in cols.iter().enumerate() {
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &KElt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: KElt) {
        self.data[i * self.cols + j] = x;
    }

    pub fn column(&self, j: usize) -> Vec<KElt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<KElt>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        KMatrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn conj(&self) -> Self {
        KMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(KElt::conj).collect() }
    }

    pub fn mul(&self, o: &KMatrix) -> Result<KMatrix, BuildingError> {
        if self.cols != o.rows {
            return Err(BuildingError::Dimension);
        }
        let mut data = Vec::with_capacity(self.rows * o.cols);
        for i in 0..self.rows {
            for j in 0..o.cols {
                let mut acc = self.get(i, 0) * o.get(0, j);
                for k in 1..self.cols {
                    acc = &acc + &(self.get(i, k) * o.get(k, j));
                }
                data.push(acc);
            }
        }
        Ok(KMatrix { rows: self.rows, cols: o.cols, data })
    }

    pub fn scale(&self, x: &KElt) -> KMatrix {
        KMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|y| x * y).collect() }
    }

    pub fn mul_vec(&self, v: &[KElt]) -> Result<Vec<KElt>, BuildingError> {
        if v.len() != self.cols {
            return Err(BuildingError::Dimension);
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = self.get(i, 0) * &v[0];
                for k in 1..self.cols {
                    acc = &acc + &(self.get(i, k) * &v[k]);
                }
                acc
            })
            .collect())
    }

    /// Inverse by Gauss-Jordan elimination over `K`.
    pub fn inverse(&self) -> Result<KMatrix, BuildingError> {
        let n = self.rows;
        if n != self.cols || n == 0 {
            return Err(BuildingError::Dimension);
        }
        let mut a = self.clone();
        let zero = self.data[0].scale(&Rat::zero());
        let mut inv = KMatrix { rows: n, cols: n, data: alloc::vec![zero.clone(); n * n] };
        let one = KElt { a: Rat::one(), b: Rat::zero(), d: self.data[0].d };
        for i in 0..n {
            inv.set(i, i, one.clone());
        }
        for c in 0..n {
            let p = (c..n).find(|&r| !a.get(r, c).is_zero()).ok_or(BuildingError::Singular)?;
            a.swap_rows(c, p);
            inv.swap_rows(c, p);
            let s = a.get(c, c).inv().expect("nonzero pivot");
            a.scale_row(c, &s);
            inv.scale_row(c, &s);
            for r in 0..n {
                if r != c && !a.get(r, c).is_zero() {
                    let f = a.get(r, c).clone();
                    a.add_row_multiple(r, c, &-&f);
                    inv.add_row_multiple(r, c, &-&f);
                }
            }
        }
        Ok(inv)
    }

    pub fn det(&self) -> Result<KElt, BuildingError> {
        let n = self.rows;
        if n != self.cols || n == 0 {
            return Err(BuildingError::Dimension);
        }
        let mut a = self.clone();
        let mut det = KElt { a: Rat::one(), b: Rat::zero(), d: self.data[0].d };
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a.get(r, c).is_zero()) else {
                return Ok(det.scale(&Rat::zero()));
            };
            if p != c {
                a.swap_rows(c, p);
                det = -&det;
            }
            det = &det * a.get(c, c);
            let s = a.get(c, c).inv().expect("nonzero pivot");
            for r in c + 1..n {
                if !a.get(r, c).is_zero() {
                    let f = a.get(r, c) * &s;
                    a.add_row_multiple(r, c, &-&f);
                }
            }
        }
        Ok(det)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            for k in 0..self.cols {
                self.data.swap(i * self.cols + k, j * self.cols + k);
            }
        }
    }

    fn scale_row(&mut self, i: usize, s: &KElt) {
        for k in 0..self.cols {
            let v = s * self.get(i, k);
            self.set(i, k, v);
        }
    }

    fn add_row_multiple(&mut self, dst: usize, src: usize, f: &KElt) {
        for k in 0..self.cols {
            let v = self.get(dst, k) + &(f * self.get(src, k));
            self.set(dst, k, v);
        }
    }

    pub(crate) fn swap_cols(&mut self, i: usize, j: usize) {
        if i != j {
            for r in 0..self.rows {
                self.data.swap(r * self.cols + i, r * self.cols + j);
            }
        }
    }

    pub(crate) fn scale_col(&mut self, j: usize, s: &KElt) {
        for r in 0..self.rows {
            let v = s * self.get(r, j);
            self.set(r, j, v);
        }
    }

    /// Column `dst += f * column src`.
    pub(crate) fn add_col_multiple(&mut self, dst: usize, src: usize, f: &KElt) {
        for r in 0..self.rows {
            let v = self.get(r, dst) + &(f * self.get(r, src));
            self.set(r, dst, v);
        }
    }
}
