use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::eisenstein::{delta, eisenstein};
use super::series::{CoeffRing, QSeries, Rationals};
use super::ModFormError;
use crate::arith::{ResidueRing, Rat};

/// `E_4^a E_6^b Delta^c`; `c` may be negative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub e4: u32,
    pub e6: u32,
    pub delta: i64,
}

impl Monomial {
    pub fn weight(&self) -> i64 {
        4 * self.e4 as i64 + 6 * self.e6 as i64 + 12 * self.delta
    }
}

impl core::fmt::Display for Monomial {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "E4^{} E6^{} D^{}", self.e4, self.e6, self.delta)
    }
}

/// Dimension of the space of level one holomorphic forms of weight `t`.
pub fn dim_mk(t: i64) -> usize {
    if t < 0 || t % 2 != 0 {
        return 0;
    }
    let base = (t / 12) as usize;
    if t % 12 == 2 {
        base
    } else {
        base + 1
    }
}

/// `ceil((t + 12 m)(l + 1) / 12) + 1`.
pub fn sturm_bound(t: i64, l: u64, m: u32) -> usize {
    let w = t + 12 * m as i64;
    let num = w.max(0) as u64 * (l + 1);
    num.div_ceil(12) as usize + 1
}

/// One monomial `E_4^a E_6^b Delta^c` with `b <= 1` for each `c >= -m_max` such that
/// `t - 12c` is a possible holomorphic weight.
///
/// These form a basis of the weight `t` forms holomorphic away from the cusp with pole order
/// at most `m_max`, ordered by increasing order of vanishing.
pub fn basis_monomials(t: i64, m_max: u32) -> Vec<Monomial> {
    if t % 2 != 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut c = -(m_max as i64);
    while t - 12 * c >= 0 {
        let w = t - 12 * c;
        if w % 4 == 0 {
            out.push(Monomial { e4: (w / 4) as u32, e6: 0, delta: c });
        } else if w >= 6 {
            out.push(Monomial { e4: ((w - 6) / 4) as u32, e6: 1, delta: c });
        }
        c += 1;
    }
    out
}

/// Every monomial `E_4^a E_6^b Delta^c` of weight `t` with `c >= -m_max`; a spanning set
/// that contains relations such as `1728 Delta = E_4^3 - E_6^2`.
pub fn spanning_monomials(t: i64, m_max: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    if t % 2 != 0 {
        return out;
    }
    let mut c = -(m_max as i64);
    while t - 12 * c >= 0 {
        let w = t - 12 * c;
        let mut b = 0;
        while 6 * b <= w {
            if (w - 6 * b) % 4 == 0 {
                out.push(Monomial { e4: ((w - 6 * b) / 4) as u32, e6: b as u32, delta: c });
            }
            b += 1;
        }
        c += 1;
    }
    out
}

/// Memoised powers of `E_4`, `E_6`, `Delta` over a coefficient ring at fixed precision.
pub struct SeriesFactory<R: CoeffRing> {
    prec: usize,
    e4: Vec<QSeries<R>>,
    e6: Vec<QSeries<R>>,
    delta: Vec<QSeries<R>>,
    products: BTreeMap<(u32, u32, u32), QSeries<R>>,
}

impl SeriesFactory<Rationals> {
    pub fn rational(prec: usize) -> Self {
        let e4 = eisenstein(4, prec).expect("weight 4");
        let e6 = eisenstein(6, prec).expect("weight 6");
        Self::from_generators(prec, e4, e6, delta(prec))
    }
}

impl SeriesFactory<ResidueRing> {
    pub fn residue(ring: ResidueRing, prec: usize) -> Self {
        let red = |s: QSeries<Rationals>| s.reduce(ring).expect("integral q-expansion");
        let e4 = red(eisenstein(4, prec).expect("weight 4"));
        let e6 = red(eisenstein(6, prec).expect("weight 6"));
        Self::from_generators(prec, e4, e6, red(delta(prec)))
    }
}

impl<R: CoeffRing> SeriesFactory<R> {
    fn from_generators(prec: usize, e4: QSeries<R>, e6: QSeries<R>, delta: QSeries<R>) -> Self {
        let one = QSeries::one(e4.ring().clone(), prec);
        SeriesFactory {
            prec,
            e4: alloc::vec![one.clone(), e4],
            e6: alloc::vec![one.clone(), e6],
            delta: alloc::vec![one, delta],
            products: BTreeMap::new(),
        }
    }

    pub fn precision(&self) -> usize {
        self.prec
    }

    fn power(table: &mut Vec<QSeries<R>>, e: u32) -> QSeries<R> {
        while table.len() <= e as usize {
            let next = table[table.len() - 1].mul(&table[1]);
            table.push(next);
        }
        table[e as usize].clone()
    }

    pub fn delta_pow(&mut self, c: u32) -> QSeries<R> {
        Self::power(&mut self.delta, c)
    }

    /// `E_4^a E_6^b Delta^c` for nonnegative exponents.
    pub fn product(&mut self, a: u32, b: u32, c: u32) -> QSeries<R> {
        if let Some(s) = self.products.get(&(a, b, c)) {
            return s.clone();
        }
        let s = Self::power(&mut self.e4, a)
            .mul(&Self::power(&mut self.e6, b))
            .mul(&Self::power(&mut self.delta, c));
        self.products.insert((a, b, c), s.clone());
        s
    }

    /// `Delta^m` times the monomial, which is holomorphic once `m >= -c`.
    pub fn cleared(&mut self, mon: &Monomial, m: u32) -> Result<QSeries<R>, ModFormError> {
        let c = mon.delta + m as i64;
        if c < 0 {
            return Err(ModFormError::PoleTooDeep { order: -mon.delta, bound: m });
        }
        Ok(self.product(mon.e4, mon.e6, c as u32))
    }
}

/// A weakly holomorphic level one form `F / Delta^m`, stored through the holomorphic `F`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedForm {
    pub weight: i64,
    pub pole_order: u32,
    pub cleared: QSeries<Rationals>,
}

impl WeightedForm {
    pub fn holomorphic(weight: i64, series: QSeries<Rationals>) -> Self {
        WeightedForm { weight, pole_order: 0, cleared: series }
    }

    pub fn eisenstein(t: u32, prec: usize) -> Result<Self, ModFormError> {
        Ok(Self::holomorphic(t as i64, eisenstein(t, prec)?))
    }

    pub fn precision(&self) -> usize {
        self.cleared.precision()
    }

    /// Same form written over `Delta^m` with a larger `m`.
    pub fn with_pole_order(&self, m: u32) -> Result<Self, ModFormError> {
        if m < self.pole_order {
            return Err(ModFormError::PoleTooDeep { order: self.pole_order as i64, bound: m });
        }
        let extra = delta(self.precision()).pow(m - self.pole_order);
        Ok(WeightedForm {
            weight: self.weight,
            pole_order: m,
            cleared: self.cleared.mul(&extra),
        })
    }

    pub fn mul(&self, o: &Self) -> Self {
        WeightedForm {
            weight: self.weight + o.weight,
            pole_order: self.pole_order + o.pole_order,
            cleared: self.cleared.mul(&o.cleared),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        WeightedForm {
            weight: self.weight * e as i64,
            pole_order: self.pole_order * e,
            cleared: self.cleared.pow(e),
        }
    }

    /// Laurent coefficients of `F / Delta^m`, starting at `q^{-m}`, valid up to `q^{N - 1 - m}`.
    pub fn laurent(&self) -> (i64, Vec<Rat>) {
        let m = self.pole_order;
        let n = self.precision();
        if m == 0 {
            return (0, self.cleared.coeffs().to_vec());
        }
        // Delta = q * u(q) with u(0) = 1; divide F by u^m termwise.
        let d = delta(n + 1);
        let u: Vec<Rat> = d.coeffs()[1..].to_vec();
        let um = QSeries::from_rats(u).pow(m);
        let mut inv = alloc::vec![Rat::zero(); n];
        if n > 0 {
            inv[0] = Rat::one();
        }
        for i in 1..n {
            let mut acc = Rat::zero();
            for j in 1..=i {
                acc += &(&um.coeffs()[j] * &inv[i - j]);
            }
            inv[i] = -acc;
        }
        let out = self.cleared.mul(&QSeries::from_rats(inv));
        (-(m as i64), out.into_coeffs())
    }
}
