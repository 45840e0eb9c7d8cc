//! Hermitian forms over imaginary quadratic fields: Hilbert symbols, local norm groups,
//! the alternating/hermitian translation, local classes for `U` and `GU`, and the global
//! existence sequences.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_traits::ToPrimitive;
use thiserror::Error;

use crate::arith::{factor, kronecker, legendre, ArithError, Rat, Valuation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HermitianError {
    #[error("d = {0} is not a negative squarefree integer")]
    BadField(i64),
    #[error("zero argument")]
    Zero,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("entry count {found} does not match rank {rank}")]
    Rank { found: usize, rank: usize },
    #[error("input violates the symmetry condition for this direction")]
    Symmetry,
    #[error("signature ({p}, {q}) does not have p + q = {n}")]
    Signature { p: u64, q: u64, n: u64 },
    #[error("class at {0} does not match the splitting behaviour of the place")]
    ClassKind(Place),
    #[error("place {0} listed twice")]
    DuplicatePlace(Place),
    #[error("expected exactly one archimedean entry")]
    Archimedean,
    #[error("operation needs rank of parity {0}")]
    Parity(&'static str),
    #[error("numerator or denominator too large to factor")]
    TooLarge,
    #[error(transparent)]
    Arith(#[from] ArithError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Prime(u64),
    Infinity,
}

impl core::fmt::Display for Place {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Place::Prime(l) => write!(f, "{l}"),
            Place::Infinity => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Splitting {
    Split,
    Inert,
    Ramified,
    Archimedean,
}

/// `F = Q(delta)` with `delta^2 = d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadImagField {
    d: i64,
}

impl QuadImagField {
    pub fn new(d: i64) -> Result<Self, HermitianError> {
        if d >= 0 || factor(d.unsigned_abs()).iter().any(|&(_, e)| e > 1) {
            return Err(HermitianError::BadField(d));
        }
        Ok(QuadImagField { d })
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn discriminant(&self) -> i64 {
        if self.d.rem_euclid(4) == 1 {
            self.d
        } else {
            4 * self.d
        }
    }

    pub fn splitting(&self, place: Place) -> Splitting {
        match place {
            Place::Infinity => Splitting::Archimedean,
            Place::Prime(l) => match kronecker(self.discriminant(), l as i64) {
                1 => Splitting::Split,
                -1 => Splitting::Inert,
                _ => Splitting::Ramified,
            },
        }
    }
}

fn split_off(a: &Rat, l: u64) -> (i64, Rat) {
    let Valuation::Finite(v) = a.val(l) else { unreachable!("nonzero") };
    let unit = a * Rat::from(l).pow(-v).expect("l > 0");
    (v, unit)
}

fn eps2(u: u64) -> u64 {
    ((u.wrapping_sub(1)) / 2) % 2
}

fn omega2(u: u64) -> u64 {
    ((u * u - 1) / 8) % 2
}

/// Quadratic Hilbert symbol `(a, b)_v`.
pub fn hilbert_symbol(a: &Rat, b: &Rat, place: Place) -> Result<i32, HermitianError> {
    if a.is_zero() || b.is_zero() {
        return Err(HermitianError::Zero);
    }
    match place {
        Place::Infinity => Ok(if a.is_negative() && b.is_negative() { -1 } else { 1 }),
        Place::Prime(2) => {
            let (al, u) = split_off(a, 2);
            let (be, v) = split_off(b, 2);
            let (u, v) = (u.reduce_mod(8)?, v.reduce_mod(8)?);
            let e = eps2(u) * eps2(v) + (al.rem_euclid(2) as u64) * omega2(v) + (be.rem_euclid(2) as u64) * omega2(u);
            Ok(if e % 2 == 0 { 1 } else { -1 })
        }
        Place::Prime(l) => {
            if !crate::arith::is_prime(l) {
                return Err(HermitianError::NotPrime(l));
            }
            let (al, u) = split_off(a, l);
            let (be, v) = split_off(b, l);
            let mut s = 1;
            if (al * be).rem_euclid(2) == 1 && (l - 1) / 2 % 2 == 1 {
                s = -s;
            }
            if be.rem_euclid(2) == 1 {
                s *= legendre(u.reduce_mod(l)? as i64, l);
            }
            if al.rem_euclid(2) == 1 {
                s *= legendre(v.reduce_mod(l)? as i64, l);
            }
            Ok(s)
        }
    }
}

/// Primes dividing `2`, the numerators, or the denominators of the arguments.
pub fn bad_primes(xs: &[&Rat]) -> Result<Vec<u64>, HermitianError> {
    let mut out = BTreeSet::new();
    out.insert(2u64);
    for x in xs {
        for n in [x.numer(), x.denom()] {
            let n = n.magnitude().to_u64().ok_or(HermitianError::TooLarge)?;
            out.extend(factor(n).into_iter().map(|(q, _)| q));
        }
    }
    Ok(out.into_iter().collect())
}

/// `a` lies in `N(F_x^*)` iff `(a, d)_x = 1`.
pub fn is_local_norm(a: &Rat, field: &QuadImagField, place: Place) -> Result<bool, HermitianError> {
    if field.splitting(place) == Splitting::Split {
        if a.is_zero() {
            return Err(HermitianError::Zero);
        }
        return Ok(true);
    }
    Ok(hilbert_symbol(a, &Rat::from(field.d), place)? == 1)
}

/// `[Q_x^* : N(F_x^*)]`, detected by searching small non-norms.
pub fn norm_index(field: &QuadImagField, place: Place) -> Result<u8, HermitianError> {
    if field.splitting(place) == Splitting::Split {
        return Ok(1);
    }
    let mut candidates: Vec<i64> = alloc::vec![-1, 2, -2, 3, -3, 5, -5, 6, -6, 10, -10];
    if let Place::Prime(l) = place {
        let l = l as i64;
        candidates.push(l);
        candidates.push(-l);
        candidates.extend((2..l.min(200)).filter(|&u| legendre(u, l as u64) == -1).take(1));
        candidates.extend((2..l.min(200)).filter(|&u| legendre(u, l as u64) == -1).take(1).map(|u| u * l));
    }
    for c in candidates {
        if !is_local_norm(&Rat::from(c), field, place)? {
            return Ok(2);
        }
    }
    Ok(1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    BetaToXi,
    XiToBeta,
}

/// Element `x + y delta` of `F`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldElt {
    pub x: Rat,
    pub y: Rat,
}

/// Rank-one translation `xi = 2 delta beta` between an antisymmetric `beta` and a symmetric `xi`.
pub fn pairing_translate(
    field: &QuadImagField,
    value: &FieldElt,
    direction: Direction,
) -> Result<FieldElt, HermitianError> {
    let d = Rat::from(field.d);
    match direction {
        Direction::BetaToXi => {
            if !value.x.is_zero() {
                return Err(HermitianError::Symmetry);
            }
            Ok(FieldElt { x: Rat::from(2) * &d * &value.y, y: Rat::zero() })
        }
        Direction::XiToBeta => {
            if !value.y.is_zero() {
                return Err(HermitianError::Symmetry);
            }
            Ok(FieldElt { x: Rat::zero(), y: &value.x / (Rat::from(2) * &d) })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LocalClass {
    SplitTrivial,
    /// Element of `Z/2`: the discriminant modulo norms.
    Nonsplit(u8),
    Signature { p: u64, q: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LocalFormClass {
    pub place: Place,
    pub class: LocalClass,
}

impl LocalFormClass {
    /// Image in `Z/2` under the map to the global obstruction: discriminant class at nonsplit
    /// finite places, `q mod 2` at infinity.
    pub fn xi(&self) -> u8 {
        match self.class {
            LocalClass::SplitTrivial => 0,
            LocalClass::Nonsplit(c) => c,
            LocalClass::Signature { q, .. } => (q % 2) as u8,
        }
    }
}

fn discriminant(entries: &[Rat], n: usize) -> Result<Rat, HermitianError> {
    if entries.len() != n {
        return Err(HermitianError::Rank { found: entries.len(), rank: n });
    }
    if entries.iter().any(Rat::is_zero) {
        return Err(HermitianError::Zero);
    }
    Ok(entries.iter().fold(Rat::one(), |acc, e| acc * e))
}

/// Class in `H^1(Q_x, U)` of the diagonal hermitian form with the given entries.
pub fn local_class_u(
    field: &QuadImagField,
    n: usize,
    place: Place,
    entries: &[Rat],
) -> Result<LocalFormClass, HermitianError> {
    let disc = discriminant(entries, n)?;
    let class = match field.splitting(place) {
        Splitting::Split => LocalClass::SplitTrivial,
        Splitting::Archimedean => {
            let q = entries.iter().filter(|e| e.is_negative()).count() as u64;
            LocalClass::Signature { p: n as u64 - q, q }
        }
        _ => LocalClass::Nonsplit(u8::from(!is_local_norm(&disc, field, place)?)),
    };
    Ok(LocalFormClass { place, class })
}

/// Local data of a hermitian form: every place with nontrivial class, plus infinity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlobalFormSpec {
    field: QuadImagField,
    n: u64,
    local: Vec<LocalFormClass>,
}

impl GlobalFormSpec {
    pub fn new(field: QuadImagField, n: u64, mut local: Vec<LocalFormClass>) -> Result<Self, HermitianError> {
        local.sort_by_key(|c| c.place);
        for w in local.windows(2) {
            if w[0].place == w[1].place {
                return Err(HermitianError::DuplicatePlace(w[0].place));
            }
        }
        if local.iter().filter(|c| c.place == Place::Infinity).count() != 1 {
            return Err(HermitianError::Archimedean);
        }
        for c in &local {
            let ok = match (field.splitting(c.place), c.class) {
                (Splitting::Split, LocalClass::SplitTrivial) => true,
                (Splitting::Inert | Splitting::Ramified, LocalClass::Nonsplit(b)) => b < 2,
                (Splitting::Archimedean, LocalClass::Signature { p, q }) => {
                    if p + q != n {
                        return Err(HermitianError::Signature { p, q, n });
                    }
                    true
                }
                _ => false,
            };
            if !ok {
                return Err(HermitianError::ClassKind(c.place));
            }
        }
        Ok(GlobalFormSpec { field, n, local })
    }

    /// Local data of a global diagonal form, read off at `2`, the primes of `d`, those of the
    /// entries, and infinity.
    pub fn from_diagonal(field: QuadImagField, entries: &[Rat]) -> Result<Self, HermitianError> {
        let n = entries.len();
        discriminant(entries, n)?;
        let d = Rat::from(field.d);
        let mut refs: Vec<&Rat> = entries.iter().collect();
        refs.push(&d);
        let mut local = Vec::new();
        for l in bad_primes(&refs)? {
            let c = local_class_u(&field, n, Place::Prime(l), entries)?;
            if c.xi() != 0 {
                local.push(c);
            }
        }
        local.push(local_class_u(&field, n, Place::Infinity, entries)?);
        Self::new(field, n as u64, local)
    }

    pub fn field(&self) -> &QuadImagField {
        &self.field
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn local(&self) -> &[LocalFormClass] {
        &self.local
    }

    pub fn signature(&self) -> (u64, u64) {
        self.local
            .iter()
            .find_map(|c| match c.class {
                LocalClass::Signature { p, q } => Some((p, q)),
                _ => None,
            })
            .expect("validated")
    }

    fn finite_sum(&self) -> u8 {
        self.local
            .iter()
            .filter(|c| c.place != Place::Infinity)
            .fold(0, |acc, c| acc ^ c.xi())
    }
}

/// Whether the local data comes from a global hermitian form: `sum_x xi_x = 0` in `Z/2`.
pub fn global_exists_u(spec: &GlobalFormSpec) -> bool {
    spec.local.iter().fold(0, |acc, c| acc ^ c.xi()) == 0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GUClassification {
    /// Odd rank: the class is the unordered signature; finite classes are trivial.
    OddRank { signature: (u64, u64) },
    /// Even rank: existence iff the finite discriminant classes sum to `p mod 2`.
    EvenRank { exists: bool },
}

/// Global similitude class data in `H^1(Q, GU)`.
pub fn global_classify_gu(spec: &GlobalFormSpec) -> GUClassification {
    let (p, q) = spec.signature();
    if spec.n % 2 == 1 {
        GUClassification::OddRank { signature: (p.max(q), p.min(q)) }
    } else {
        GUClassification::EvenRank { exists: spec.finite_sum() == (p % 2) as u8 }
    }
}

/// Odd rank: two local data sets define the same similitude class iff unordered signatures agree.
pub fn gu_equivalent(a: &GlobalFormSpec, b: &GlobalFormSpec) -> Result<bool, HermitianError> {
    if a.n % 2 == 0 || b.n % 2 == 0 {
        return Err(HermitianError::Parity("odd"));
    }
    Ok(a.n == b.n && global_classify_gu(a) == global_classify_gu(b))
}

/// Smallest `|a| <= bound` whose norm class is nontrivial exactly at `places`.
pub fn find_norm_class_witness(
    field: &QuadImagField,
    places: &[Place],
    bound: i64,
) -> Result<Option<Rat>, HermitianError> {
    let want: BTreeSet<Place> = places.iter().copied().collect();
    let d = Rat::from(field.d);
    for m in 1..=bound {
        for a in [Rat::from(m), Rat::from(-m)] {
            let mut support: BTreeSet<Place> = BTreeSet::new();
            for l in bad_primes(&[&a, &d])? {
                if !is_local_norm(&a, field, Place::Prime(l))? {
                    support.insert(Place::Prime(l));
                }
            }
            if !is_local_norm(&a, field, Place::Infinity)? {
                support.insert(Place::Infinity);
            }
            if support == want {
                return Ok(Some(a));
            }
        }
    }
    Ok(None)
}
