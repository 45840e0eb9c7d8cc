//! p-adic types over abstract CM place structures: validity, slopes, local invariants,
//! dimensions, the Kottwitz shift, minimality against supplied substructures, and Weil integers.

use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use thiserror::Error;

use crate::arith::{factor, Rat};
use crate::newton::{NewtonError, NewtonPolygon};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HondaTateError {
    #[error("conjugation is not an involution on the place list")]
    ConjNotInvolution,
    #[error("conjugation does not preserve (e, f) at place {0}")]
    ConjChangesDegrees(String),
    #[error("ramification and residue degrees must be positive (place {0})")]
    ZeroDegree(String),
    #[error("local degrees sum to {found}, declared total is {declared}")]
    DegreeMismatch { found: u64, declared: u64 },
    #[error("type has {found} values of eta for {expected} places")]
    EtaCount { found: usize, expected: usize },
    #[error("invalid p-adic type: {0:?}")]
    InvalidType(Vec<TypeViolation>),
    #[error("inconsistent covering data: {0}")]
    Covering(String),
    #[error("slope {slope} at place {place} is not realizable at height {height}")]
    NonRealizable { place: String, slope: Rat, height: Rat },
    #[error(transparent)]
    Newton(#[from] NewtonError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Place {
    pub id: String,
    pub e: u64,
    pub f: u64,
}

impl Place {
    pub fn new(id: impl Into<String>, e: u64, f: u64) -> Place {
        Place { id: id.into(), e, f }
    }

    /// Local degree `d_x = e_x f_x`.
    pub fn degree(&self) -> u64 {
        self.e * self.f
    }
}

/// Places over `p` of a CM field, the action of complex conjugation, and the global degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CMPlaceStructure {
    p: u64,
    places: Vec<Place>,
    conj: Vec<usize>,
    degree: u64,
    real_places: u64,
}

impl CMPlaceStructure {
    pub fn new(
        p: u64,
        places: Vec<Place>,
        conj: Vec<usize>,
        degree: u64,
        real_places: u64,
    ) -> Result<Self, HondaTateError> {
        if conj.len() != places.len() || conj.iter().any(|&c| c >= places.len()) {
            return Err(HondaTateError::ConjNotInvolution);
        }
        for (i, &c) in conj.iter().enumerate() {
            if conj[c] != i {
                return Err(HondaTateError::ConjNotInvolution);
            }
            let (x, y) = (&places[i], &places[c]);
            if x.e == 0 || x.f == 0 {
                return Err(HondaTateError::ZeroDegree(x.id.clone()));
            }
            if x.e != y.e || x.f != y.f {
                return Err(HondaTateError::ConjChangesDegrees(x.id.clone()));
            }
        }
        let found: u64 = places.iter().map(Place::degree).sum();
        if found != degree {
            return Err(HondaTateError::DegreeMismatch { found, declared: degree });
        }
        Ok(CMPlaceStructure { p, places, conj, degree, real_places })
    }

    /// Imaginary quadratic field in which `p` splits as `u u^c`.
    pub fn split_quadratic(p: u64) -> Self {
        Self::new(p, alloc::vec![Place::new("u", 1, 1), Place::new("uc", 1, 1)], alloc::vec![1, 0], 2, 0)
            .expect("well-formed")
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn places(&self) -> &[Place] {
        &self.places
    }

    pub fn conj(&self) -> &[usize] {
        &self.conj
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn real_places(&self) -> u64 {
        self.real_places
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.places.iter().position(|x| x.id == id)
    }
}

/// A CM place structure with a rational `eta_x` at every place over `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PAdicType {
    pub structure: CMPlaceStructure,
    pub eta: Vec<Rat>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TypeViolation {
    /// `eta_x / e_x + eta_{c(x)} / e_x` differs from one.
    ConjugateSum { place: String, sum: Rat },
    /// Slope `eta_x / e_x` outside `[0, 1]`.
    SlopeRange { place: String, slope: Rat },
}

impl PAdicType {
    pub fn new(structure: CMPlaceStructure, eta: Vec<Rat>) -> Result<Self, HondaTateError> {
        if eta.len() != structure.places.len() {
            return Err(HondaTateError::EtaCount { found: eta.len(), expected: structure.places.len() });
        }
        Ok(PAdicType { structure, eta })
    }

    /// The type of Frobenius `pi` of an abelian variety over `F_{p^r}`: `eta_x = x(pi) / r`
    /// with `x` normalised by `x(p) = e_x`.
    pub fn from_frobenius(
        structure: CMPlaceStructure,
        valuations: &[u64],
        r: u64,
    ) -> Result<Self, HondaTateError> {
        let eta = valuations.iter().map(|&v| Rat::new(v, r).expect("r > 0")).collect();
        Self::new(structure, eta)
    }

    /// Split imaginary quadratic type `(1/n, (n-1)/n)`.
    pub fn split_height(p: u64, n: u64) -> Self {
        let s = CMPlaceStructure::split_quadratic(p);
        let eta = alloc::vec![Rat::new(1, n).expect("n > 0"), Rat::new(n - 1, n).expect("n > 0")];
        PAdicType { structure: s, eta }
    }
}

pub fn validate_type(t: &PAdicType) -> Result<(), Vec<TypeViolation>> {
    let s = &t.structure;
    let mut bad = Vec::new();
    for (i, x) in s.places.iter().enumerate() {
        let e = Rat::from(x.e);
        let sum = (&t.eta[i] + &t.eta[s.conj[i]]) / &e;
        if !sum.is_one() {
            bad.push(TypeViolation::ConjugateSum { place: x.id.clone(), sum });
        }
        let slope = &t.eta[i] / &e;
        if slope.is_negative() || slope > 1 {
            bad.push(TypeViolation::SlopeRange { place: x.id.clone(), slope });
        }
    }
    if bad.is_empty() {
        Ok(())
    } else {
        Err(bad)
    }
}

fn checked(t: &PAdicType) -> Result<(), HondaTateError> {
    validate_type(t).map_err(HondaTateError::InvalidType)
}

/// Slopes `s_x = eta_x / e_x`.
pub fn slopes_of_type(t: &PAdicType) -> Result<Vec<Rat>, HondaTateError> {
    checked(t)?;
    Ok(t.structure.places.iter().zip(&t.eta).map(|(x, eta)| eta / Rat::from(x.e)).collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HondaTateInvariants {
    /// `inv_x = eta_x f_x mod 1` at each place over `p`.
    pub inv: Vec<Rat>,
    /// `1/2` at each real place.
    pub real_inv: Vec<Rat>,
    /// Least common denominator of all invariants.
    pub m: u64,
    /// `d m / 2`.
    pub dim_a: Rat,
}

fn lcm_of_denominators<'a>(xs: impl Iterator<Item = &'a Rat>) -> BigInt {
    xs.fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

/// Local invariants of the endomorphism algebra, `m`, and the dimension of the abelian variety.
pub fn invariants_and_dimension(t: &PAdicType) -> Result<HondaTateInvariants, HondaTateError> {
    checked(t)?;
    let inv: Vec<Rat> = t
        .structure
        .places
        .iter()
        .zip(&t.eta)
        .map(|(x, eta)| (eta * Rat::from(x.f)).frac())
        .collect();
    let real_inv: Vec<Rat> =
        (0..t.structure.real_places).map(|_| Rat::new(1, 2).expect("nonzero")).collect();
    let m = lcm_of_denominators(inv.iter().chain(real_inv.iter()))
        .to_u64()
        .expect("denominator fits in u64");
    let dim_a = Rat::from(t.structure.degree * m) / Rat::from(2u64);
    Ok(HondaTateInvariants { inv, real_inv, m, dim_a })
}

/// Newton polygon of `A(p)`: slope `s_x` with height `d_x * height_factor` at every place.
pub fn newton_polygon_of_type(t: &PAdicType, height_factor: u64) -> Result<NewtonPolygon, HondaTateError> {
    let slopes = slopes_of_type(t)?;
    let mut segs = Vec::new();
    for (x, s) in t.structure.places.iter().zip(&slopes) {
        let height = x.degree() * height_factor;
        let den = s.denom().to_u64().expect("small denominator");
        if height % den != 0 {
            return Err(HondaTateError::NonRealizable {
                place: x.id.clone(),
                slope: s.clone(),
                height: Rat::from(height),
            });
        }
        let num = s.numer().to_u64().expect("nonnegative slope");
        segs.push((num, den, height / den));
    }
    Ok(NewtonPolygon::from_slopes(&segs)?)
}

/// Newton polygon at the height `d_x m` forced by the invariants.
pub fn newton_polygon(t: &PAdicType) -> Result<NewtonPolygon, HondaTateError> {
    let inv = invariants_and_dimension(t)?;
    newton_polygon_of_type(t, inv.m)
}

/// Invariants of `B (x)_F L` at the places of `L`, each a rational taken modulo one.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LocalInvariants {
    pub over_p: Vec<Rat>,
    pub away: Vec<Rat>,
    pub real: Vec<Rat>,
}

/// `inv_x D`: `eta_x f_x - inv_x B` over `p`, `-inv_x B` away from `p`, `1/2 - inv_x B` at real places.
pub fn kottwitz_invariants(t: &PAdicType, b: &LocalInvariants) -> Result<LocalInvariants, HondaTateError> {
    checked(t)?;
    let n = t.structure.places.len();
    if b.over_p.len() != n {
        return Err(HondaTateError::EtaCount { found: b.over_p.len(), expected: n });
    }
    let half = Rat::new(1, 2).expect("nonzero");
    let over_p = t
        .structure
        .places
        .iter()
        .zip(&t.eta)
        .zip(&b.over_p)
        .map(|((x, eta), bi)| (eta * Rat::from(x.f) - bi).frac())
        .collect();
    let away = b.away.iter().map(|bi| (-bi).frac()).collect();
    let real = b.real.iter().map(|bi| (&half - bi).frac()).collect();
    Ok(LocalInvariants { over_p, away, real })
}

/// How a place of the type's structure lies over a place of a candidate substructure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cover {
    pub below: usize,
    pub rel_e: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Minimality {
    /// No type on the substructure pulls back to this one.
    MinimalOverSub,
    /// The type is pulled back from this type on the substructure.
    Descends(Vec<Rat>),
}

/// Decide whether `t` is pulled back along the supplied covering from `sub`, i.e. whether
/// `eta_{x'} = e_{x'/x} eta_x` has a solution on the places of `sub`.
pub fn minimality_check(
    t: &PAdicType,
    sub: &CMPlaceStructure,
    covering: &[Cover],
) -> Result<Minimality, HondaTateError> {
    checked(t)?;
    let s = &t.structure;
    if covering.len() != s.places.len() {
        return Err(HondaTateError::Covering(alloc::format!(
            "{} covering entries for {} places",
            covering.len(),
            s.places.len()
        )));
    }
    let mut rel_degree: Vec<u64> = alloc::vec![0; sub.places.len()];
    for (i, cov) in covering.iter().enumerate() {
        let Some(y) = sub.places.get(cov.below) else {
            return Err(HondaTateError::Covering(alloc::format!("place index {} out of range", cov.below)));
        };
        let x = &s.places[i];
        if cov.rel_e == 0 || x.e != cov.rel_e * y.e || x.f % y.f != 0 {
            return Err(HondaTateError::Covering(alloc::format!(
                "ramification or residue degree of {} does not factor through {}",
                x.id, y.id
            )));
        }
        if covering[s.conj[i]].below != sub.conj[cov.below] {
            return Err(HondaTateError::Covering(alloc::format!(
                "conjugation of {} does not lie over the conjugate of {}",
                x.id, y.id
            )));
        }
        rel_degree[cov.below] += cov.rel_e * (x.f / y.f);
    }
    let first = rel_degree.first().copied().unwrap_or(0);
    if rel_degree.iter().any(|&r| r == 0 || r != first) || sub.degree * first != s.degree {
        return Err(HondaTateError::Covering("relative degrees are not constant".into()));
    }
    let mut eta_sub: Vec<Option<Rat>> = alloc::vec![None; sub.places.len()];
    for (i, cov) in covering.iter().enumerate() {
        let want = &t.eta[i] / Rat::from(cov.rel_e);
        match &eta_sub[cov.below] {
            None => eta_sub[cov.below] = Some(want),
            Some(v) if *v == want => {}
            Some(_) => return Ok(Minimality::MinimalOverSub),
        }
    }
    Ok(Minimality::Descends(eta_sub.into_iter().map(|v| v.expect("every place covered")).collect()))
}

/// `pi = a + b sqrt(d)` in an imaginary quadratic field.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WeilInteger {
    pub d: i64,
    pub a: i64,
    pub b: i64,
    pub q: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeilViolation {
    #[error("norm of pi is {0}, not q")]
    Norm(i128),
    #[error("q = {0} is not a prime power")]
    NotPrimePower(u64),
    #[error("d = {0} is not a negative squarefree integer")]
    BadField(i64),
}

/// `|pi|^2 = N(pi) = a^2 - d b^2 = q` in every complex embedding.
pub fn verify_weil_integer(w: &WeilInteger) -> Result<(), WeilViolation> {
    if w.d >= 0 || factor(w.d.unsigned_abs()).iter().any(|&(_, e)| e > 1) {
        return Err(WeilViolation::BadField(w.d));
    }
    if factor(w.q).len() != 1 {
        return Err(WeilViolation::NotPrimePower(w.q));
    }
    let norm = w.a as i128 * w.a as i128 - w.d as i128 * w.b as i128 * w.b as i128;
    if norm == w.q as i128 {
        Ok(())
    } else {
        Err(WeilViolation::Norm(norm))
    }
}
