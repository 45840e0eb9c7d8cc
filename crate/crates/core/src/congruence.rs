//! The congruence groups `A_(t;j)` and `B_(t;j,k)` as Howell kernels over `Z/p^k`, and a
//! checker for Serre's congruence theorem.

use alloc::string::String;
use alloc::vec::Vec;

use thiserror::Error;

use crate::arith::{howell_form, is_prime, ArithError, ResidueMatrix, ResidueRing, Submodule};
use crate::modforms::{
    basis_monomials, eisenstein, level_two_a, level_two_d, level_two_exponents, sturm_bound, Monomial, QSeries, SeriesFactory, WeightedForm,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CongruenceError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("the prime p must exceed 3, got {0}")]
    PrimeTooSmall(u64),
    #[error("the auxiliary prime must differ from p")]
    SamePrimes,
    #[error("exponents j and k must be positive")]
    NonPositive,
    #[error("precision {given} is below the required bound {needed}")]
    InsufficientPrecision { given: usize, needed: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// Verdict of a `B` computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BVerdict {
    WitnessFound,
    /// The old subspace was searched exhaustively; newforms were not.
    NoWitnessInOldSubspace,
    /// The whole level `l` space (within the pole bound) was searched.
    NoWitness,
}

/// Which level `l` forms may serve as the defect `g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessSpace {
    /// `h_1(q) + h_2(q^l)` with `h_1, h_2` of level one.
    Old,
    /// All of `M_{t-j}(Gamma_0(2))[Delta^{-1}]`; needs `l = 2`.
    Full,
}

impl WitnessSpace {
    pub fn as_str(&self) -> &'static str {
        match self {
            WitnessSpace::Old => "old",
            WitnessSpace::Full => "full",
        }
    }
}

impl BVerdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            BVerdict::WitnessFound => "witness-found",
            BVerdict::NoWitnessInOldSubspace => "no-witness-in-old-subspace",
            BVerdict::NoWitness => "no-witness",
        }
    }
}

/// A generator `F / Delta^m` of a congruence group, reduced modulo `p^j`.
#[derive(Debug, Clone, PartialEq)]
pub struct Generator {
    /// Coordinates on the monomial basis.
    pub coordinates: Vec<u64>,
    /// q-expansion of the cleared form `F`.
    pub series: QSeries<ResidueRing>,
    /// `log_p` of the additive order (in the quotient, for `B`).
    pub log_order: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CongruenceGroup {
    pub p: u64,
    pub l: u64,
    pub t: i64,
    /// The group lives modulo `p^log_modulus`.
    pub log_modulus: u32,
    /// Weight drop `j` of a `B` computation.
    pub weight_drop: Option<i64>,
    pub m_max: u32,
    pub precision_used: usize,
    pub monomials: Vec<Monomial>,
    pub generators: Vec<Generator>,
    pub log_size: u32,
    pub log_exponent: u32,
    pub verdict: Option<BVerdict>,
}

impl CongruenceGroup {
    pub fn exponent(&self) -> u64 {
        self.p.pow(self.log_exponent)
    }

    pub fn ring(&self) -> ResidueRing {
        ResidueRing::new(self.p, self.log_modulus).expect("validated modulus")
    }
}

fn validate(p: u64, l: u64) -> Result<(), CongruenceError> {
    if !is_prime(p) {
        return Err(CongruenceError::NotPrime(p));
    }
    if p <= 3 {
        return Err(CongruenceError::PrimeTooSmall(p));
    }
    if !is_prime(l) {
        return Err(CongruenceError::NotPrime(l));
    }
    if l == p {
        return Err(CongruenceError::SamePrimes);
    }
    Ok(())
}

/// Working precision: the requested one, raised to the determination bound for the cleared
/// level `l` condition, which has weight `t + 24 m`.
fn working_precision(t: i64, l: u64, m: u32, prec: usize) -> Result<usize, CongruenceError> {
    let needed = sturm_bound(t, l, m);
    if prec < needed {
        return Err(CongruenceError::InsufficientPrecision { given: prec, needed });
    }
    Ok(prec.max(sturm_bound(t + 12 * m as i64, l, m)))
}

fn scale_add(ring: ResidueRing, acc: &mut [u64], c: u64, v: &[u64]) {
    if c == 0 {
        return;
    }
    for (a, b) in acc.iter_mut().zip(v) {
        *a = ring.add(*a, ring.mul(c, *b));
    }
}

struct Columns {
    ring: ResidueRing,
    n: usize,
    cols: Vec<Vec<u64>>,
}

impl Columns {
    fn new(ring: ResidueRing, n: usize) -> Self {
        Columns { ring, n, cols: Vec::new() }
    }

    fn push(&mut self, top: &QSeries<ResidueRing>, bottom: &QSeries<ResidueRing>) {
        let mut col = Vec::with_capacity(2 * self.n);
        col.extend_from_slice(&top.coeffs()[..self.n]);
        col.extend_from_slice(&bottom.coeffs()[..self.n]);
        self.cols.push(col);
    }

    fn matrix(&self) -> ResidueMatrix {
        let rows = 2 * self.n;
        let mut m = ResidueMatrix::zeros(self.ring, rows, self.cols.len());
        for (j, c) in self.cols.iter().enumerate() {
            for (i, &v) in c.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }
}

/// Image `sum x_i F_i` of coordinates.
fn combine(ring: ResidueRing, n: usize, series: &[QSeries<ResidueRing>], x: &[u64]) -> Vec<u64> {
    let mut acc = alloc::vec![0u64; n];
    for (c, s) in x.iter().zip(series) {
        scale_add(ring, &mut acc, *c, s.coeffs());
    }
    acc
}

/// Howell form of `[image | coordinates]` rows, split into generators with nonzero image.
fn generators_from(
    ring: ResidueRing,
    n: usize,
    series: &[QSeries<ResidueRing>],
    coords: &[Vec<u64>],
) -> Vec<Generator> {
    let width = series.len();
    let rows: Vec<Vec<u64>> = coords
        .iter()
        .map(|x| {
            let mut r = combine(ring, n, series, x);
            r.extend_from_slice(&x[..width]);
            r
        })
        .collect();
    howell_form(ring, n + width, &rows)
        .into_iter()
        .filter(|r| r[..n].iter().any(|&v| v != 0))
        .map(|r| {
            let img = r[..n].to_vec();
            let log_order = Submodule::order_log(ring, &img);
            Generator {
                coordinates: r[n..].to_vec(),
                series: QSeries::new(ring, img),
                log_order,
            }
        })
        .collect()
}

/// `A_(t;j)`: forms `f` of weight `t` (poles of order at most `m_max`) with
/// `(l^t - 1) f = 0` and `l^t V_l(f) - f = 0` modulo `p^j`.
pub fn compute_a(
    p: u64,
    l: u64,
    t: i64,
    j: u32,
    m_max: u32,
    prec: usize,
) -> Result<CongruenceGroup, CongruenceError> {
    validate(p, l)?;
    if j == 0 {
        return Err(CongruenceError::NonPositive);
    }
    let ring = ResidueRing::new(p, j)?;
    let n = working_precision(t, l, m_max, prec)?;
    let monomials = basis_monomials(t, m_max);
    let mut group = CongruenceGroup {
        p,
        l,
        t,
        log_modulus: j,
        weight_drop: None,
        m_max,
        precision_used: n,
        monomials: monomials.clone(),
        generators: Vec::new(),
        log_size: 0,
        log_exponent: 0,
        verdict: None,
    };
    if monomials.is_empty() {
        return Ok(group);
    }
    let mut fac = SeriesFactory::residue(ring, n);
    let series: Vec<QSeries<ResidueRing>> = monomials
        .iter()
        .map(|mon| fac.cleared(mon, m_max).expect("pole within bound"))
        .collect();
    let lt = ring.pow_signed(l % p.pow(j), t)?;
    let dm = fac.delta_pow(m_max);
    let vdm = dm.v_op(l as usize);
    let mut cols = Columns::new(ring, n);
    for f in &series {
        let top = f.scale(&ring.sub(lt, 1));
        let bottom = f.v_op(l as usize).mul(&dm).scale(&lt).sub(&f.mul(&vdm));
        cols.push(&top, &bottom);
    }
    let kernel = cols.matrix().kernel();
    group.generators = generators_from(ring, n, &series, &kernel);
    let image: Vec<Vec<u64>> = group.generators.iter().map(|g| g.series.coeffs().to_vec()).collect();
    group.log_size = Submodule::new(ring, n, &image).log_size();
    group.log_exponent = group.generators.iter().map(|g| g.log_order).max().unwrap_or(0);
    Ok(group)
}

/// `B_(t;j,k)`: forms of weight `t` modulo those of weight `t - j`, with `(l^t - 1) f`
/// congruent to a weight `t - j` form and `l^t V_l(f) - f` congruent modulo `p^k` to a
/// level `l` form `g` of weight `t - j` drawn from `space`.
#[allow(clippy::too_many_arguments)]
pub fn compute_b(
    p: u64,
    l: u64,
    t: i64,
    j: i64,
    k: u32,
    m_max: u32,
    prec: usize,
    space: WitnessSpace,
) -> Result<CongruenceGroup, CongruenceError> {
    validate(p, l)?;
    if space == WitnessSpace::Full && l != 2 {
        return Err(CongruenceError::Precondition(
            "the full level l witness space is available for l = 2 only".into(),
        ));
    }
    if j <= 0 || k == 0 {
        return Err(CongruenceError::NonPositive);
    }
    let step = (p as i64 - 1) * (p as i64).pow(k - 1);
    if j % step != 0 {
        return Err(CongruenceError::Precondition(alloc::format!(
            "j = {j} is not divisible by (p-1)p^(k-1) = {step}"
        )));
    }
    let ring = ResidueRing::new(p, k)?;
    let n = working_precision(t, l, m_max, prec)?;
    let upper = basis_monomials(t, m_max);
    let lower = basis_monomials(t - j, m_max);
    let mut group = CongruenceGroup {
        p,
        l,
        t,
        log_modulus: k,
        weight_drop: Some(j),
        m_max,
        precision_used: n,
        monomials: upper.clone(),
        generators: Vec::new(),
        log_size: 0,
        log_exponent: 0,
        verdict: Some(match space {
            WitnessSpace::Old => BVerdict::NoWitnessInOldSubspace,
            WitnessSpace::Full => BVerdict::NoWitness,
        }),
    };
    if upper.is_empty() {
        return Ok(group);
    }
    let mut fac = SeriesFactory::residue(ring, n);
    let fs: Vec<QSeries<ResidueRing>> =
        upper.iter().map(|mon| fac.cleared(mon, m_max).expect("pole within bound")).collect();
    let gs: Vec<QSeries<ResidueRing>> =
        lower.iter().map(|mon| fac.cleared(mon, m_max).expect("pole within bound")).collect();
    let lt = ring.pow_signed(l % p.pow(k), t)?;
    let dm = fac.delta_pow(m_max);
    let vdm = dm.v_op(l as usize);
    let zero = QSeries::zero(ring, n);
    let mut cols = Columns::new(ring, n);
    for f in &fs {
        let top = f.scale(&ring.sub(lt, 1));
        let bottom = f.v_op(l as usize).mul(&dm).scale(&lt).sub(&f.mul(&vdm));
        cols.push(&top, &bottom);
    }
    for g in &gs {
        cols.push(&g.neg(), &zero);
    }
    match space {
        WitnessSpace::Old => {
            for g in &gs {
                cols.push(&zero, &g.mul(&vdm).neg());
            }
            for g in &gs {
                cols.push(&zero, &g.v_op(l as usize).mul(&dm).neg());
            }
        }
        WitnessSpace::Full => {
            // g = G / Delta(q)^m or G / Delta(q^2)^m with G on Gamma_0(2).
            let a = level_two_a(n).reduce(ring)?;
            let d = level_two_d(n).reduce(ring)?;
            for (ea, eb) in level_two_exponents(t - j + 12 * m_max as i64) {
                let g = a.pow(ea).mul(&d.pow(eb));
                cols.push(&zero, &g.mul(&vdm).neg());
                cols.push(&zero, &g.mul(&dm).neg());
            }
        }
    }
    let kernel = cols.matrix().kernel();
    let coords: Vec<Vec<u64>> = kernel.iter().map(|x| x[..fs.len()].to_vec()).collect();
    let lower_span = Submodule::new(
        ring,
        n,
        &gs.iter().map(|g| g.coeffs().to_vec()).collect::<Vec<_>>(),
    );
    let mut gens = generators_from(ring, n, &fs, &coords);
    let mut all: Vec<Vec<u64>> = gens.iter().map(|g| g.series.coeffs().to_vec()).collect();
    all.extend(lower_span.rows().iter().cloned());
    let total = Submodule::new(ring, n, &all);
    for g in gens.iter_mut() {
        g.log_order = lower_span.quotient_order_log(g.series.coeffs());
    }
    gens.retain(|g| g.log_order > 0);
    group.log_size = total.log_size() - lower_span.log_size();
    group.log_exponent = gens.iter().map(|g| g.log_order).max().unwrap_or(0);
    group.generators = gens;
    if group.log_size > 0 {
        group.verdict = Some(BVerdict::WitnessFound);
    }
    Ok(group)
}

/// Recompute every generator from its coordinates at `factor` times the working precision and
/// test the defining conditions of `A` there.
pub fn verify_a(group: &CongruenceGroup, factor: usize) -> bool {
    let ring = group.ring();
    let n = group.precision_used * factor.max(1);
    let mut fac = SeriesFactory::residue(ring, n);
    let series: Vec<QSeries<ResidueRing>> = group
        .monomials
        .iter()
        .map(|mon| fac.cleared(mon, group.m_max).expect("pole within bound"))
        .collect();
    let Ok(lt) = ring.pow_signed(group.l % ring.modulus(), group.t) else {
        return false;
    };
    let dm = fac.delta_pow(group.m_max);
    let vdm = dm.v_op(group.l as usize);
    group.generators.iter().all(|g| {
        let f = QSeries::new(ring, combine(ring, n, &series, &g.coordinates));
        let short_ok = f.truncate(group.precision_used) == g.series;
        let c1 = f.scale(&ring.sub(lt, 1)).is_zero();
        let c2 = f.v_op(group.l as usize).mul(&dm).scale(&lt).sub(&f.mul(&vdm)).is_zero();
        short_ok && c1 && c2
    })
}

/// Outcome of [`serre_congruence_check`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SerreVerdict {
    Consistent,
    WeightViolation,
    CongruenceViolation,
}

impl SerreVerdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            SerreVerdict::Consistent => "consistent",
            SerreVerdict::WeightViolation => "weight-violation",
            SerreVerdict::CongruenceViolation => "congruence-violation",
        }
    }
}

/// Given `f_1 = f_2` modulo `p^k` as q-expansions, check that `t_2 - t_1` lies in
/// `(p-1)p^(k-1) Z` and that `f_2 = E_{p-1}^{(t_2-t_1)/(p-1)} f_1` modulo `p^k`.
pub fn serre_congruence_check(
    f1: &WeightedForm,
    f2: &WeightedForm,
    p: u64,
    k: u32,
) -> Result<SerreVerdict, CongruenceError> {
    if !is_prime(p) {
        return Err(CongruenceError::NotPrime(p));
    }
    if p <= 3 {
        return Err(CongruenceError::PrimeTooSmall(p));
    }
    if k == 0 {
        return Err(CongruenceError::NonPositive);
    }
    let ring = ResidueRing::new(p, k)?;
    let m = f1.pole_order.max(f2.pole_order);
    let n = f1.precision().min(f2.precision());
    let g1 = f1.with_pole_order(m).expect("raising pole order");
    let g2 = f2.with_pole_order(m).expect("raising pole order");
    let reduce = |s: &QSeries<crate::modforms::Rationals>| {
        s.truncate(n).reduce(ring).map_err(|_| {
            CongruenceError::Precondition("a q-expansion is not p-integral".into())
        })
    };
    let (r1, r2) = (reduce(&g1.cleared)?, reduce(&g2.cleared)?);
    if r1 != r2 {
        return Err(CongruenceError::Precondition(
            "the two q-expansions are not congruent modulo p^k".into(),
        ));
    }
    let diff = f2.weight - f1.weight;
    let step = (p as i64 - 1) * (p as i64).pow(k - 1);
    if diff % step != 0 {
        return Ok(SerreVerdict::WeightViolation);
    }
    let e = eisenstein((p - 1) as u32, n).expect("p - 1 is even and at least 4");
    let power = e.pow((diff.unsigned_abs() / (p - 1)) as u32);
    let (lo, hi) = if diff >= 0 { (&r1, &r2) } else { (&r2, &r1) };
    let lifted = reduce(&power)?.mul(lo);
    if &lifted == hi {
        Ok(SerreVerdict::Consistent)
    } else {
        Ok(SerreVerdict::CongruenceViolation)
    }
}
