//! Chromatic level one: class groups of imaginary quadratic fields via reduced forms, S-unit
//! witnesses, split-prime generators `q = t / t^c`, decomposition counts, and J orders.

use alloc::vec::Vec;

use thiserror::Error;

use crate::arith::{factor, gcd_u64, hensel_sqrt, is_prime, kronecker, mod_inv, mod_pow, sqrt_mod_prime, Rat};
use crate::hermitian::QuadImagField;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Level1Error {
    #[error("discriminant {disc} is not fundamental; use the field with d = {hint}")]
    NonFundamental { disc: i64, hint: i64 },
    #[error("form has discriminant {found}, expected {expected}")]
    Discriminant { found: i64, expected: i64 },
    #[error("form is not positive definite")]
    NotPositive,
    #[error("{p} is not an odd prime split in the field")]
    NotSplit { p: u64 },
    #[error("p = 2 needs two generating split primes and is not supported")]
    PrimeTwo,
    #[error("no generating split prime below the search cap {cap}")]
    SearchExhausted { cap: u64 },
    #[error("{l} does not give a prime ideal of degree one")]
    BadPrime { l: u64 },
    #[error("generator is divisible by p")]
    DivisibleByP,
    #[error("k^t = 1 exactly for t = {t}")]
    TrivialPower { t: u64 },
    #[error("arithmetic overflow")]
    Overflow,
}

/// `a x^2 + b x y + c y^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BQForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

fn egcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a.abs(), a.signum(), 0)
    } else {
        let (g, x, y) = egcd(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}

impl BQForm {
    pub fn new(a: i64, b: i64, c: i64) -> Self {
        BQForm { a, b, c }
    }

    pub fn discriminant(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    /// `x^2 + x y + (1 - D)/4 y^2` or `x^2 - D/4 y^2`.
    pub fn principal(disc: i64) -> Self {
        let b = disc.rem_euclid(2);
        BQForm { a: 1, b, c: (b * b - disc) / 4 }
    }

    pub fn is_reduced(&self) -> bool {
        self.b.abs() <= self.a && self.a <= self.c && (self.b >= 0 || (self.b.abs() != self.a && self.a != self.c))
    }

    pub fn reduce(&self) -> Self {
        let d = self.discriminant();
        let mut f = *self;
        loop {
            if f.b.abs() > f.a || f.b == -f.a {
                let two_a = 2 * f.a;
                let k = (f.a - f.b).div_euclid(two_a);
                f.b += two_a * k;
                f.c = (f.b * f.b - d) / (4 * f.a);
            }
            if f.a > f.c || (f.a == f.c && f.b < 0) {
                f = BQForm { a: f.c, b: -f.b, c: f.a };
                continue;
            }
            if f.b.abs() <= f.a && f.b != -f.a {
                return f;
            }
        }
    }

    pub fn inverse(&self) -> Self {
        BQForm { a: self.a, b: -self.b, c: self.c }.reduce()
    }

    /// Dirichlet composition without reduction: `[f1][f2] = e [f3]` as ideals.
    pub fn compose_raw(&self, other: &BQForm) -> (BQForm, i64) {
        let d = self.discriminant();
        let (a1, b1) = (self.a, self.b);
        let (a2, b2) = (other.a, other.b);
        let beta = (b1 + b2) / 2;
        let (g1, s1, t1) = egcd(a1, a2);
        let (e, s2, t2) = egcd(g1, beta);
        let (u, v, w) = (s2 * s1, s2 * t1, t2);
        let a3 = a1 * a2 / (e * e);
        let num = u as i128 * a1 as i128 * b2 as i128
            + v as i128 * a2 as i128 * b1 as i128
            + w as i128 * ((b1 as i128 * b2 as i128 + d as i128) / 2);
        let b3 = (num / e as i128).rem_euclid(2 * a3 as i128) as i64;
        let c3 = (b3 * b3 - d) / (4 * a3);
        (BQForm { a: a3, b: b3, c: c3 }, e)
    }

    pub fn compose(&self, other: &BQForm) -> BQForm {
        self.compose_raw(other).0.reduce()
    }
}

/// Whether `disc` is the discriminant of an imaginary quadratic field.
pub fn fundamental_check(disc: i64) -> Result<(), Level1Error> {
    let squarefree = |m: i64| factor(m.unsigned_abs()).iter().all(|&(_, e)| e == 1);
    let kernel = |m: i64| {
        let s: i64 = factor(m.unsigned_abs()).iter().filter(|&&(_, e)| e % 2 == 1).map(|&(p, _)| p as i64).product();
        -s
    };
    if disc >= 0 {
        return Err(Level1Error::NotPositive);
    }
    let ok = if disc.rem_euclid(4) == 1 {
        squarefree(disc)
    } else if disc.rem_euclid(4) == 0 {
        let m = disc / 4;
        matches!(m.rem_euclid(4), 2 | 3) && squarefree(m)
    } else {
        false
    };
    if ok {
        Ok(())
    } else {
        Err(Level1Error::NonFundamental { disc, hint: kernel(disc) })
    }
}

/// All reduced primitive forms of discriminant `disc`.
pub fn reduced_forms(disc: i64) -> Vec<BQForm> {
    let mut out = Vec::new();
    let mut a = 1i64;
    while 3 * a * a <= -disc {
        for b in -a..=a {
            let num = b * b - disc;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            let f = BQForm { a, b, c };
            if f.is_reduced() && gcd_u64(gcd_u64(a as u64, b.unsigned_abs()), c as u64) == 1 {
                out.push(f);
            }
        }
        a += 1;
    }
    out.sort();
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassGroup {
    pub disc: i64,
    pub forms: Vec<BQForm>,
    /// `table[i][j]` is the index of `forms[i] * forms[j]`.
    pub table: Vec<Vec<usize>>,
}

impl ClassGroup {
    pub fn order(&self) -> usize {
        self.forms.len()
    }

    pub fn index_of(&self, f: &BQForm) -> Option<usize> {
        let r = f.reduce();
        self.forms.iter().position(|g| *g == r)
    }

    pub fn identity(&self) -> usize {
        self.index_of(&BQForm::principal(self.disc)).expect("principal form")
    }

    pub fn element_order(&self, i: usize) -> usize {
        let id = self.identity();
        let mut x = i;
        let mut k = 1;
        while x != id {
            x = self.table[x][i];
            k += 1;
        }
        k
    }

    /// Invariant factors of the group, from element orders of its Sylow subgroups.
    pub fn structure(&self) -> Vec<usize> {
        let h = self.order();
        let orders: Vec<usize> = (0..h).map(|i| self.element_order(i)).collect();
        let mut prime_powers = Vec::new();
        for (p, e) in factor(h as u64) {
            let p = p as usize;
            let killed_by = |k: u32| orders.iter().filter(|&&o| p.pow(k) % o == 0).count();
            // ranks[k] counts cyclic factors of order at least p^(k+1).
            let ranks: Vec<u32> = (1..=e).map(|k| (killed_by(k) / killed_by(k - 1)).ilog(p)).collect();
            for k in 0..ranks.len() {
                let next = ranks.get(k + 1).copied().unwrap_or(0);
                for _ in next..ranks[k] {
                    prime_powers.push(p.pow(k as u32 + 1));
                }
            }
        }
        merge_invariants(prime_powers)
    }
}

fn merge_invariants(prime_powers: Vec<usize>) -> Vec<usize> {
    let mut by_prime: Vec<Vec<usize>> = Vec::new();
    for q in prime_powers {
        let p = factor(q as u64)[0].0 as usize;
        match by_prime.iter_mut().find(|v| v[0] % p == 0) {
            Some(v) => v.push(q),
            None => by_prime.push(alloc::vec![q]),
        }
    }
    for v in by_prime.iter_mut() {
        v.sort_unstable_by(|a, b| b.cmp(a));
    }
    let len = by_prime.iter().map(Vec::len).max().unwrap_or(0);
    let mut out: Vec<usize> = (0..len).map(|i| by_prime.iter().filter_map(|v| v.get(i)).product()).collect();
    out.reverse();
    out
}

pub fn class_group_of_discriminant(disc: i64) -> Result<ClassGroup, Level1Error> {
    fundamental_check(disc)?;
    let forms = reduced_forms(disc);
    let table = forms
        .iter()
        .map(|f| forms.iter().map(|g| forms.iter().position(|x| *x == f.compose(g)).expect("closed")).collect())
        .collect();
    Ok(ClassGroup { disc, forms, table })
}

pub fn class_group(field: &QuadImagField) -> ClassGroup {
    class_group_of_discriminant(field.discriminant()).expect("field discriminants are fundamental")
}

/// `(x + y sqrt D) / 2` in the ring of integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OElt {
    pub x: i64,
    pub y: i64,
}

impl OElt {
    pub fn norm(&self, disc: i64) -> i64 {
        (self.x * self.x - disc * self.y * self.y) / 4
    }

    /// Coordinates `(a, b)` with the element equal to `a + b sqrt d`.
    pub fn in_sqrt_d(&self, field: &QuadImagField) -> (Rat, Rat) {
        let a = Rat::new(self.x, 2).expect("nonzero");
        let b = if field.discriminant() == field.d() { Rat::new(self.y, 2) } else { Ok(Rat::from(self.y)) };
        (a, b.expect("nonzero"))
    }

    pub fn conj(&self) -> OElt {
        OElt { x: self.x, y: -self.y }
    }

    pub fn mul(&self, other: &OElt, disc: i64) -> OElt {
        OElt {
            x: (self.x * other.x + disc * self.y * other.y) / 2,
            y: (self.x * other.y + self.y * other.x) / 2,
        }
    }
}

/// Elements of norm `n`.
pub fn elements_of_norm(disc: i64, n: i64) -> Vec<OElt> {
    let mut out = Vec::new();
    let mut y = 0i64;
    while -disc * y * y <= 4 * n {
        let x2 = 4 * n + disc * y * y;
        let x = x2.isqrt();
        if x * x == x2 {
            for sx in if x == 0 { alloc::vec![0] } else { alloc::vec![x, -x] } {
                for sy in if y == 0 { alloc::vec![0] } else { alloc::vec![y, -y] } {
                    out.push(OElt { x: sx, y: sy });
                }
            }
        }
        y += 1;
    }
    out.sort();
    out
}

/// Ideal `content * [A, (-B + sqrt D) / 2]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ideal {
    pub content: i64,
    pub form: BQForm,
}

impl Ideal {
    pub fn unit(disc: i64) -> Self {
        Ideal { content: 1, form: BQForm::principal(disc) }
    }

    pub fn norm(&self) -> i64 {
        self.content * self.content * self.form.a
    }

    pub fn mul(&self, other: &Ideal) -> Ideal {
        let (f, e) = self.form.compose_raw(&other.form);
        Ideal { content: self.content * other.content * e, form: f }
    }

    pub fn pow(&self, k: u32) -> Ideal {
        let disc = self.form.discriminant();
        (0..k).fold(Ideal::unit(disc), |acc, _| acc.mul(self))
    }

    pub fn contains(&self, z: &OElt) -> bool {
        let c = self.content;
        if z.x % c != 0 || z.y % c != 0 {
            return false;
        }
        let (x, y) = (z.x / c, z.y / c);
        (x as i128 + y as i128 * self.form.b as i128).rem_euclid(2 * self.form.a as i128) == 0
    }

    /// A generator, if the ideal is principal.
    pub fn generator(&self) -> Option<OElt> {
        let disc = self.form.discriminant();
        elements_of_norm(disc, self.norm()).into_iter().find(|z| self.contains(z))
    }
}

/// A prime of degree one over `l`: the ideal `[l, (-b + sqrt D) / 2]` with `b^2 = D mod 4l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct PrimeIdeal {
    pub l: u64,
    pub b: i64,
}

impl PrimeIdeal {
    /// Both primes (one if ramified) of degree one over `l`, ordered by `b` in `[0, l)` or `[0, 2l)`.
    pub fn over(field: &QuadImagField, l: u64) -> Result<Vec<PrimeIdeal>, Level1Error> {
        let disc = field.discriminant();
        if !is_prime(l) || kronecker(disc, l as i64) == -1 {
            return Err(Level1Error::BadPrime { l });
        }
        let m = 4 * l as i64;
        let mut out: Vec<PrimeIdeal> = (0..2 * l as i64)
            .filter(|b| (b * b - disc).rem_euclid(m) == 0)
            .map(|b| PrimeIdeal { l, b })
            .collect();
        let mut seen: Vec<Ideal> = Vec::new();
        out.retain(|p| {
            let id = p.ideal(disc);
            let dup = seen.iter().any(|q| q.form.b.rem_euclid(2 * l as i64) == id.form.b.rem_euclid(2 * l as i64));
            seen.push(id);
            !dup
        });
        Ok(out)
    }

    pub fn ideal(&self, disc: i64) -> Ideal {
        let a = self.l as i64;
        Ideal { content: 1, form: BQForm { a, b: self.b, c: (self.b * self.b - disc) / (4 * a) } }
    }

    pub fn conj(&self) -> PrimeIdeal {
        PrimeIdeal { l: self.l, b: (-self.b).rem_euclid(2 * self.l as i64) }
    }
}

/// `v_w(z)` for a nonzero element.
pub fn valuation_at(disc: i64, z: &OElt, w: &PrimeIdeal) -> u32 {
    let base = w.ideal(disc);
    let mut k = 0;
    let mut power = base;
    while power.contains(z) {
        k += 1;
        power = power.mul(&base);
    }
    k
}

/// `|O_F^*|`.
pub fn torsion_units(field: &QuadImagField) -> u64 {
    match field.d() {
        -1 => 4,
        -3 => 6,
        _ => 2,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SUnitWitness {
    pub prime: PrimeIdeal,
    /// Least `d` with `w^d` principal.
    pub order: u32,
    pub kappa: OElt,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SUnitReport {
    pub torsion: u64,
    pub rank: usize,
    pub witnesses: Vec<SUnitWitness>,
}

/// `(S^{-1} O_F)^* = O_F^* + Z^{|S|}`, with `kappa_w` generating `w^{d_w}`.
pub fn unit_group_rank(field: &QuadImagField, primes: &[PrimeIdeal]) -> SUnitReport {
    let disc = field.discriminant();
    let cl = class_group(field);
    let witnesses = primes
        .iter()
        .map(|w| {
            let id = w.ideal(disc);
            let order = cl.element_order(cl.index_of(&id.form).expect("class")) as u32;
            let kappa = id.pow(order).generator().expect("principal power");
            SUnitWitness { prime: *w, order, kappa }
        })
        .collect();
    SUnitReport { torsion: torsion_units(field), rank: primes.len(), witnesses }
}

/// Root of `x^2 = d` modulo `p^2` lifting the least root modulo `p`.
fn sqrt_d_mod_p2(field: &QuadImagField, p: u64) -> Option<u64> {
    let r = sqrt_mod_prime(field.d(), p)?;
    let r = r.min(p - r);
    hensel_sqrt(field.d(), r, p, 2)
}

fn to_mod(x: &Rat, m: u64) -> Option<u64> {
    x.reduce_mod(m).ok()
}

/// Image of `a + b sqrt d` in `Z / p^2` under `sqrt d -> s`.
fn embed(field: &QuadImagField, z: &OElt, s: u64, m: u64) -> Option<u64> {
    let (a, b) = z.in_sqrt_d(field);
    let a = to_mod(&a, m)?;
    let b = to_mod(&b, m)?;
    Some(((a as u128 + b as u128 * s as u128) % m as u128) as u64)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorWitness {
    pub l: u64,
    pub t: OElt,
    /// `q = t / t^c` modulo `p^2`.
    pub q_mod_p2: u64,
    /// `q^{|O_F^*|}` modulo `p^2`.
    pub q_power_mod_p2: u64,
    /// Split primes rejected before `l`, with the reason.
    pub rejected: Vec<(u64, &'static str)>,
}

/// Smallest split `l != p` whose primes are principal, `w = (t)`, with `q = t / t^c` generating
/// `Z_p^* / O_F^*`, i.e. `q^{|O_F^*|} != 1 mod p^2`.
pub fn find_generator_prime(field: &QuadImagField, p: u64, cap: u64) -> Result<GeneratorWitness, Level1Error> {
    let disc = field.discriminant();
    if p == 2 {
        return Err(Level1Error::PrimeTwo);
    }
    if !is_prime(p) || kronecker(disc, p as i64) != 1 {
        return Err(Level1Error::NotSplit { p });
    }
    let m = p * p;
    let s = sqrt_d_mod_p2(field, p).ok_or(Level1Error::NotSplit { p })?;
    let w = torsion_units(field);
    let mut rejected = Vec::new();
    for l in (2..=cap).filter(|&l| is_prime(l) && l != p && kronecker(disc, l as i64) == 1) {
        let Some(t) = canonical_generator(field, l) else {
            rejected.push((l, "nonprincipal"));
            continue;
        };
        let num = embed(field, &t, s, m).ok_or(Level1Error::Overflow)?;
        let den = embed(field, &t.conj(), s, m).ok_or(Level1Error::Overflow)?;
        let q = (num as u128 * mod_inv(den, m).ok_or(Level1Error::DivisibleByP)? as u128 % m as u128) as u64;
        let qw = mod_pow(q, w, m);
        if qw == 1 {
            rejected.push((l, "not a generator"));
            continue;
        }
        return Ok(GeneratorWitness { l, t, q_mod_p2: q, q_power_mod_p2: qw, rejected });
    }
    Err(Level1Error::SearchExhausted { cap })
}

/// Among elements of norm `l`, the one with `y > 0` and largest `x`.
fn canonical_generator(field: &QuadImagField, l: u64) -> Option<OElt> {
    elements_of_norm(field.discriminant(), l as i64)
        .into_iter()
        .filter(|z| z.y > 0)
        .max_by_key(|z| (z.x, -z.y))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub prime: PrimeIdeal,
    /// Order of the class of a prime over `p`.
    pub f: usize,
    pub factors: usize,
    pub h: usize,
}

pub fn decomposition_count(field: &QuadImagField, p: u64) -> Result<Decomposition, Level1Error> {
    let disc = field.discriminant();
    if !is_prime(p) || kronecker(disc, p as i64) != 1 {
        return Err(Level1Error::NotSplit { p });
    }
    let u = PrimeIdeal::over(field, p)?[0];
    let cl = class_group(field);
    let f = cl.element_order(cl.index_of(&u.ideal(disc).form).expect("class"));
    Ok(Decomposition { prime: u, f, factors: cl.order() / f, h: cl.order() })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JRow {
    pub t: u64,
    pub nu: u32,
    /// `p^nu`, the order of the cokernel of `k^t - 1` on `Z_p`.
    pub order: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JOrderTable {
    pub p: u64,
    pub k: u64,
    pub rows: Vec<JRow>,
}

/// `nu_p(k^t - 1)`, raising the working modulus `p^e` until the residue is nonzero.
pub fn nu_power_minus_one(p: u64, k: u64, t: u64) -> Result<u32, Level1Error> {
    if k % p == 0 {
        return Err(Level1Error::DivisibleByP);
    }
    if k == 1 {
        return Err(Level1Error::TrivialPower { t });
    }
    let mut e = 1u32;
    loop {
        let m = p.checked_pow(e).filter(|m| *m < 1 << 62).ok_or(Level1Error::Overflow)?;
        if mod_pow(k, t, m) != 1 {
            return Ok(e - 1);
        }
        e += 1;
    }
}

/// Orders of `pi_{2t-1} J` for even `t` in `[t_min, t_max]`.
pub fn j_homotopy_orders(p: u64, k: u64, t_min: u64, t_max: u64) -> Result<JOrderTable, Level1Error> {
    let mut rows = Vec::new();
    for t in (t_min..=t_max).filter(|t| t % 2 == 0 && *t > 0) {
        let nu = nu_power_minus_one(p, k, t)?;
        rows.push(JRow { t, nu, order: p.pow(nu) });
    }
    Ok(JOrderTable { p, k, rows })
}

/// Least `k > 1` generating `(Z / p^2)^*`, hence `Z_p^*`.
pub fn classical_generator(p: u64) -> u64 {
    let m = p * p;
    let phi = p * (p - 1);
    let primes: Vec<u64> = factor(phi).into_iter().map(|(q, _)| q).collect();
    (2..m).find(|&g| g % p != 0 && primes.iter().all(|&q| mod_pow(g, phi / q, m) != 1)).expect("cyclic")
}
