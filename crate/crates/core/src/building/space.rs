//! Hermitian spaces over local quadratic extensions: duals, preferred lattices, Witt indices,
//! unitary chambers, and the similitude action on preferred homothety classes.

use alloc::vec::Vec;

use super::field::{Extension, KElt, KMatrix, LocalRing};
use super::lattice::{Lattice, LatticeChain};
use super::BuildingError;
use crate::arith::{legendre, Rat, Valuation};
use crate::hermitian::{hilbert_symbol, Place};

/// Which column of the isotropy table: whether `disc = (-1)^{floor(n/2)}` modulo norms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DiscBranch {
    Standard,
    Other,
}

/// A nondegenerate form `(v, w) = v^T G conj(w)` with `G^T = conj(G)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HermitianSpace {
    ring: LocalRing,
    gram: KMatrix,
    witt_index: usize,
    hyperbolic: usize,
    kernel: Vec<Vec<KElt>>,
    branch: Option<DiscBranch>,
}

/// A generator of `Q_l^* / N(K^*)`.
pub fn non_norm(ring: &LocalRing) -> Result<Rat, BuildingError> {
    if !ring.is_quadratic() {
        return Err(BuildingError::NeedsExtension);
    }
    let d = Rat::from(ring.d());
    let mut cands: Vec<i64> = alloc::vec![ring.l() as i64, -1];
    cands.extend(2..200);
    for a in cands {
        let a = Rat::from(a);
        if hilbert_symbol(&a, &d, Place::Prime(ring.l())).expect("nonzero") == -1 {
            return Ok(a);
        }
    }
    Err(BuildingError::NeedsExtension)
}

impl HermitianSpace {
    pub fn new(ring: &LocalRing, gram: KMatrix) -> Result<Self, BuildingError> {
        let n = gram.rows();
        if gram.cols() != n || n == 0 {
            return Err(BuildingError::Dimension);
        }
        if gram.transpose().conj() != gram {
            return Err(BuildingError::NotHermitian);
        }
        if gram.det()?.is_zero() {
            return Err(BuildingError::Singular);
        }
        let witt_index = witt_index(ring, &gram)?;
        Ok(HermitianSpace { ring: *ring, gram, witt_index, hyperbolic: 0, kernel: Vec::new(), branch: None })
    }

    /// The normal form of the isotropy table: antidiagonal hyperbolic block, then `(1, -a)`,
    /// `(1)`, or `(a)` on the anisotropic kernel, with `a` a non-norm.
    pub fn from_isotropy(ring: &LocalRing, n: usize, branch: DiscBranch) -> Result<Self, BuildingError> {
        if ring.l() == 2 {
            return Err(BuildingError::ResidueTwo);
        }
        if n == 0 {
            return Err(BuildingError::Dimension);
        }
        let a = non_norm(ring)?;
        let (hyp, tail): (usize, Vec<Rat>) = match (n % 2, branch) {
            (0, DiscBranch::Standard) => (n, Vec::new()),
            (0, DiscBranch::Other) => (n - 2, alloc::vec![Rat::one(), -&a]),
            (_, DiscBranch::Standard) => (n - 1, alloc::vec![Rat::one()]),
            (_, DiscBranch::Other) => (n - 1, alloc::vec![a.clone()]),
        };
        let mut gram = KMatrix::zeros(ring, n, n);
        for i in 0..hyp {
            gram.set(i, hyp - 1 - i, ring.one());
        }
        for (k, c) in tail.iter().enumerate() {
            gram.set(hyp + k, hyp + k, ring.from_rat(c.clone()));
        }
        let mut space = HermitianSpace::new(ring, gram)?;
        space.hyperbolic = hyp;
        space.branch = Some(branch);
        for (k, c) in tail.iter().enumerate() {
            let Valuation::Finite(vc) = ring.val_l(c) else { unreachable!("nonzero") };
            let m = (-vc).div_euclid(ring.norm_pi_val()) + i64::from((-vc).rem_euclid(ring.norm_pi_val()) != 0);
            let mut v = alloc::vec![ring.zero(); n];
            v[hyp + k] = ring.pi_pow(m);
            space.kernel.push(v);
        }
        Ok(space)
    }

    pub fn ring(&self) -> &LocalRing {
        &self.ring
    }

    pub fn gram(&self) -> &KMatrix {
        &self.gram
    }

    pub fn n(&self) -> usize {
        self.gram.rows()
    }

    /// Witt index, computed from the form.
    pub fn witt_index(&self) -> usize {
        self.witt_index
    }

    pub fn branch(&self) -> Option<DiscBranch> {
        self.branch
    }

    /// Generators of the unique preferred lattice `X = { w : (w, w) in O }` of the anisotropic kernel.
    pub fn kernel(&self) -> &[Vec<KElt>] {
        &self.kernel
    }

    pub fn pair(&self, v: &[KElt], w: &[KElt]) -> KElt {
        let wc: Vec<KElt> = w.iter().map(KElt::conj).collect();
        let gw = self.gram.mul_vec(&wc).expect("dimension");
        let mut acc = self.ring.zero();
        for (x, y) in v.iter().zip(&gw) {
            acc = &acc + &(x * y);
        }
        acc
    }

    /// `L^# = { w : (w, L) <= O }`, with basis `(G conj(B))^{-T}`.
    pub fn dual(&self, lat: &Lattice) -> Result<Lattice, BuildingError> {
        let m = self.gram.mul(&lat.basis().conj())?;
        Lattice::new(&self.ring, &m.inverse()?.transpose())
    }

    /// `Some(t)` with `t = length(L^# / L)` when `L <= L^# <= pi^{-1} L`.
    pub fn preferred_type(&self, lat: &Lattice) -> Result<Option<i64>, BuildingError> {
        let dual = self.dual(lat)?;
        if dual.contains(lat) && lat.scale(-1).contains(&dual) {
            Ok(Some(lat.det_val() - dual.det_val()))
        } else {
            Ok(None)
        }
    }

    pub fn is_preferred(&self, lat: &Lattice) -> Result<bool, BuildingError> {
        Ok(self.preferred_type(lat)?.is_some())
    }

    /// The preferred lattice in the homothety class of `lat`, if there is one.
    pub fn preferred_rep(&self, lat: &Lattice) -> Result<Option<Lattice>, BuildingError> {
        let n = self.n() as i64;
        let gap = self.dual(lat)?.det_val() - lat.det_val();
        let lo = gap.div_euclid(2 * n);
        for s in lo - 1..=lo + 2 {
            let cand = lat.scale(s);
            if self.is_preferred(&cand)? {
                return Ok(Some(cand));
            }
        }
        Ok(None)
    }

    /// `nu` with `g^T G conj(g) = nu G`, if `g` is a similitude.
    pub fn similitude_norm(&self, g: &KMatrix) -> Result<Rat, BuildingError> {
        let lhs = g.transpose().mul(&self.gram)?.mul(&g.conj())?;
        let n = self.n();
        let (i, j) = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .find(|&(i, j)| !self.gram.get(i, j).is_zero())
            .expect("nondegenerate");
        let nu = lhs.get(i, j) * &self.gram.get(i, j).inv().expect("nonzero");
        if !nu.is_rational() || nu.is_zero() || lhs != self.gram.scale(&nu) {
            return Err(BuildingError::NotSimilitude);
        }
        Ok(nu.a)
    }

    /// `g . [L]`: `[g(L)]` when the similitude norm can be absorbed by a scalar, `[(g L)^#]` otherwise.
    /// Returns the preferred representative.
    pub fn gu_act(&self, g: &KMatrix, lat: &Lattice) -> Result<Lattice, BuildingError> {
        self.preferred_rep(lat)?.ok_or(BuildingError::NotPreferred)?;
        let nu = self.similitude_norm(g)?;
        let Valuation::Finite(k) = self.ring.val_l(&nu) else { unreachable!("nonzero") };
        let image = lat.apply(g)?;
        let odd = self.ring.ext() != Extension::Ramified && k.rem_euclid(2) == 1;
        let target = if odd { self.dual(&image)? } else { image };
        self.preferred_rep(&target)?.ok_or(BuildingError::NotPreferred)
    }

    /// Base chamber `L_i(v) = pi O v_1 + ... + pi O v_{r-i} + O v_{r-i+1} + ... + O v_{2r} + X`.
    pub fn chamber_from_hyperbolic_basis(&self, v: Option<&KMatrix>) -> Result<LatticeChain, BuildingError> {
        let n = self.n();
        let r = self.witt_index;
        if self.branch.is_none() || self.hyperbolic != 2 * r {
            return Err(BuildingError::NeedsTableForm);
        }
        let cols: Vec<Vec<KElt>> = match v {
            Some(m) => {
                if m.rows() != n || m.cols() != 2 * r {
                    return Err(BuildingError::Dimension);
                }
                m.columns()
            }
            None => (0..2 * r)
                .map(|i| (0..n).map(|k| if k == i { self.ring.one() } else { self.ring.zero() }).collect())
                .collect(),
        };
        for i in 0..2 * r {
            for j in 0..2 * r {
                let want = if i + j == 2 * r - 1 { self.ring.one() } else { self.ring.zero() };
                if self.pair(&cols[i], &cols[j]) != want {
                    return Err(BuildingError::NotNormalized);
                }
            }
            for k in 2 * r..n {
                let mut e = alloc::vec![self.ring.zero(); n];
                e[k] = self.ring.one();
                if !self.pair(&cols[i], &e).is_zero() {
                    return Err(BuildingError::NotNormalized);
                }
            }
        }
        let pi = self.ring.pi();
        let mut out = Vec::with_capacity(r + 1);
        for i in 0..=r {
            let mut gens: Vec<Vec<KElt>> = cols
                .iter()
                .enumerate()
                .map(|(j, c)| if j + i < r { c.iter().map(|x| x * &pi).collect() } else { c.clone() })
                .collect();
            gens.extend(self.kernel.iter().cloned());
            let gens = KMatrix::from_columns(&self.ring, &gens)?;
            let lat = Lattice::new(&self.ring, &gens)?;
            if !self.is_preferred(&lat)? {
                return Err(BuildingError::NotPreferred);
            }
            out.push(lat);
        }
        LatticeChain::new(out)
    }

    /// `(dim B(U), dim B(GU))`.
    pub fn building_dimensions(&self) -> (usize, usize) {
        (self.witt_index, self.witt_index + 1)
    }
}

/// Diagonal entries of an orthogonal basis of the form.
pub fn diagonalize(ring: &LocalRing, gram: &KMatrix) -> Result<Vec<Rat>, BuildingError> {
    let n = gram.rows();
    let pair = |v: &[KElt], w: &[KElt]| -> KElt {
        let wc: Vec<KElt> = w.iter().map(KElt::conj).collect();
        let gw = gram.mul_vec(&wc).expect("dimension");
        v.iter().zip(&gw).fold(ring.zero(), |acc, (x, y)| &acc + &(x * y))
    };
    let mut vs: Vec<Vec<KElt>> = (0..n)
        .map(|i| (0..n).map(|k| if k == i { ring.one() } else { ring.zero() }).collect())
        .collect();
    let mut out = Vec::with_capacity(n);
    while !vs.is_empty() {
        let pos = match vs.iter().position(|v| !pair(v, v).is_zero()) {
            Some(p) => p,
            None => {
                let (i, j) = (0..vs.len())
                    .flat_map(|i| (0..vs.len()).map(move |j| (i, j)))
                    .find(|&(i, j)| i != j && !pair(&vs[i], &vs[j]).is_zero())
                    .ok_or(BuildingError::Singular)?;
                let mut fixed = None;
                for c in [ring.one(), ring.sqrt_d()] {
                    let w: Vec<KElt> = vs[i].iter().zip(&vs[j]).map(|(x, y)| x + &(&c * y)).collect();
                    if !pair(&w, &w).is_zero() {
                        fixed = Some(w);
                        break;
                    }
                }
                vs[i] = fixed.ok_or(BuildingError::Singular)?;
                i
            }
        };
        let v = vs.remove(pos);
        let c = pair(&v, &v);
        let cinv = c.inv().expect("nonzero");
        for w in vs.iter_mut() {
            let f = &pair(w, &v) * &cinv;
            *w = w.iter().zip(&v).map(|(x, y)| x - &(&f * y)).collect();
        }
        if !c.is_rational() {
            return Err(BuildingError::NotHermitian);
        }
        out.push(c.a);
    }
    Ok(out)
}

fn square_class_reps(l: u64) -> Vec<Rat> {
    if l == 2 {
        [1i64, -1, 5, -5, 2, -2, 10, -10].into_iter().map(Rat::from).collect()
    } else {
        let u = (2..l as i64).find(|&u| legendre(u, l) == -1).expect("odd prime");
        [1i64, u, l as i64, u * l as i64].into_iter().map(Rat::from).collect()
    }
}

fn same_square_class(l: u64, a: &Rat, b: &Rat) -> bool {
    let r = a / b;
    let Valuation::Finite(v) = r.val(l) else { return false };
    if v % 2 != 0 {
        return false;
    }
    let unit = &r * Rat::from(l).pow(-v).expect("nonzero");
    if l == 2 {
        unit.reduce_mod(8).expect("unit") == 1
    } else {
        legendre(unit.reduce_mod(l).expect("unit") as i64, l) == 1
    }
}

fn invariants(l: u64, diag: &[Rat]) -> (Rat, i32) {
    let disc = diag.iter().fold(Rat::one(), |acc, x| acc * x);
    let mut hasse = 1;
    for i in 0..diag.len() {
        for j in i + 1..diag.len() {
            hasse *= hilbert_symbol(&diag[i], &diag[j], Place::Prime(l)).expect("nonzero");
        }
    }
    (disc, hasse)
}

fn multisets(reps: &[Rat], m: usize, start: usize) -> Vec<Vec<Rat>> {
    if m == 0 {
        return alloc::vec![Vec::new()];
    }
    let mut out = Vec::new();
    for i in start..reps.len() {
        for mut rest in multisets(reps, m - 1, i) {
            rest.insert(0, reps[i].clone());
            out.push(rest);
        }
    }
    out
}

/// Witt index of a diagonal quadratic form over `Q_l`, from its dimension, discriminant and
/// Hasse invariant.
pub fn quadratic_witt_index(l: u64, diag: &[Rat]) -> usize {
    let n = diag.len();
    let (disc, hasse) = invariants(l, diag);
    let reps = square_class_reps(l);
    let mut m = n % 2;
    while m <= n.min(4) {
        let k = (n - m) / 2;
        for q in multisets(&reps, m, 0) {
            let mut form = q.clone();
            for _ in 0..k {
                form.push(Rat::one());
                form.push(-Rat::one());
            }
            let (d2, h2) = invariants(l, &form);
            if same_square_class(l, &disc, &d2) && h2 == hasse {
                return k;
            }
        }
        m += 2;
    }
    (n - n.min(4)) / 2
}

/// Witt index of the form: directly for `Q_l`, via the trace form `q(v) = (v, v)` otherwise.
pub fn witt_index(ring: &LocalRing, gram: &KMatrix) -> Result<usize, BuildingError> {
    let diag = diagonalize(ring, gram)?;
    if !ring.is_quadratic() {
        return Ok(quadratic_witt_index(ring.l(), &diag));
    }
    let d = Rat::from(ring.d());
    let trace: Vec<Rat> = diag.iter().flat_map(|c| [c.clone(), -(c * &d)]).collect();
    Ok(quadratic_witt_index(ring.l(), &trace) / 2)
}

/// Witt index stated by the isotropy table.
pub fn table_witt_index(n: usize, branch: DiscBranch) -> usize {
    match (n % 2, branch) {
        (0, DiscBranch::Standard) => n / 2,
        (0, DiscBranch::Other) => (n - 2) / 2,
        _ => (n - 1) / 2,
    }
}
