//! Full-rank lattices in `K^n` in Hermite normal form, chains, and sublattice enumeration.

use alloc::vec::Vec;

use super::field::{KElt, KMatrix, LocalRing};
use super::BuildingError;

/// An `O`-lattice of full rank, stored as its canonical lower-triangular Hermite normal form:
/// diagonal entries `pi^{e_i}`, and below-diagonal entries of row `i` reduced modulo `pi^{e_i}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Lattice {
    ring: LocalRing,
    basis: KMatrix,
}

/// Hermite normal form of the lattice spanned by the columns of `gens` (`n x m`, `m >= n`).
pub fn hnf_normalize(ring: &LocalRing, gens: &KMatrix) -> Result<KMatrix, BuildingError> {
    let n = gens.rows();
    let m = gens.cols();
    if m < n {
        return Err(BuildingError::Singular);
    }
    let mut b = gens.clone();
    for i in 0..n {
        let pivot = (i..m)
            .filter_map(|j| ring.val_finite(b.get(i, j)).map(|v| (v, j)))
            .min()
            .ok_or(BuildingError::Singular)?;
        let (v, j) = pivot;
        b.swap_cols(i, j);
        let unit = &ring.pi_pow(v) * &b.get(i, i).inv().expect("nonzero");
        b.scale_col(i, &unit);
        let inv_pivot = ring.pi_pow(-v);
        for j in i + 1..m {
            if !b.get(i, j).is_zero() {
                let f = b.get(i, j) * &inv_pivot;
                b.add_col_multiple(j, i, &-&f);
            }
        }
    }
    let mut out = KMatrix::zeros(ring, n, n);
    for i in 0..n {
        for j in 0..n {
            out.set(i, j, b.get(i, j).clone());
        }
    }
    for i in 1..n {
        let e = ring.val_finite(out.get(i, i)).expect("nonzero diagonal");
        let inv = ring.pi_pow(-e);
        for j in 0..i {
            let x = out.get(i, j).clone();
            let r = ring.reduce(&x, e);
            if r != x {
                let q = &(&x - &r) * &inv;
                out.add_col_multiple(j, i, &-&q);
            }
        }
    }
    Ok(out)
}

impl Lattice {
    pub fn new(ring: &LocalRing, gens: &KMatrix) -> Result<Self, BuildingError> {
        Ok(Lattice { ring: *ring, basis: hnf_normalize(ring, gens)? })
    }

    /// `O^n`.
    pub fn standard(ring: &LocalRing, n: usize) -> Self {
        Lattice { ring: *ring, basis: KMatrix::identity(ring, n) }
    }

    pub fn ring(&self) -> &LocalRing {
        &self.ring
    }

    pub fn basis(&self) -> &KMatrix {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn diagonal_exponents(&self) -> Vec<i64> {
        (0..self.dim())
            .map(|i| self.ring.val_finite(self.basis.get(i, i)).expect("nonzero diagonal"))
            .collect()
    }

    /// `v_pi(det)`; `[M : L] = q^{det_val(L) - det_val(M)}` for `L <= M`.
    pub fn det_val(&self) -> i64 {
        self.diagonal_exponents().iter().sum()
    }

    /// Whether `other <= self`.
    pub fn contains(&self, other: &Lattice) -> bool {
        let inv = self.basis.inverse().expect("full rank");
        let coords = inv.mul(&other.basis).expect("square");
        (0..self.dim()).all(|i| (0..self.dim()).all(|j| self.ring.is_integral(coords.get(i, j))))
    }

    pub fn contains_vector(&self, v: &[KElt]) -> bool {
        let inv = self.basis.inverse().expect("full rank");
        inv.mul_vec(v).expect("dimension").iter().all(|x| self.ring.is_integral(x))
    }

    /// `pi^e L`.
    pub fn scale(&self, e: i64) -> Lattice {
        let gens = self.basis.scale(&self.ring.pi_pow(e));
        Lattice::new(&self.ring, &gens).expect("nonsingular")
    }

    /// `g(L)`.
    pub fn apply(&self, g: &KMatrix) -> Result<Lattice, BuildingError> {
        Lattice::new(&self.ring, &g.mul(&self.basis)?)
    }

    /// `L + M`.
    pub fn sum(&self, other: &Lattice) -> Lattice {
        let mut cols = self.basis.columns();
        cols.extend(other.basis.columns());
        let gens = KMatrix::from_columns(&self.ring, &cols).expect("equal lengths");
        Lattice::new(&self.ring, &gens).expect("full rank")
    }

    /// `(s, pi^{-s} L)` with `pi^{-s} L <= O^n` but not inside `pi O^n`.
    pub fn split_scale(&self) -> (i64, Lattice) {
        let n = self.dim();
        let s = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter_map(|(i, j)| self.ring.val_finite(self.basis.get(i, j)))
            .min()
            .expect("nonzero basis");
        (s, self.scale(-s))
    }

    /// Canonical representative of the homothety class.
    pub fn class_rep(&self) -> Lattice {
        self.split_scale().1
    }

    pub fn same_class(&self, other: &Lattice) -> bool {
        self.class_rep() == other.class_rep()
    }

    /// Human-readable matrix rows.
    pub fn rows_display(&self) -> Vec<Vec<alloc::string::String>> {
        use alloc::string::ToString;
        (0..self.dim())
            .map(|i| (0..self.dim()).map(|j| self.basis.get(i, j).to_string()).collect())
            .collect()
    }
}

/// Strictly increasing chain `L_0 < ... < L_k <= pi^{-1} L_0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeChain {
    lattices: Vec<Lattice>,
}

impl LatticeChain {
    pub fn new(lattices: Vec<Lattice>) -> Result<Self, BuildingError> {
        let Some(first) = lattices.first() else {
            return Err(BuildingError::BadChain("empty chain"));
        };
        for w in lattices.windows(2) {
            if w[0] == w[1] || !w[1].contains(&w[0]) {
                return Err(BuildingError::BadChain("inclusions are not strict"));
            }
        }
        if !first.scale(-1).contains(lattices.last().expect("nonempty")) {
            return Err(BuildingError::BadChain("top exceeds pi^-1 of the bottom"));
        }
        Ok(LatticeChain { lattices })
    }

    pub fn lattices(&self) -> &[Lattice] {
        &self.lattices
    }

    pub fn len(&self) -> usize {
        self.lattices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lattices.is_empty()
    }

    /// Whether the top lattice equals `pi^{-1}` times the bottom.
    pub fn is_periodic(&self) -> bool {
        self.lattices.first().map(|l| l.scale(-1)).as_ref() == self.lattices.last()
    }
}

/// `L_i(v) = pi^{-1} O v_1 + ... + pi^{-1} O v_i + O v_{i+1} + ... + O v_n` for `i = 0..n`.
pub fn chamber_from_basis_gl(ring: &LocalRing, v: &KMatrix) -> Result<LatticeChain, BuildingError> {
    let n = v.rows();
    if v.cols() != n || v.det()?.is_zero() {
        return Err(BuildingError::Dependent);
    }
    let cols = v.columns();
    let pinv = ring.pi_pow(-1);
    let mut out = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let gens: Vec<Vec<KElt>> = cols
            .iter()
            .enumerate()
            .map(|(j, c)| if j < i { c.iter().map(|x| x * &pinv).collect() } else { c.clone() })
            .collect();
        out.push(Lattice::new(ring, &KMatrix::from_columns(ring, &gens)?)?);
    }
    LatticeChain::new(out)
}

fn compositions(total: u32, parts: usize, max_part: u32) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 { alloc::vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 0..=total.min(max_part) {
        for mut rest in compositions(total - first, parts - 1, max_part) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn count_for(q: u64, exps: &[u32]) -> Option<u64> {
    exps.iter()
        .enumerate()
        .try_fold(1u64, |acc, (i, &e)| acc.checked_mul(q.checked_pow(e * i as u32)?))
}

fn enumerate_with(
    lat: &Lattice,
    exps_list: Vec<Vec<u32>>,
    budget: u64,
) -> Result<Vec<Lattice>, BuildingError> {
    let ring = lat.ring;
    let q = ring.residue_size();
    let mut total = 0u64;
    for e in &exps_list {
        total = count_for(q, e)
            .and_then(|c| total.checked_add(c))
            .ok_or(BuildingError::Budget { needed: u64::MAX, budget })?;
    }
    if total > budget {
        return Err(BuildingError::Budget { needed: total, budget });
    }
    let n = lat.dim();
    let mut out = Vec::with_capacity(total as usize);
    for exps in exps_list {
        let residues: Vec<Vec<KElt>> = exps.iter().map(|&e| ring.residues(e)).collect();
        let slots: Vec<(usize, usize)> = (1..n).flat_map(|i| (0..i).map(move |j| (i, j))).collect();
        let mut idx = alloc::vec![0usize; slots.len()];
        loop {
            let mut h = KMatrix::zeros(&ring, n, n);
            for (i, &e) in exps.iter().enumerate() {
                h.set(i, i, ring.pi_pow(e as i64));
            }
            for (s, &(i, j)) in slots.iter().enumerate() {
                h.set(i, j, residues[i][idx[s]].clone());
            }
            out.push(Lattice::new(&ring, &lat.basis.mul(&h)?)?);
            let mut s = 0;
            loop {
                if s == slots.len() {
                    break;
                }
                idx[s] += 1;
                if idx[s] < residues[slots[s].0].len() {
                    break;
                }
                idx[s] = 0;
                s += 1;
            }
            if s == slots.len() {
                break;
            }
        }
    }
    out.sort_by(|a, b| a.basis.columns().cmp(&b.basis.columns()));
    Ok(out)
}

/// All `M <= L` with `L / M` of length `k`, each in canonical form.
pub fn sublattices_of_index(lat: &Lattice, k: u32, budget: u64) -> Result<Vec<Lattice>, BuildingError> {
    enumerate_with(lat, compositions(k, lat.dim(), k), budget)
}

/// All `M` with `pi L < M < L` strictly on both sides.
pub fn neighbors(lat: &Lattice, budget: u64) -> Result<Vec<Lattice>, BuildingError> {
    let n = lat.dim();
    let exps: Vec<Vec<u32>> = (1..n as u32).flat_map(|k| compositions(k, n, 1)).collect();
    let pl = lat.scale(1);
    Ok(enumerate_with(lat, exps, budget)?.into_iter().filter(|m| m.contains(&pl)).collect())
}
