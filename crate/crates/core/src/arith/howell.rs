use alloc::vec::Vec;

use super::{ResidueMatrix, ResidueRing};

fn first_nonzero(row: &[u64]) -> Option<usize> {
    row.iter().position(|&x| x != 0)
}

/// Howell normal form of the row span of `gens` over `Z/p^k`.
///
/// Rows come out ordered by pivot column; each pivot is a power `p^a`, entries above a
/// pivot are reduced into `[0, p^a)`, and the span of the rows with pivot in column `>= c`
/// is exactly the set of module elements vanishing in columns `< c`.
pub fn howell_form(ring: ResidueRing, ncols: usize, gens: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let m = ring.modulus();
    let mut pool: Vec<Vec<u64>> = gens
        .iter()
        .map(|g| g.iter().map(|x| x % m).collect::<Vec<u64>>())
        .filter(|g| g.iter().any(|&x| x != 0))
        .collect();
    let mut result: Vec<Vec<u64>> = Vec::new();
    for c in 0..ncols {
        let mut best: Option<(usize, u32)> = None;
        for (i, r) in pool.iter().enumerate() {
            if r[c] != 0 {
                let v = ring.val(r[c]);
                if best.map_or(true, |(_, bv)| v < bv) {
                    best = Some((i, v));
                }
            }
        }
        let Some((idx, a)) = best else { continue };
        let mut pivot = pool.swap_remove(idx);
        let pa = ring.p().pow(a);
        let unit = pivot[c] / pa;
        let uinv = ring.inv(unit).expect("unit part is invertible");
        for x in pivot.iter_mut() {
            *x = ring.mul(*x, uinv);
        }
        debug_assert_eq!(pivot[c], pa);
        for r in pool.iter_mut() {
            if r[c] != 0 {
                let f = r[c] / pa;
                for (x, y) in r.iter_mut().zip(&pivot) {
                    *x = ring.sub(*x, ring.mul(f, *y));
                }
            }
        }
        pool.retain(|r| r.iter().any(|&x| x != 0));
        let sat = ring.p_pow(ring.k() - a);
        let sat_row: Vec<u64> = pivot.iter().map(|&x| ring.mul(x, sat)).collect();
        if sat_row.iter().any(|&x| x != 0) {
            pool.push(sat_row);
        }
        for r in result.iter_mut() {
            let f = r[c] / pa;
            if f != 0 {
                for (x, y) in r.iter_mut().zip(&pivot) {
                    *x = ring.sub(*x, ring.mul(f, *y));
                }
            }
        }
        result.push(pivot);
    }
    result
}

/// Generators (in Howell form) of the kernel `{x : M x = 0}` of a matrix over `Z/p^k`.
pub fn howell_kernel(mat: &ResidueMatrix) -> Vec<Vec<u64>> {
    let ring = mat.ring();
    let (r, n) = (mat.nrows(), mat.ncols());
    let gens: Vec<Vec<u64>> = (0..n)
        .map(|j| {
            let mut row = Vec::with_capacity(r + n);
            row.extend((0..r).map(|i| mat.get(i, j)));
            row.extend((0..n).map(|t| u64::from(t == j)));
            row
        })
        .collect();
    howell_form(ring, r + n, &gens)
        .into_iter()
        .filter(|row| row[..r].iter().all(|&x| x == 0))
        .map(|row| row[r..].to_vec())
        .collect()
}

/// A submodule of `(Z/p^k)^n`, held in Howell form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Submodule {
    ring: ResidueRing,
    ncols: usize,
    rows: Vec<Vec<u64>>,
}

impl Submodule {
    pub fn new(ring: ResidueRing, ncols: usize, gens: &[Vec<u64>]) -> Submodule {
        Submodule { ring, ncols, rows: howell_form(ring, ncols, gens) }
    }

    pub fn zero(ring: ResidueRing, ncols: usize) -> Submodule {
        Submodule { ring, ncols, rows: Vec::new() }
    }

    pub fn ring(&self) -> ResidueRing {
        self.ring
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    /// `log_p` of the number of elements.
    pub fn log_size(&self) -> u32 {
        self.rows
            .iter()
            .map(|r| {
                let c = first_nonzero(r).expect("Howell rows are nonzero");
                self.ring.k() - self.ring.val(r[c])
            })
            .sum()
    }

    /// Remainder of `v` after reduction by the Howell rows; zero iff `v` lies in the module.
    pub fn reduce(&self, v: &[u64]) -> Vec<u64> {
        let ring = self.ring;
        let mut v: Vec<u64> = v.iter().map(|x| x % ring.modulus()).collect();
        for r in &self.rows {
            let c = first_nonzero(r).expect("Howell rows are nonzero");
            if v[c] == 0 {
                continue;
            }
            let pa = r[c];
            if v[c] % pa != 0 {
                continue;
            }
            let f = v[c] / pa;
            for (x, y) in v.iter_mut().zip(r) {
                *x = ring.sub(*x, ring.mul(f, *y));
            }
        }
        v
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    pub fn contains_module(&self, other: &Submodule) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    /// `log_p` of the additive order of `v`.
    pub fn order_log(ring: ResidueRing, v: &[u64]) -> u32 {
        let m = v.iter().map(|&x| ring.val(x)).min().unwrap_or(ring.k());
        ring.k() - m
    }

    /// `log_p` of the order of `v` in the quotient by this module.
    pub fn quotient_order_log(&self, v: &[u64]) -> u32 {
        let mut w: Vec<u64> = v.to_vec();
        for e in 0..=self.ring.k() {
            if self.contains(&w) {
                return e;
            }
            w = w.iter().map(|&x| self.ring.mul(x, self.ring.p())).collect();
        }
        self.ring.k()
    }
}
