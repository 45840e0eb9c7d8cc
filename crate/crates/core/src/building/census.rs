//! Local enumeration in the buildings: links, balls, and the orbit skeleton of the resolution.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use super::field::{KMatrix, LocalRing};
use super::lattice::{neighbors, Lattice};
use super::space::HermitianSpace;
use super::BuildingError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkCensus {
    pub n: usize,
    pub q: u64,
    /// Neighbours `pi L < M < L` by `length(L / M)`.
    pub neighbors_by_length: Vec<(u32, usize)>,
    /// Chambers containing the vertex.
    pub chambers: usize,
    /// Fewest and most chambers containing a panel through the vertex.
    pub panel_thickness: (usize, usize),
}

/// Census of the link of `[O^n]` in the building of `SL_n(K)`.
pub fn link_census(ring: &LocalRing, n: usize, budget: u64) -> Result<LinkCensus, BuildingError> {
    if n < 2 {
        return Err(BuildingError::Dimension);
    }
    let base = Lattice::standard(ring, n);
    let nbrs = neighbors(&base, budget)?;
    let length = |m: &Lattice| (m.det_val() - base.det_val()) as u32;
    let mut by_length: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for (i, m) in nbrs.iter().enumerate() {
        by_length.entry(length(m)).or_default().push(i);
    }
    let mut chambers: Vec<Vec<usize>> = by_length
        .get(&(n as u32 - 1))
        .map(|v| v.iter().map(|&i| alloc::vec![i]).collect())
        .unwrap_or_default();
    for len in (1..n as u32 - 1).rev() {
        let mut next = Vec::new();
        for chain in &chambers {
            let top = &nbrs[*chain.last().expect("nonempty")];
            for &j in by_length.get(&len).map(Vec::as_slice).unwrap_or(&[]) {
                if nbrs[j].contains(top) {
                    let mut c = chain.clone();
                    c.push(j);
                    next.push(c);
                }
            }
        }
        chambers = next;
    }
    let mut panels: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for chain in &chambers {
        for skip in 0..chain.len() {
            let mut p: Vec<usize> = chain.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
            p.sort_unstable();
            *panels.entry(p).or_default() += 1;
        }
    }
    let thickness = if n == 2 {
        (chambers.len(), chambers.len())
    } else {
        (
            panels.values().copied().min().unwrap_or(0),
            panels.values().copied().max().unwrap_or(0),
        )
    };
    Ok(LinkCensus {
        n,
        q: ring.residue_size(),
        neighbors_by_length: by_length.into_iter().map(|(k, v)| (k, v.len())).collect(),
        chambers: chambers.len(),
        panel_thickness: thickness,
    })
}

/// Vertices of the `SL_n` building within `radius` of `[O^n]` and the edges among them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ball {
    pub vertices: Vec<Lattice>,
    pub distance: Vec<u32>,
    pub edges: Vec<(usize, usize)>,
}

pub fn ball(ring: &LocalRing, n: usize, radius: u32, budget: u64) -> Result<Ball, BuildingError> {
    let base = Lattice::standard(ring, n);
    let mut index: BTreeMap<Vec<Vec<super::field::KElt>>, usize> = BTreeMap::new();
    let mut vertices = alloc::vec![base.clone()];
    let mut distance = alloc::vec![0u32];
    index.insert(base.basis().columns(), 0);
    let mut edges = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    let mut spent = 0u64;
    while let Some(i) = queue.pop_front() {
        let d = distance[i];
        let nbrs = neighbors(&vertices[i], budget.saturating_sub(spent))?;
        spent += nbrs.len() as u64;
        for m in nbrs {
            let rep = m.class_rep();
            let key = rep.basis().columns();
            let j = match index.get(&key) {
                Some(&j) => j,
                None => {
                    if d == radius {
                        continue;
                    }
                    if vertices.len() as u64 >= budget {
                        return Err(BuildingError::Budget { needed: vertices.len() as u64 + 1, budget });
                    }
                    let j = vertices.len();
                    index.insert(key, j);
                    vertices.push(rep);
                    distance.push(d + 1);
                    queue.push_back(j);
                    j
                }
            };
            if i < j {
                edges.push((i, j));
            }
        }
    }
    edges.sort_unstable();
    edges.dedup();
    Ok(Ball { vertices, distance, edges })
}

impl Ball {
    /// Graphviz rendering with one node per vertex, labelled by its basis rows.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph building {\n");
        for (i, v) in self.vertices.iter().enumerate() {
            let rows: Vec<String> = v.rows_display().into_iter().map(|r| r.join(" ")).collect();
            let _ = writeln!(out, "  v{i} [label=\"{}\" dist={}];", rows.join("\\n"), self.distance[i]);
        }
        for (a, b) in &self.edges {
            let _ = writeln!(out, "  v{a} -- v{b};");
        }
        out.push_str("}\n");
        out
    }
}

/// An orbit of `s`-simplices, represented by a face of the base chamber.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkeletonOrbit {
    /// Positions in the base chamber.
    pub faces: Vec<usize>,
    /// Vertex types `length(L^# / L)`.
    pub types: Vec<i64>,
    /// Lattices whose common stabilizer is the stabilizer of the simplex.
    pub stabilized: Vec<Lattice>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Skeleton {
    pub s: usize,
    pub witt_index: usize,
    pub orbits: Vec<SkeletonOrbit>,
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return alloc::vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out.sort();
    out
}

/// Orbit representatives of `s`-simplices of `B(U)`: faces of the base chamber, separated by
/// their vertex-type sets.
pub fn resolution_skeleton(space: &HermitianSpace, s: usize) -> Result<Skeleton, BuildingError> {
    let r = space.witt_index();
    if s > r {
        return Err(BuildingError::SimplexTooLarge { s, r });
    }
    let chamber = space.chamber_from_hyperbolic_basis(None)?;
    let lats = chamber.lattices();
    let types: Vec<i64> = lats
        .iter()
        .map(|l| space.preferred_type(l).map(|t| t.expect("chamber lattices are preferred")))
        .collect::<Result<_, _>>()?;
    let mut orbits: Vec<SkeletonOrbit> = Vec::new();
    for face in subsets(lats.len(), s + 1) {
        let mut ts: Vec<i64> = face.iter().map(|&i| types[i]).collect();
        ts.sort_unstable();
        if orbits.iter().any(|o| o.types == ts) {
            continue;
        }
        orbits.push(SkeletonOrbit {
            stabilized: face.iter().map(|&i| lats[i].clone()).collect(),
            faces: face,
            types: ts,
        });
    }
    Ok(Skeleton { s, witt_index: r, orbits })
}

/// `n`: the chamber `L_0 < ... < L_n = pi^{-1} L_0` of `B(GL_n)` has `n + 1` lattices.
pub fn gl_building_dimension(n: usize) -> usize {
    n
}

/// Hermitian reflection `v -> v + (zeta - 1) (v, a) / (a, a) a`.
pub fn hermitian_reflection(space: &HermitianSpace, a: &[super::field::KElt], zeta: &super::field::KElt) -> Result<KMatrix, BuildingError> {
    let ring = space.ring();
    let n = space.n();
    let aa = space.pair(a, a);
    let inv = aa.inv().ok_or(BuildingError::Singular)?;
    if !zeta.norm().is_one() {
        return Err(BuildingError::NotSimilitude);
    }
    let zm1 = zeta - &ring.one();
    let cols: Vec<Vec<super::field::KElt>> = (0..n)
        .map(|k| {
            let e: Vec<_> = (0..n).map(|i| if i == k { ring.one() } else { ring.zero() }).collect();
            let c = &(&zm1 * &space.pair(&e, a)) * &inv;
            e.iter().zip(a).map(|(x, y)| x + &(&c * y)).collect()
        })
        .collect();
    KMatrix::from_columns(ring, &cols)
}
