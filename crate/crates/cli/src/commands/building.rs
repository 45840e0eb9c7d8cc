use chromatic_core::building::{
    ball, chamber_from_basis_gl, gl_building_dimension, link_census, resolution_skeleton, DiscBranch, HermitianSpace, KMatrix, Lattice,
    LatticeChain, LocalRing,
};
use serde_json::{json, Value};

use super::outcome;
use crate::args::{BranchArg, BuildingCmd, ExtArg, GlobalOpts};
use crate::error::{pre, CliError};
use crate::Outcome;

pub const DEFAULT_BUDGET: u64 = 1_000_000;

fn ring(l: u64, ext: ExtArg) -> Result<LocalRing, CliError> {
    Ok(match ext {
        ExtArg::None => LocalRing::rational(l)?,
        ExtArg::Inert => LocalRing::inert_default(l)?,
        ExtArg::Ramified => LocalRing::ramified_default(l)?,
    })
}

fn ext_str(e: ExtArg) -> &'static str {
    match e {
        ExtArg::None => "none",
        ExtArg::Inert => "inert",
        ExtArg::Ramified => "ramified",
    }
}

fn branch(b: BranchArg) -> DiscBranch {
    match b {
        BranchArg::Standard => DiscBranch::Standard,
        BranchArg::Other => DiscBranch::Other,
    }
}

fn branch_str(b: BranchArg) -> &'static str {
    match b {
        BranchArg::Standard => "standard",
        BranchArg::Other => "other",
    }
}

fn lattice_json(l: &Lattice) -> Value {
    json!({ "basis": l.rows_display(), "exponents": l.diagonal_exponents() })
}

fn lattice_text(l: &Lattice) -> String {
    l.rows_display().iter().map(|r| format!("[{}]", r.join(", "))).collect::<Vec<_>>().join(" ")
}

fn chain_json(c: &LatticeChain) -> Value {
    json!({ "lattices": c.lattices().iter().map(lattice_json).collect::<Vec<_>>(), "periodic": c.is_periodic() })
}

pub fn run(c: &BuildingCmd, g: &GlobalOpts) -> Result<Outcome, CliError> {
    let budget = g.budget.unwrap_or(DEFAULT_BUDGET);
    match *c {
        BuildingCmd::Chamber { l, ext, n, branch: b } => {
            let r = ring(l, ext)?;
            let inputs = json!({ "l": l, "ext": ext_str(ext), "n": n, "branch": branch_str(b) });
            let mut text = String::new();
            let outputs = if ext == ExtArg::None {
                let chain = chamber_from_basis_gl(&r, &KMatrix::identity(&r, n))?;
                for (i, lat) in chain.lattices().iter().enumerate() {
                    text.push_str(&format!("L{i}: {}\n", lattice_text(lat)));
                }
                text.push_str(&format!("dim B(GL_{n}) = {}\n", gl_building_dimension(n)));
                json!({ "chain": chain_json(&chain), "dimension": gl_building_dimension(n) })
            } else {
                let space = HermitianSpace::from_isotropy(&r, n, branch(b))?;
                let chain = space.chamber_from_hyperbolic_basis(None)?;
                let types = chain
                    .lattices()
                    .iter()
                    .map(|lat| space.preferred_type(lat))
                    .collect::<Result<Vec<_>, _>>()?;
                for (i, (lat, t)) in chain.lattices().iter().zip(&types).enumerate() {
                    let t = t.map(|t| t.to_string()).unwrap_or_else(|| "-".into());
                    text.push_str(&format!("L{i} (type {t}): {}\n", lattice_text(lat)));
                }
                let (du, dgu) = space.building_dimensions();
                text.push_str(&format!("Witt index {}, dim B(U) = {du}, dim B(GU) = {dgu}\n", space.witt_index()));
                json!({
                    "chain": chain_json(&chain),
                    "types": types,
                    "witt_index": space.witt_index(),
                    "dimension_u": du,
                    "dimension_gu": dgu,
                })
            };
            Ok(outcome("building chamber", inputs, outputs, None, text))
        }
        BuildingCmd::Ball { l, n, radius } => {
            let r = ring(l, ExtArg::None)?;
            let b = ball(&r, n, radius, budget)?;
            let mut by_distance = vec![0usize; radius as usize + 1];
            for &d in &b.distance {
                by_distance[d as usize] += 1;
            }
            let census = if radius >= 1 { Some(link_census(&r, n, budget)?) } else { None };
            let outputs = json!({
                "vertices": b.vertices.len(),
                "edges": b.edges.len(),
                "by_distance": by_distance,
                "valence": census.as_ref().map(|c| c.neighbors_by_length.iter().map(|&(_, k)| k).sum::<usize>()),
                "chambers_at_vertex": census.as_ref().map(|c| c.chambers),
                "dot": b.to_dot(),
            });
            let mut text = format!("{} vertices, {} edges\n", b.vertices.len(), b.edges.len());
            if let Some(c) = &census {
                text.push_str(&format!("valence {}, chambers at a vertex {}\n", c.neighbors_by_length.iter().map(|&(_, k)| k).sum::<usize>(), c.chambers));
            }
            text.push_str(&b.to_dot());
            Ok(outcome("building ball", json!({ "l": l, "n": n, "radius": radius, "budget": budget }), outputs, None, text))
        }
        BuildingCmd::Skeleton { l, ext, n, s, branch: b } => {
            if ext == ExtArg::None {
                return Err(pre("the skeleton needs a quadratic extension (--ext inert or ramified)"));
            }
            let r = ring(l, ext)?;
            let space = HermitianSpace::from_isotropy(&r, n, branch(b))?;
            let sk = resolution_skeleton(&space, s)?;
            let orbits: Vec<Value> = sk
                .orbits
                .iter()
                .map(|o| json!({ "faces": o.faces, "types": o.types, "stabilized": o.stabilized.iter().map(lattice_json).collect::<Vec<_>>() }))
                .collect();
            let mut text = format!("Witt index {}, {} orbits of {}-simplices\n", sk.witt_index, sk.orbits.len(), s);
            for o in &sk.orbits {
                text.push_str(&format!("faces {:?}, types {:?}\n", o.faces, o.types));
            }
            let inputs = json!({ "l": l, "ext": ext_str(ext), "n": n, "s": s, "branch": branch_str(b) });
            Ok(outcome("building skeleton", inputs, json!({ "witt_index": sk.witt_index, "orbits": orbits }), None, text))
        }
    }
}
