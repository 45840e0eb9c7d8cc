//! Lattice models of the Bruhat-Tits buildings of `GL`, `SL`, `U` and `GU` over `Q_l`.

mod census;
mod field;
mod lattice;
mod space;

use thiserror::Error;

pub use census::{
    ball, gl_building_dimension, hermitian_reflection, link_census, resolution_skeleton, Ball, LinkCensus,
    Skeleton, SkeletonOrbit,
};
pub use field::{Extension, KElt, KMatrix, LocalRing};
pub use lattice::{chamber_from_basis_gl, hnf_normalize, neighbors, sublattices_of_index, Lattice, LatticeChain};
pub use space::{
    diagonalize, non_norm, quadratic_witt_index, table_witt_index, witt_index, DiscBranch, HermitianSpace,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildingError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("d = {d} does not give the requested extension of Q_{l}")]
    BadExtension { l: u64, d: i64 },
    #[error("dimension mismatch")]
    Dimension,
    #[error("matrix is singular")]
    Singular,
    #[error("basis vectors are dependent")]
    Dependent,
    #[error("invalid chain: {0}")]
    BadChain(&'static str),
    #[error("enumeration needs {needed} items, budget is {budget}")]
    Budget { needed: u64, budget: u64 },
    #[error("form is not hermitian")]
    NotHermitian,
    #[error("operation needs a quadratic extension")]
    NeedsExtension,
    #[error("residue characteristic 2 is not supported for unitary buildings")]
    ResidueTwo,
    #[error("lattice class contains no preferred lattice")]
    NotPreferred,
    #[error("matrix is not a similitude")]
    NotSimilitude,
    #[error("hyperbolic basis is not normalized")]
    NotNormalized,
    #[error("space was not built from the isotropy table")]
    NeedsTableForm,
    #[error("simplex dimension {s} exceeds the Witt index {r}")]
    SimplexTooLarge { s: usize, r: usize },
}
