//! Quasiperiodic packings of multi-shell clusters by strip projection.
//!
//! A cluster `{±v_1, …, ±v_k} ⊂ R^n` built from orbits of a finite group
//! defines `n` orthogonal equal-norm vectors `w_i ∈ R^k`; their span is
//! the physical space inside the superspace `R^k`. Lattice points of `Z^k`
//! lying in the strip `E_n + [−0.5, 0.5]^k` are projected back to `R^n`,
//! and every selected point is the center of a (partially occupied) copy
//! of the cluster.
//!
//! Strip membership is decided by determinants of order `n + 1` only,
//! whatever the superspace dimension: see [`strip`].
//!
//! ```
//! use quasipack::prelude::*;
//!
//! let gens = dihedral_generators(5).unwrap();
//! let shells = [
//!     orbit(&gens, &[1.1, 1.3], DEFAULT_DEDUP_TOL).unwrap(),
//!     orbit(&gens, &[1.0, 0.0], DEFAULT_DEDUP_TOL).unwrap(),
//! ];
//! let emb = build_embedding(build_cluster(&shells).unwrap()).unwrap();
//! let cs = build_constraints(&emb).unwrap();
//! let limits = EnumerationLimits {
//!     max_points: None,
//!     max_physical_radius: Some(5.0),
//!     max_coordinate: 50,
//! };
//! let packing = enumerate_packing(&cs, &emb, &limits).unwrap();
//! assert!(packing.find(&[0; 10]).is_some());
//! ```

pub mod embedding;
pub mod enumerate;
pub mod error;
pub mod group;
pub mod io;
pub mod linalg;
pub mod oracle;
pub mod strip;

pub use error::{Error, LimitKind, Result};

pub mod prelude {
    pub use crate::embedding::{build_embedding, Embedding};
    pub use crate::enumerate::{
        box_scan, enumerate_packing, occupancy_profile, EnumerationLimits, Packing, PackingPoint,
    };
    pub use crate::error::{Error, LimitKind, Result};
    pub use crate::group::{
        build_cluster, dihedral_generators, golden_ratio, icosahedral_generators, orbit, Cluster,
        GeneratorSet, GroupKind, OrbitPoints, DEFAULT_DEDUP_TOL,
    };
    pub use crate::oracle::{agreement_report, lp_strip_membership, AgreementReport};
    pub use crate::strip::{build_constraints, index_tuples, IndexTuple, StripConstraintSet};
}
