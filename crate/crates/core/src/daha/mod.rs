//! The algebra in its basic representation: difference-reflection operators,
//! the generators `T1, T0, Z` and derived operators, automorphisms given by
//! generator images, and conjugation by Gaussians.

pub mod automorphism;
pub mod basic;
pub mod gaussian;
pub mod genexpr;
pub mod numeric;
pub mod ops;
pub mod relations;
pub mod spherical;

pub use automorphism::{
    automorphism_images, compose_images, sign_flip_images, verify_automorphism, verify_group_relations, Images,
};
pub use basic::{basic_op, BasicRep, OpName};
pub use gaussian::{conjugate_by_gaussian_ratio, gaussian_shift_ratio, verify_gaussian_conjugations, GaussRatio};
pub use genexpr::{Gen, GenExpr};
pub use ops::{DiffRefOp, Shift};
pub use relations::{verify_daha_relations, RelationReport};
pub use spherical::{t1_decompose, verify_spherical};
