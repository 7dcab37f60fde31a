//! Rank-one double affine Hecke algebra of type (C^vee, C_1) in its basic
//! representation on Laurent polynomials, the Askey-Wilson polynomials and
//! functions it acts on, and a verification harness for the identities that
//! connect them.
//!
//! Modules:
//! - [`scalar`]: exact rational and multiprecision complex backends
//! - [`params`]: parameter tuples, duality, parameter maps
//! - [`qkernels`]: q-Pochhammer symbols, basic hypergeometric series, Gaussians
//! - [`laurent`]: Laurent polynomials and rational functions
//! - [`daha`]: difference-reflection operators, automorphisms, Gaussian conjugation
//! - [`awpoly`]: symmetric and non-symmetric Askey-Wilson polynomials
//! - [`awfunc`]: symmetric and non-symmetric Askey-Wilson functions
//! - [`suites`]: named verification suites over seeded samples

pub mod awfunc;
pub mod awpoly;
pub mod check;
pub mod daha;
pub mod error;
pub mod laurent;
pub mod params;
pub mod qkernels;
pub mod sampling;
pub mod suites;
pub mod scalar;

pub use error::{Error, Result};
