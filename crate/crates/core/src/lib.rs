//! Symbolic computation for uniparameter quantum nilpotent algebras.
//!
//! The library builds iterated Ore extensions with PBW normal forms over the
//! exact field `Q(q)`, runs the recursive construction of the quasi-commuting
//! prime-element cluster, computes centers of the associated quantum
//! affine spaces and tori through integer lattice kernels, certifies the
//! pivot hypothesis on the center, and decomposes derivations into an inner
//! part plus a homogeneous part, from which the first Hochschild cohomology
//! group is reported as a free module over the center.

pub mod catalog;
pub mod center;
pub mod deriv;
pub mod error;
pub mod gy;
pub mod lattice;
pub mod linalg;
pub mod ore;
pub mod sample;
pub mod scalars;
pub mod wire;

pub use error::{Error, Result};
