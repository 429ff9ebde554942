//! Type-A Kostka-Foulkes polynomials, p-adic Plancherel moments, local adjoint
//! L-factors and GL(3) Kuznetsov kernel functions, each with an independent
//! numerical cross-check.

pub mod adjoint_l;
pub mod characters;
pub mod error;
pub mod exact;
pub mod kernels;
pub mod lie_typea;
pub mod measures;
pub mod special;

pub use error::{Error, Result};
