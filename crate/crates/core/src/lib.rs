//! Toric Calabi-Yau surfaces `X_{Σ_m}`, their open Gromov-Witten invariants,
//! the SYZ mirror `uv = g(z)`, and numerical period checks on the mirror.
//!
//! * [`lattice`]: fans, classification of Calabi-Yau fans, intersection data,
//!   moment polytopes.
//! * [`enumerative`]: the admissibility criterion for disk invariants and the
//!   correction series `δ_i`.
//! * [`mirror`]: the gluing polynomial built two ways, the exact identity
//!   between them, the mirror map and its inverse, chart maps.
//! * [`periods`]: quadrature of the holomorphic volume form over the cycles
//!   `S_l` and the hyper-Kähler period identities.
//!
//! Exact computations use arbitrary-precision integers. With the default
//! `parallel` feature the inner loops run on Rayon; without it they run
//! sequentially with identical results.

pub mod enumerative;
pub mod lattice;
pub mod mirror;
pub mod par;
pub mod periods;
pub mod poly;

pub use poly::{Exponent, MultiPoly};
