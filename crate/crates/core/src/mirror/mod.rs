//! The SYZ mirror `uv = g(z)`: exact construction of `g`, the mirror map and
//! its inverse, and the chart maps.

mod charts;
mod gluing;
mod map;
pub mod roots;

use thiserror::Error;

use crate::enumerative::EnumerativeError;

pub use charts::{chart_embed, superpotential, MirrorPoint, Side};
pub use gluing::{
    g_from_invariants, g_from_invariants_with, g_from_product, verify_identity,
    verify_identity_with, GluingPolynomial, IdentityMismatch, IdentityReport,
};
pub use map::{
    factor_slopes, gluing_log_derivative, gluing_value, inverse_mirror_map,
    inverse_mirror_map_with, mirror_map, product_coefficients, InverseOptions, KahlerPoint,
    MirrorCoefficients,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MirrorError {
    #[error("m must be at least 1, got {0}")]
    InvalidM(usize),
    #[error(transparent)]
    Enumerative(#[from] EnumerativeError),
    #[error("q_{index} = {value} is outside the open unit disk minus 0")]
    InvalidKahlerPoint { index: usize, value: f64 },
    #[error("C_0 = {0} + {1}i, expected 1")]
    NotNormalized(f64, f64),
    #[error("roots {index} and {} are not separated (gap {gap:e})", index + 1)]
    RootSeparationFailure { index: usize, gap: f64 },
    #[error("leading coefficient vanishes")]
    DegenerateLeading,
    #[error("the zero polynomial has no roots")]
    ZeroPolynomial,
    #[error("eigenvalue solver did not converge")]
    EigenSolverFailed,
    #[error("fiber coordinate z_2 must be nonzero")]
    ZeroFiberCoordinate,
    #[error("base coordinate z_1 must be nonzero")]
    ZeroBaseCoordinate,
}
