//! Periods of the holomorphic volume form over the vanishing cycles `S_l`.
//!
//! The volume form is normalized as `Ω̌ = (1/2πi) d log z ∧ d log u`, so the
//! fiber circle contributes `1` rather than `2πi` and `∫_{S_l} Ω̌ = log q_l` is
//! real. The hyper-Kähler check compares `Π̌_K` with `Π_I`: the mirror rotates
//! `I` and `K` into each other.

mod cycle;
mod quadrature;

use thiserror::Error;

pub use cycle::{
    analytic_tangents, cycle_point, cycle_point_with, fd_tangents, flat_symplectic, volume_form,
    CycleShape, CycleSpec, Tangents,
};
pub use quadrature::{
    hk_period_check, lagrangian_residual, lagrangian_residual_with, period_closed_form,
    period_quadrature, period_report, HKCheck, HKPeriods, LagrangianResidual, PeriodReport,
    PeriodResult, QuadratureParams, ENDPOINT_MARGIN, FD_STEP,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PeriodsError {
    #[error("q_{index} = {value} must be positive")]
    InvalidKahlerPoint { index: usize, value: f64 },
    #[error("q_{index} = {value}: consecutive roots of g coincide or swap")]
    DegenerateInterval { index: usize, value: f64 },
    #[error("cycle index l = {l} outside 1..{m}")]
    CycleOutOfRange { l: usize, m: usize },
    #[error("cycles are only built over real Kähler points")]
    ComplexKahlerPoint,
    #[error("grid {n_t}x{n_theta} is too coarse (need at least 8x8)")]
    InvalidGrid { n_t: usize, n_theta: usize },
    #[error("tolerance must be positive, got {0}")]
    InvalidTolerance(f64),
    #[error("refinement changed the period by {error:e}, above tolerance {tolerance:e}")]
    QuadratureDivergence { error: f64, tolerance: f64 },
}
