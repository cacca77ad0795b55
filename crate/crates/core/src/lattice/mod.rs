//! Exact lattice geometry of two-dimensional fans.

mod fan;
mod polytope;
mod vector;

use num_bigint::BigInt;
use thiserror::Error;

pub use fan::{
    build_cy_fan, classify, compactify, h_class_targets, infinity_index, is_calabi_yau,
    self_intersection, solve_curve_class, Classification, CurveClass, DivisorClass, Fan2D,
};
pub use polytope::{moment_polytope, resolve_kahler, Facet, MomentPolytope};
pub use vector::{extended_gcd, IntMatrix2, LatticeVec};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FanError {
    #[error("fan has no rays")]
    EmptyFan,
    #[error("m must be non-negative, got {0}")]
    NegativeM(i64),
    #[error("ray {0} is not primitive")]
    NonPrimitive(LatticeVec),
    #[error("ray {0} appears twice")]
    DuplicateRay(LatticeVec),
    #[error("adjacent rays {} and {} do not span a strictly convex cone", .0.0, .0.1)]
    NonSimplicial(Box<(LatticeVec, LatticeVec)>),
    #[error("fan is not Calabi-Yau: no ν with ⟨ν, v⟩ = 1 on every ray")]
    NotCalabiYau,
    #[error("fan is not smooth")]
    NotSmooth,
    #[error("fan is not complete")]
    NotComplete,
    #[error("matrix is not unimodular")]
    NotUnimodular,
    #[error("ray {0} has no neighbour on one side, its divisor is non-compact")]
    BoundaryRay(usize),
    #[error("v_(i-1) + v_(i+1) is not a multiple of v_i for i = {0}")]
    NonProportional(usize),
    #[error("center l = {l} outside 1..=m-1 for m = {m}")]
    CenterOutOfRange { m: i64, l: i64 },
    #[error("ray index {0} out of range")]
    RayIndexOutOfRange(usize),
    #[error("no curve class with these pairings: relation for ν = {nu} sums to {total}")]
    Inconsistent { nu: LatticeVec, total: BigInt },
    #[error("offsets must be {expected} finite reals, got {got} values")]
    InvalidOffsets { expected: usize, got: usize },
    #[error("facet {index} is not supporting (edge length {length})")]
    RedundantFacet { index: usize, length: f64 },
    #[error("Kähler data mismatch: q_{index} = {given} given but the polytope gives {derived}")]
    KahlerMismatch {
        index: usize,
        given: f64,
        derived: f64,
    },
    #[error("need either polytope offsets or q values")]
    MissingKahlerData,
}
