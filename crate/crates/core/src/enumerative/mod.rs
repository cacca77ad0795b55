//! Open Gromov-Witten invariants of toric Calabi-Yau surfaces.
//!
//! For a Lagrangian toric fiber of `X_{Σ_m}`, the invariant `n_{β_l + α}` of
//! the disk class `β_l + α`, `α = Σ s_k [D_k]`, is 1 exactly when `(s_k)` is
//! admissible with center `l` and 0 otherwise. This module evaluates that
//! criterion, enumerates the nonvanishing classes, checks them against an
//! independent interval-decomposition oracle, and sums them into the
//! correction series `δ_i`.

mod admissible;
mod intervals;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub use admissible::{
    enumerate_admissible, enumerate_in_box, is_admissible, is_admissible_with, open_gw,
    position_bound, AdmissibleSequence,
};
pub use intervals::{decompose_intervals, IntervalDecomposition};

use crate::poly::MultiPoly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumerativeError {
    #[error("m must be at least 1, got {0}")]
    InvalidM(usize),
    #[error("sequence has length {got}, expected m-1 = {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("center l = {l} out of range for m = {m}")]
    CenterOutOfRange { l: usize, m: usize },
    #[error("sequence has a negative entry")]
    NegativeEntry,
    #[error("greedy decomposition failed at step {step}, residual {residual:?}")]
    DecompositionFailed { step: usize, residual: Vec<i32> },
}

/// One of the four admissibility conditions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Condition {
    /// (1) `s_k ≥ 0`.
    Nonnegative = 1,
    /// (2) `s_i ≤ s_{i+1} ≤ s_i + 1` for `i < l`.
    Ascending = 2,
    /// (3) `s_i ≥ s_{i+1} ≥ s_i − 1` for `i ≥ l`.
    Descending = 3,
    /// (4) `s_1, s_{m-1} ≤ 1`.
    Boundary = 4,
}

impl Condition {
    pub const ALL: [Condition; 4] = [
        Condition::Nonnegative,
        Condition::Ascending,
        Condition::Descending,
        Condition::Boundary,
    ];

    pub fn number(self) -> u8 {
        self as u8
    }
}

/// Set of enabled conditions. Everything except [`Conditions::ALL`] exists to
/// mutation-test the identity check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Conditions(u8);

impl Conditions {
    pub const ALL: Conditions = Conditions(0b1111);

    pub fn has(self, c: Condition) -> bool {
        self.0 & (1 << (c.number() - 1)) != 0
    }

    pub fn without(self, c: Condition) -> Conditions {
        Conditions(self.0 & !(1 << (c.number() - 1)))
    }

    pub fn is_all(self) -> bool {
        self == Conditions::ALL
    }
}

impl fmt::Display for Conditions {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dropped: Vec<String> = Condition::ALL
            .iter()
            .filter(|c| !self.has(**c))
            .map(|c| format!("drop-cond-{}", c.number()))
            .collect();
        if dropped.is_empty() {
            f.write_str("none")
        } else {
            f.write_str(&dropped.join(","))
        }
    }
}

impl FromStr for Conditions {
    type Err = String;

    /// Parses `none` or a comma list like `drop-cond-4,drop-cond-1`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut out = Conditions::ALL;
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            if part == "none" {
                continue;
            }
            let n: u8 = part
                .strip_prefix("drop-cond-")
                .and_then(|d| d.parse().ok())
                .filter(|n| (1..=4).contains(n))
                .ok_or_else(|| format!("unknown mutation '{part}'"))?;
            out = out.without(Condition::ALL[n as usize - 1]);
        }
        Ok(out)
    }
}

/// `δ_i = Σ_{α ≠ 0 admissible with center i} q^α`, with `δ_m = 0`.
pub fn delta_series(m: usize, i: usize) -> Result<MultiPoly, EnumerativeError> {
    delta_series_with(m, i, Conditions::ALL)
}

/// As [`delta_series`] under a subset of the rules. Mutated rules search the
/// box `[−1, m]^(m−1)`.
pub fn delta_series_with(
    m: usize,
    i: usize,
    rules: Conditions,
) -> Result<MultiPoly, EnumerativeError> {
    if m == 0 {
        return Err(EnumerativeError::InvalidM(m));
    }
    if i < 1 || i > m {
        return Err(EnumerativeError::CenterOutOfRange { l: i, m });
    }
    let nvars = m - 1;
    let mut delta = MultiPoly::zero(nvars);
    if i == m {
        return Ok(delta);
    }
    let seqs = if rules.is_all() {
        enumerate_admissible(m, i)?
    } else {
        enumerate_in_box(m, i, -1, m as i32, rules)?
    };
    let one = num_bigint::BigInt::from(1);
    for a in seqs.into_iter().filter(|a| !a.is_zero()) {
        delta.add_term(crate::poly::Exponent(a.s), &one);
    }
    Ok(delta)
}
