//! Quadrature of `Ω̌` over `S_l` and the hyper-Kähler period comparison.

use std::f64::consts::PI;
use std::num::NonZeroUsize;

use gauss_quad::GaussLegendre;
use num_complex::Complex64;
use serde::Serialize;

use super::cycle::{
    analytic_tangents, fd_tangents, flat_symplectic, volume_form, CycleShape, CycleSpec,
};
use super::PeriodsError;
use crate::mirror::KahlerPoint;
use crate::par::*;

/// Gauss-Legendre in `t`, trapezoid in `θ`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct QuadratureParams {
    pub n_t: usize,
    pub n_theta: usize,
    pub tolerance: f64,
}

impl Default for QuadratureParams {
    fn default() -> Self {
        QuadratureParams {
            n_t: 16,
            n_theta: 16,
            tolerance: 1e-6,
        }
    }
}

impl QuadratureParams {
    pub fn validate(&self) -> Result<(), PeriodsError> {
        if self.n_t < 8 || self.n_theta < 8 {
            return Err(PeriodsError::InvalidGrid {
                n_t: self.n_t,
                n_theta: self.n_theta,
            });
        }
        if self.tolerance.is_nan() || self.tolerance <= 0.0 {
            return Err(PeriodsError::InvalidTolerance(self.tolerance));
        }
        Ok(())
    }

    fn doubled(&self) -> Self {
        QuadratureParams {
            n_t: 2 * self.n_t,
            n_theta: 2 * self.n_theta,
            ..*self
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PeriodResult {
    pub value: Complex64,
    /// `|I(2n) − I(n)|`.
    pub error_estimate: f64,
    pub grid: QuadratureParams,
}

/// `Σ_{t,θ} w_t w_θ f(t, θ)` with a deterministic reduction order.
fn integrate_grid<F>(n_t: usize, n_theta: usize, f: F) -> (f64, f64)
where
    F: Fn(f64, f64) -> Complex64 + Sync,
{
    let rule = GaussLegendre::new(NonZeroUsize::new(n_t).expect("n_t > 0"));
    let nodes: Vec<(f64, f64)> = rule
        .as_node_weight_pairs()
        .iter()
        .map(|&(x, w)| (0.5 * (x + 1.0), 0.5 * w))
        .collect();
    let h = 2.0 * PI / n_theta as f64;
    let rows: Vec<Complex64> = nodes
        .par_iter()
        .map(|&(t, w)| {
            let re = stable_sum((0..n_theta).map(|j| f(t, j as f64 * h).re));
            let im = stable_sum((0..n_theta).map(|j| f(t, j as f64 * h).im));
            Complex64::new(re, im) * (w * h)
        })
        .collect();
    (
        stable_sum(rows.iter().map(|z| z.re)),
        stable_sum(rows.iter().map(|z| z.im)),
    )
}

fn period_on_grid(spec: &CycleSpec, n_t: usize, n_theta: usize) -> Complex64 {
    let (re, im) = integrate_grid(n_t, n_theta, |t, th| {
        let tg = analytic_tangents(spec, t, th);
        volume_form(tg.point.u, &tg.dtheta, &tg.dt)
    });
    Complex64::new(re, im)
}

/// `∫_{S_l} Ω̌`, oriented so the result is `log q_l`.
pub fn period_quadrature(
    spec: &CycleSpec,
    params: QuadratureParams,
) -> Result<PeriodResult, PeriodsError> {
    params.validate()?;
    let coarse = period_on_grid(spec, params.n_t, params.n_theta);
    let fine_grid = params.doubled();
    let fine = period_on_grid(spec, fine_grid.n_t, fine_grid.n_theta);
    let error_estimate = (fine - coarse).norm();
    if !error_estimate.is_finite() || error_estimate > params.tolerance {
        return Err(PeriodsError::QuadratureDivergence {
            error: error_estimate,
            tolerance: params.tolerance,
        });
    }
    Ok(PeriodResult {
        value: fine,
        error_estimate,
        grid: fine_grid,
    })
}

/// `log(r_{l+1} / r_l)` from the interval endpoints.
pub fn period_closed_form(spec: &CycleSpec) -> Complex64 {
    let (near, far) = spec.endpoints();
    Complex64::new((near / far).ln(), 0.0)
}

/// JSON record for one period evaluation.
#[derive(Clone, Debug, Serialize)]
pub struct PeriodReport {
    pub l: usize,
    pub q: Vec<f64>,
    pub period: [f64; 2],
    pub closed_form: [f64; 2],
    pub error: f64,
}

pub fn period_report(
    spec: &CycleSpec,
    params: QuadratureParams,
) -> Result<PeriodReport, PeriodsError> {
    let r = period_quadrature(spec, params)?;
    let c = period_closed_form(spec);
    Ok(PeriodReport {
        l: spec.l,
        q: spec.q.clone(),
        period: [r.value.re, r.value.im],
        closed_form: [c.re, c.im],
        error: r.error_estimate,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LagrangianResidual {
    /// `max |ω(∂_t, ∂_θ)| / (|∂_t| |∂_θ|)` for the flat Kähler form.
    pub symplectic: f64,
    /// `max |Im Ω̌(∂_θ, ∂_t)|`.
    pub imaginary_volume: f64,
}

/// Distance from the endpoints kept out of the residual grid.
pub const ENDPOINT_MARGIN: f64 = 1e-3;
/// Finite-difference step for the residual tangents.
pub const FD_STEP: f64 = 1e-5;

pub fn lagrangian_residual(
    spec: &CycleSpec,
    params: QuadratureParams,
) -> Result<LagrangianResidual, PeriodsError> {
    lagrangian_residual_with(spec, CycleShape::Exact, params)
}

/// Samples a uniform `(t, θ)` grid on `[ε, 1−ε] × [0, 2π)`.
pub fn lagrangian_residual_with(
    spec: &CycleSpec,
    shape: CycleShape,
    params: QuadratureParams,
) -> Result<LagrangianResidual, PeriodsError> {
    params.validate()?;
    let (n_t, n_theta) = (params.n_t, params.n_theta);
    let span = 1.0 - 2.0 * ENDPOINT_MARGIN;
    let rows: Vec<(f64, f64)> = (0..n_t)
        .into_par_iter()
        .map(|k| {
            let t = ENDPOINT_MARGIN + span * k as f64 / (n_t - 1) as f64;
            (0..n_theta).fold((0.0f64, 0.0f64), |(s, v), j| {
                let th = 2.0 * PI * j as f64 / n_theta as f64;
                let tg = fd_tangents(spec, shape, t, th, FD_STEP);
                let norm = |w: &[Complex64; 3]| w.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
                let omega =
                    flat_symplectic(&tg.dt, &tg.dtheta).abs() / (norm(&tg.dt) * norm(&tg.dtheta));
                let vol = volume_form(tg.point.u, &tg.dtheta, &tg.dt).im.abs();
                (s.max(omega), v.max(vol))
            })
        })
        .collect();
    let (symplectic, imaginary_volume) = rows
        .into_iter()
        .fold((0.0f64, 0.0f64), |(a, b), (s, v)| (a.max(s), b.max(v)));
    Ok(LagrangianResidual {
        symplectic,
        imaginary_volume,
    })
}

/// Periods `(Π_I, Π_J, Π_K)` over a basis of `H_2`, one entry per `l`.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[allow(non_snake_case)]
pub struct HKPeriods {
    pub Pi_I: Vec<f64>,
    pub Pi_J: Vec<f64>,
    pub Pi_K: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HKCheck {
    /// `X̌` periods over the cycles `S_l`.
    pub mirror: HKPeriods,
    /// `X` periods over the divisors `D_l`.
    pub original: HKPeriods,
    /// Largest deviation in `Π̌_I = Π_K`, `Π̌_J = Π_J`, `Π̌_K = Π_I`.
    pub max_deviation: f64,
    pub pass: bool,
}

/// Compares the mirror periods with the hyper-Kähler rotation of the
/// original ones. On `X`, `Π_J = Π_K = 0` and `Π_I = −log q`.
pub fn hk_period_check(q: &KahlerPoint, params: QuadratureParams) -> Result<HKCheck, PeriodsError> {
    let q = q.as_real().ok_or(PeriodsError::ComplexKahlerPoint)?;
    params.validate()?;
    let specs: Vec<CycleSpec> = (1..=q.len())
        .map(|l| CycleSpec::new(&q, l))
        .collect::<Result<_, _>>()?;
    let rows: Vec<(f64, f64, f64)> = specs
        .par_iter()
        .map(|spec| {
            let omega = period_quadrature(spec, params)?.value;
            let (pi_i, _) = integrate_grid(params.n_t, params.n_theta, |t, th| {
                let tg = analytic_tangents(spec, t, th);
                Complex64::new(flat_symplectic(&tg.dtheta, &tg.dt), 0.0)
            });
            Ok((pi_i, -omega.im, -omega.re))
        })
        .collect::<Result<_, PeriodsError>>()?;
    let mirror = HKPeriods {
        Pi_I: rows.iter().map(|r| r.0).collect(),
        Pi_J: rows.iter().map(|r| r.1).collect(),
        Pi_K: rows.iter().map(|r| r.2).collect(),
    };
    let original = HKPeriods {
        Pi_I: q.iter().map(|x| -x.ln()).collect(),
        Pi_J: vec![0.0; q.len()],
        Pi_K: vec![0.0; q.len()],
    };
    let pairs = [
        (&mirror.Pi_I, &original.Pi_K),
        (&mirror.Pi_J, &original.Pi_J),
        (&mirror.Pi_K, &original.Pi_I),
    ];
    let max_deviation = pairs
        .iter()
        .flat_map(|(a, b)| a.iter().zip(b.iter()).map(|(x, y)| (x - y).abs()))
        .fold(0.0, f64::max);
    Ok(HKCheck {
        mirror,
        original,
        max_deviation,
        pass: max_deviation <= params.tolerance,
    })
}
