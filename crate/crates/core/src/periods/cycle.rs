//! The cycles `S_l = {|u| = |v|, z ∈ [r_{l+1}, r_l]}` and their tangent vectors.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::PeriodsError;
use crate::mirror::{gluing_log_derivative, gluing_value, MirrorPoint};

/// The cycle over the `l`-th interval between consecutive negative roots of `g`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CycleSpec {
    pub m: usize,
    pub l: usize,
    pub q: Vec<f64>,
    /// `log|z|` at `t = 0`, the root `−(q_1⋯q_{l-1})^{-1}`.
    #[serde(skip)]
    log_near: f64,
    /// `log|z|` at `t = 1`, the root `−(q_1⋯q_l)^{-1}`.
    #[serde(skip)]
    log_far: f64,
}

impl CycleSpec {
    /// `q` has length `m − 1` with `0 < q_j < 1`; `l` runs over `1..m`.
    pub fn new(q: &[f64], l: usize) -> Result<Self, PeriodsError> {
        let m = q.len() + 1;
        for (j, &x) in q.iter().enumerate() {
            if x.is_nan() || x <= 0.0 {
                return Err(PeriodsError::InvalidKahlerPoint {
                    index: j + 1,
                    value: x,
                });
            }
            if x >= 1.0 {
                return Err(PeriodsError::DegenerateInterval {
                    index: j + 1,
                    value: x,
                });
            }
        }
        if l == 0 || l >= m {
            return Err(PeriodsError::CycleOutOfRange { l, m });
        }
        let log_near = -q[..l - 1].iter().map(|x| x.ln()).sum::<f64>();
        let log_far = log_near - q[l - 1].ln();
        Ok(CycleSpec {
            m,
            l,
            q: q.to_vec(),
            log_near,
            log_far,
        })
    }

    /// `(near, far)` roots of `g`, both negative reals.
    pub fn endpoints(&self) -> (f64, f64) {
        let near: f64 = self.q[..self.l - 1].iter().product();
        (-1.0 / near, -1.0 / (near * self.q[self.l - 1]))
    }

    /// `d log z / dt`, constant along the cycle.
    pub fn log_speed(&self) -> f64 {
        self.log_far - self.log_near
    }

    pub(crate) fn q_complex(&self) -> Vec<Complex64> {
        self.q.iter().map(|&x| Complex64::new(x, 0.0)).collect()
    }

    fn z_at(&self, t: f64) -> Complex64 {
        Complex64::new(-(self.log_near + t * self.log_speed()).exp(), 0.0)
    }
}

/// How the fiber circle sits over each `z`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CycleShape {
    /// `|u| = |v|`.
    Exact,
    /// `|u|² − |v|² = c`.
    Offset(f64),
    /// `|u| = |g|^{1/2} e^{a t}`, `|v| = |g|^{1/2} e^{−a t}`.
    Twist(f64),
}

pub fn cycle_point(spec: &CycleSpec, t: f64, theta: f64) -> MirrorPoint {
    cycle_point_with(spec, CycleShape::Exact, t, theta)
}

/// Point of the (possibly deformed) cycle at `(t, θ) ∈ [0,1] × [0,2π)`.
pub fn cycle_point_with(spec: &CycleSpec, shape: CycleShape, t: f64, theta: f64) -> MirrorPoint {
    let zero = Complex64::new(0.0, 0.0);
    if t <= 0.0 || t >= 1.0 {
        let (near, far) = spec.endpoints();
        let z = if t <= 0.0 { near } else { far };
        return MirrorPoint {
            z: Complex64::new(z, 0.0),
            u: zero,
            v: zero,
        };
    }
    let z = spec.z_at(t);
    let g = gluing_value(&spec.q_complex(), z);
    let modulus = g.norm();
    if modulus == 0.0 {
        return MirrorPoint {
            z,
            u: zero,
            v: zero,
        };
    }
    let abs_u = match shape {
        CycleShape::Exact => modulus.sqrt(),
        CycleShape::Offset(c) => ((c + (c * c + 4.0 * modulus * modulus).sqrt()) / 2.0).sqrt(),
        CycleShape::Twist(a) => modulus.sqrt() * (a * t).exp(),
    };
    let phase = Complex64::from_polar(1.0, theta);
    MirrorPoint {
        z,
        u: abs_u * phase,
        v: g / (abs_u * phase),
    }
}

/// Tangent vectors of the exact cycle, `(∂_t, ∂_θ)`, in the coordinates
/// `(log z, u, v)`.
#[derive(Clone, Copy, Debug)]
pub struct Tangents {
    pub point: MirrorPoint,
    pub dt: [Complex64; 3],
    pub dtheta: [Complex64; 3],
}

/// Closed-form tangents of the exact cycle at an interior point.
pub fn analytic_tangents(spec: &CycleSpec, t: f64, theta: f64) -> Tangents {
    let p = cycle_point(spec, t, theta);
    let q = spec.q_complex();
    let speed = spec.log_speed();
    let g = gluing_value(&q, p.z);
    // d log g / dt = (g'/g) z_t with z_t = z L
    let dlog_g = gluing_log_derivative(&q, p.z) * p.z * speed;
    let rho = g.norm().sqrt();
    let rho_t = 0.5 * rho * dlog_g.re;
    let phase = Complex64::from_polar(1.0, theta);
    let u_t = rho_t * phase;
    let v_t = (g * dlog_g / rho - g * rho_t / (rho * rho)) / phase;
    let i = Complex64::i();
    Tangents {
        point: p,
        dt: [Complex64::new(speed, 0.0), u_t, v_t],
        dtheta: [Complex64::new(0.0, 0.0), i * p.u, -i * p.v],
    }
}

/// Central-difference tangents of a deformed cycle with step `h`.
pub fn fd_tangents(spec: &CycleSpec, shape: CycleShape, t: f64, theta: f64, h: f64) -> Tangents {
    let coords = |t: f64, th: f64| {
        let p = cycle_point_with(spec, shape, t, th);
        [p.z.ln(), p.u, p.v]
    };
    let (tp, tm) = (coords(t + h, theta), coords(t - h, theta));
    let (sp, sm) = (coords(t, theta + h), coords(t, theta - h));
    let diff = |a: [Complex64; 3], b: [Complex64; 3]| [0, 1, 2].map(|k| (a[k] - b[k]) / (2.0 * h));
    Tangents {
        point: cycle_point_with(spec, shape, t, theta),
        dt: diff(tp, tm),
        dtheta: diff(sp, sm),
    }
}

/// Standard Kähler form `(i/2) Σ dw ∧ dw̄` on `(X, Y)`.
pub fn flat_symplectic(x: &[Complex64; 3], y: &[Complex64; 3]) -> f64 {
    -x.iter().zip(y).map(|(a, b)| (a * b.conj()).im).sum::<f64>()
}

/// `Ω̌ = (1/2πi) d log z ∧ d log u` on `(X, Y)`.
pub fn volume_form(u: Complex64, x: &[Complex64; 3], y: &[Complex64; 3]) -> Complex64 {
    let wedge = x[0] * (y[1] / u) - y[0] * (x[1] / u);
    wedge / Complex64::new(0.0, 2.0 * PI)
}
