//! The two toric charts `X̌_±` of the mirror and the superpotential they glue to.

use num_complex::Complex64;
use serde::Serialize;

use super::map::{gluing_value, KahlerPoint};
use super::MirrorError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Side {
    Plus,
    Minus,
}

/// A point `(z, u, v)` of `{uv = g(z)} ⊂ ℂ^× × ℂ²`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MirrorPoint {
    pub z: Complex64,
    pub u: Complex64,
    pub v: Complex64,
}

impl MirrorPoint {
    /// `uv − g(z)`.
    pub fn residual(&self, q: &[Complex64]) -> Complex64 {
        self.u * self.v - gluing_value(q, self.z)
    }

    /// `|uv − g(z)| / (1 + |g(z)|)`.
    pub fn relative_residual(&self, q: &[Complex64]) -> f64 {
        let g = gluing_value(q, self.z);
        (self.u * self.v - g).norm() / (1.0 + g.norm())
    }
}

/// `ι_+(z_1, z_2) = (z_1, z_2 g(z_1), z_2^{-1})`, `ι_−(z_1, z_2) = (z_1, z_2, z_2^{-1} g(z_1))`.
pub fn chart_embed(
    side: Side,
    z1: Complex64,
    z2: Complex64,
    q: &KahlerPoint,
) -> Result<MirrorPoint, MirrorError> {
    if z1.norm() == 0.0 {
        return Err(MirrorError::ZeroBaseCoordinate);
    }
    if z2.norm() == 0.0 {
        return Err(MirrorError::ZeroFiberCoordinate);
    }
    let g = gluing_value(q.values(), z1);
    Ok(match side {
        Side::Plus => MirrorPoint {
            z: z1,
            u: z2 * g,
            v: z2.inv(),
        },
        Side::Minus => MirrorPoint {
            z: z1,
            u: z2,
            v: g / z2,
        },
    })
}

/// `W = z_2 g(z_1)` on `X̌_+` and `W = z_2` on `X̌_−`; both are the function `u`.
pub fn superpotential(
    side: Side,
    z1: Complex64,
    z2: Complex64,
    q: &KahlerPoint,
) -> Result<Complex64, MirrorError> {
    Ok(chart_embed(side, z1, z2, q)?.u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn examples() {
        let q = KahlerPoint::real(&[0.5]).unwrap();
        let p = chart_embed(Side::Minus, c(-1.0), c(1.0), &q).unwrap();
        assert_eq!((p.z, p.u, p.v), (c(-1.0), c(1.0), c(0.0)));

        let p = chart_embed(Side::Plus, c(1.0), c(1.0), &q).unwrap();
        assert_eq!((p.z, p.u, p.v), (c(1.0), c(3.0), c(1.0)));
        assert_eq!(p.residual(q.values()), c(0.0));

        assert_eq!(
            superpotential(Side::Plus, c(1.0), c(2.0), &q).unwrap(),
            c(6.0)
        );
        assert_eq!(
            superpotential(Side::Minus, c(1.0), c(2.0), &q).unwrap(),
            c(2.0)
        );
        assert!(matches!(
            chart_embed(Side::Plus, c(1.0), c(0.0), &q),
            Err(MirrorError::ZeroFiberCoordinate)
        ));
    }

    #[test]
    fn random_points_lie_on_surface() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let q: Vec<f64> = (0..3).map(|_| rng.gen_range(0.1..0.9)).collect();
            let q = KahlerPoint::real(&q).unwrap();
            let z1 = Complex64::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
            let z2 = Complex64::from_polar(
                rng.gen_range(0.1..4.0),
                rng.gen_range(0.0..std::f64::consts::TAU),
            );
            for side in [Side::Plus, Side::Minus] {
                let p = chart_embed(side, z1, z2, &q).unwrap();
                assert!(p.relative_residual(q.values()) < 1e-12);
                assert_eq!(superpotential(side, z1, z2, &q).unwrap(), p.u);
            }
        }
    }
}
