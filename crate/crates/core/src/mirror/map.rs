//! The mirror map `q ↦ (C_0, …, C_m)` and its numerical inverse.

use num_complex::Complex64;
use serde::Serialize;

use super::roots::polynomial_roots;
use super::MirrorError;

/// Canonical Kähler coordinates `q_j = exp(−∫_{D_j} ω)`, `j = 1..m−1`.
#[derive(Clone, Debug, PartialEq)]
pub struct KahlerPoint {
    q: Vec<Complex64>,
}

impl KahlerPoint {
    /// Real large-volume point, `0 < q_j < 1`.
    pub fn real(q: &[f64]) -> Result<Self, MirrorError> {
        for (j, &x) in q.iter().enumerate() {
            if !(x > 0.0 && x < 1.0) {
                return Err(MirrorError::InvalidKahlerPoint {
                    index: j + 1,
                    value: x,
                });
            }
        }
        Ok(KahlerPoint {
            q: q.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        })
    }

    /// Complex point with `0 < |q_j| < 1`.
    pub fn complex(q: &[Complex64]) -> Result<Self, MirrorError> {
        for (j, x) in q.iter().enumerate() {
            let r = x.norm();
            if !(r > 0.0 && r < 1.0) {
                return Err(MirrorError::InvalidKahlerPoint {
                    index: j + 1,
                    value: r,
                });
            }
        }
        Ok(KahlerPoint { q: q.to_vec() })
    }

    pub fn m(&self) -> usize {
        self.q.len() + 1
    }

    pub fn values(&self) -> &[Complex64] {
        &self.q
    }

    /// Real parts, if every coordinate is real.
    pub fn as_real(&self) -> Option<Vec<f64>> {
        self.q
            .iter()
            .all(|x| x.im == 0.0)
            .then(|| self.q.iter().map(|x| x.re).collect())
    }
}

/// Coefficients of `uv = Σ C_i z^i`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MirrorCoefficients {
    #[serde(serialize_with = "serialize_complex_vec")]
    pub c: Vec<Complex64>,
}

fn serialize_complex_vec<S: serde::Serializer>(v: &[Complex64], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for z in v {
        seq.serialize_element(&[z.re, z.im])?;
    }
    seq.end()
}

impl MirrorCoefficients {
    pub fn from_real(c: &[f64]) -> Self {
        MirrorCoefficients {
            c: c.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }
}

/// Linear-factor slopes `1, q_1, q_1q_2, …, q_1⋯q_{m-1}`.
pub fn factor_slopes(q: &[Complex64]) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(q.len() + 1);
    let mut acc = Complex64::new(1.0, 0.0);
    out.push(acc);
    for &x in q {
        acc *= x;
        out.push(acc);
    }
    out
}

/// Expands `Π_i (1 + slope_i z)` at arbitrary (possibly boundary) `q`.
pub fn product_coefficients(q: &[Complex64]) -> Vec<Complex64> {
    let mut c = vec![Complex64::new(1.0, 0.0)];
    for s in factor_slopes(q) {
        let mut next = vec![Complex64::new(0.0, 0.0); c.len() + 1];
        for (k, &ck) in c.iter().enumerate() {
            next[k] += ck;
            next[k + 1] += ck * s;
        }
        c = next;
    }
    c
}

/// `g(z) = Π_{i=0}^{m-1} (1 + q_1⋯q_i z)`.
pub fn gluing_value(q: &[Complex64], z: Complex64) -> Complex64 {
    factor_slopes(q)
        .into_iter()
        .map(|s| Complex64::new(1.0, 0.0) + s * z)
        .product()
}

/// `g'(z)/g(z) = Σ_i s_i / (1 + s_i z)`.
pub fn gluing_log_derivative(q: &[Complex64], z: Complex64) -> Complex64 {
    factor_slopes(q)
        .into_iter()
        .map(|s| s / (Complex64::new(1.0, 0.0) + s * z))
        .sum()
}

/// `C_i(q)`, evaluated through the product form (equal to the invariant form
/// by the exact identity check).
pub fn mirror_map(q: &KahlerPoint) -> MirrorCoefficients {
    MirrorCoefficients {
        c: product_coefficients(q.values()),
    }
}

/// Tolerances for [`inverse_mirror_map_with`].
#[derive(Clone, Copy, Debug)]
pub struct InverseOptions {
    /// Minimum relative gap `|r_{k+1}|/|r_k| − 1` between consecutive root moduli.
    pub separation: f64,
    /// Roots with `|r p'(r)| / Σ|C_i||r|^i` below this are treated as multiple.
    pub simplicity: f64,
    /// Allowed `|C_0 − 1|`.
    pub normalization: f64,
}

impl Default for InverseOptions {
    fn default() -> Self {
        InverseOptions {
            separation: 1e-8,
            simplicity: 1e-10,
            normalization: 1e-12,
        }
    }
}

pub fn inverse_mirror_map(c: &MirrorCoefficients) -> Result<KahlerPoint, MirrorError> {
    inverse_mirror_map_with(c, InverseOptions::default())
}

/// Recovers `q` from `C` by factoring: the roots sorted by modulus are
/// `r_l = −(q_1⋯q_{l-1})^{-1}`, so `q_l = r_l / r_{l+1}`. Complex roots give
/// complex `q` without any positivity check.
pub fn inverse_mirror_map_with(
    c: &MirrorCoefficients,
    opts: InverseOptions,
) -> Result<KahlerPoint, MirrorError> {
    let c0 = *c.c.first().ok_or(MirrorError::ZeroPolynomial)?;
    if (c0 - Complex64::new(1.0, 0.0)).norm() > opts.normalization {
        return Err(MirrorError::NotNormalized(c0.re, c0.im));
    }
    let lead = *c.c.last().expect("nonempty");
    if lead.norm() == 0.0 {
        return Err(MirrorError::DegenerateLeading);
    }
    let mut roots = polynomial_roots(&c.c)?;
    roots.sort_by(|a, b| a.norm().total_cmp(&b.norm()));

    for (k, r) in roots.iter().enumerate() {
        let (_, dp) = super::roots::horner(&c.c, *r);
        let scale: f64 =
            c.c.iter()
                .enumerate()
                .map(|(i, ci)| ci.norm() * r.norm().powi(i as i32))
                .sum();
        let simple = (dp * r).norm() / scale;
        if simple < opts.simplicity {
            return Err(MirrorError::RootSeparationFailure {
                index: k + 1,
                gap: simple,
            });
        }
    }
    for k in 0..roots.len().saturating_sub(1) {
        let gap = roots[k + 1].norm() / roots[k].norm() - 1.0;
        if gap < opts.separation {
            return Err(MirrorError::RootSeparationFailure { index: k + 1, gap });
        }
    }
    let q: Vec<Complex64> = roots.windows(2).map(|w| w[0] / w[1]).collect();
    Ok(KahlerPoint { q })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn re(v: &[Complex64]) -> Vec<f64> {
        v.iter().map(|z| z.re).collect()
    }

    #[test]
    fn forward_examples() {
        let c = mirror_map(&KahlerPoint::real(&[0.5]).unwrap());
        assert_eq!(re(&c.c), vec![1.0, 1.5, 0.5]);

        let c = mirror_map(&KahlerPoint::real(&[0.5, 0.5]).unwrap());
        assert_eq!(re(&c.c), vec![1.0, 1.75, 0.875, 0.125]);

        let limit = product_coefficients(&[Complex64::new(1.0, 0.0)]);
        assert_eq!(re(&limit), vec![1.0, 2.0, 1.0]);
    }

    #[test]
    fn inverse_examples() {
        let q = inverse_mirror_map(&MirrorCoefficients::from_real(&[1.0, 1.5, 0.5])).unwrap();
        assert!((q.values()[0] - Complex64::new(0.5, 0.0)).norm() < 1e-14);

        let target = [0.5, 0.5];
        let c = mirror_map(&KahlerPoint::real(&target).unwrap());
        let back = inverse_mirror_map(&c).unwrap();
        for (a, b) in back.values().iter().zip(target) {
            assert!((a - Complex64::new(b, 0.0)).norm() / b < 1e-10);
        }
    }

    #[test]
    fn double_root_is_rejected() {
        let err = inverse_mirror_map(&MirrorCoefficients::from_real(&[1.0, 2.0, 1.0]));
        assert!(matches!(
            err,
            Err(MirrorError::RootSeparationFailure { .. })
        ));
    }

    #[test]
    fn unnormalized_is_rejected() {
        let err = inverse_mirror_map(&MirrorCoefficients::from_real(&[2.0, 3.0, 1.0]));
        assert!(matches!(err, Err(MirrorError::NotNormalized(..))));
    }

    #[test]
    fn complex_point_roundtrip() {
        let q = [
            Complex64::from_polar(0.4, 0.7),
            Complex64::from_polar(0.3, -1.1),
        ];
        let c = mirror_map(&KahlerPoint::complex(&q).unwrap());
        let back = inverse_mirror_map(&c).unwrap();
        for (a, b) in back.values().iter().zip(q) {
            assert!((a - b).norm() < 1e-10);
        }
    }

    #[test]
    fn kahler_point_validation() {
        assert!(KahlerPoint::real(&[0.0]).is_err());
        assert!(KahlerPoint::real(&[1.0]).is_err());
        assert!(KahlerPoint::real(&[f64::NAN]).is_err());
        assert_eq!(KahlerPoint::real(&[0.2, 0.3]).unwrap().m(), 3);
    }
}
