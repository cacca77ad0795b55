//! Roots of complex polynomials via companion-matrix eigenvalues.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::MirrorError;

/// `Σ c_i z^i` and its derivative at `z`, by Horner.
pub fn horner(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// All roots of `Σ_{i=0}^{n} c_i z^i`, `c_n ≠ 0`, in no particular order.
///
/// Eigenvalues of the companion matrix give the starting values; a few Newton
/// steps on the original polynomial then remove most of the eigensolver's
/// backward error.
pub fn polynomial_roots(coeffs: &[Complex64]) -> Result<Vec<Complex64>, MirrorError> {
    let n = coeffs
        .iter()
        .rposition(|c| c.norm() > 0.0)
        .ok_or(MirrorError::ZeroPolynomial)?;
    if n == 0 {
        return Ok(Vec::new());
    }
    let lead = coeffs[n];
    let mut comp = DMatrix::<Complex64>::zeros(n, n);
    for j in 0..n {
        comp[(0, j)] = -coeffs[n - 1 - j] / lead;
    }
    for i in 1..n {
        comp[(i, i - 1)] = Complex64::new(1.0, 0.0);
    }
    let eig = comp
        .schur()
        .eigenvalues()
        .ok_or(MirrorError::EigenSolverFailed)?;

    let poly = &coeffs[..=n];
    let roots = eig
        .iter()
        .map(|&r0| {
            let mut r = r0;
            for _ in 0..4 {
                let (p, dp) = horner(poly, r);
                if dp.norm() == 0.0 {
                    break;
                }
                let step = p / dp;
                let next = r - step;
                if !next.re.is_finite() || !next.im.is_finite() {
                    break;
                }
                // only accept steps that reduce the residual
                if horner(poly, next).0.norm() > p.norm() {
                    break;
                }
                r = next;
            }
            r
        })
        .collect();
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn quadratic_matches_formula() {
        // 1 + 1.5 z + 0.5 z² = 0.5 (z + 1)(z + 2)
        let mut r = polynomial_roots(&[c(1.0), c(1.5), c(0.5)]).unwrap();
        r.sort_by(|a, b| a.norm().partial_cmp(&b.norm()).unwrap());
        assert!((r[0] - c(-1.0)).norm() < 1e-14);
        assert!((r[1] - c(-2.0)).norm() < 1e-14);
    }

    #[test]
    fn complex_roots() {
        // z² + 1
        let r = polynomial_roots(&[c(1.0), c(0.0), c(1.0)]).unwrap();
        for z in r {
            assert!((z.norm() - 1.0).abs() < 1e-14);
            assert!(z.re.abs() < 1e-14);
        }
    }

    #[test]
    fn trailing_zero_coefficients_are_ignored() {
        let r = polynomial_roots(&[c(-2.0), c(1.0), c(0.0)]).unwrap();
        assert_eq!(r.len(), 1);
        assert!((r[0] - c(2.0)).norm() < 1e-14);
        assert!(polynomial_roots(&[c(0.0), c(0.0)]).is_err());
    }
}
