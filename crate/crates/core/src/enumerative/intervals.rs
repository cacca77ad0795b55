//! Greedy decomposition of a class into nested intervals of divisors.
//!
//! A center-`p` class is written as `Σ_{j=1}^{p} (D_j + … + D_{k_j})` with
//! `0 ≤ k_1 < … < k_p ≤ m−1`, the interval being empty when `k_j = j−1`. Each
//! such tuple is one term of the `z^p` coefficient of the product
//! `Π_i (1 + q_1⋯q_i z)`.

use serde::Serialize;

use super::admissible::check_shape;
use super::EnumerativeError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntervalDecomposition {
    /// `k_1 < … < k_p`.
    pub k: Vec<usize>,
}

impl IntervalDecomposition {
    /// Coefficients `s_1, …, s_{m-1}` of `Σ_j (D_j + … + D_{k_j})`.
    pub fn reconstruct(&self, m: usize) -> Vec<i32> {
        let mut s = vec![0; m.saturating_sub(1)];
        for (idx, &kj) in self.k.iter().enumerate() {
            let j = idx + 1;
            for slot in s.iter_mut().take(kj).skip(j - 1) {
                *slot += 1;
            }
        }
        s
    }
}

/// Runs the greedy strip with exactly `p = l` steps, `j = l, l−1, …, 1`.
///
/// At step `j`, `k_j` is the largest index with a nonzero residual coefficient
/// (`k_j = j−1` once the residual is zero) and `D_j + … + D_{k_j}` is removed.
/// Fails if an interval would start past its end, a residual goes negative, the
/// `k_j` are not strictly increasing, or something is left after `l` steps.
pub fn decompose_intervals(
    s: &[i32],
    l: usize,
    m: usize,
) -> Result<IntervalDecomposition, EnumerativeError> {
    check_shape(s, l, m)?;
    if s.iter().any(|&x| x < 0) {
        return Err(EnumerativeError::NegativeEntry);
    }
    let mut residual = s.to_vec();
    // filled from j = l down to j = 1
    let mut k = vec![0usize; l];

    for j in (1..=l).rev() {
        let step = l - j + 1;
        let fail = |residual: &[i32]| EnumerativeError::DecompositionFailed {
            step,
            residual: residual.to_vec(),
        };
        let kj = match residual.iter().rposition(|&x| x != 0) {
            None => j - 1,
            Some(pos) => {
                let kj = pos + 1;
                if kj < j {
                    return Err(fail(&residual));
                }
                for slot in &mut residual[j - 1..kj] {
                    *slot -= 1;
                }
                if residual.iter().any(|&x| x < 0) {
                    return Err(fail(&residual));
                }
                kj
            }
        };
        if j < l && kj >= k[j] {
            return Err(fail(&residual));
        }
        k[j - 1] = kj;
    }
    if residual.iter().any(|&x| x != 0) {
        return Err(EnumerativeError::DecompositionFailed {
            step: l + 1,
            residual,
        });
    }
    Ok(IntervalDecomposition { k })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_strip() {
        let d = decompose_intervals(&[1, 1], 1, 3).unwrap();
        assert_eq!(d.k, vec![2]);
        assert_eq!(d.reconstruct(3), vec![1, 1]);
    }

    #[test]
    fn zero_class_uses_empty_intervals() {
        let d = decompose_intervals(&[0, 0], 2, 3).unwrap();
        assert_eq!(d.k, vec![0, 1]);
        assert_eq!(d.reconstruct(3), vec![0, 0]);
    }

    #[test]
    fn non_admissible_fails() {
        // step 1 strips D_2 leaving (0,1,0); step 2 would strip D_1 + D_2 from it
        match decompose_intervals(&[0, 2, 0], 2, 4) {
            Err(EnumerativeError::DecompositionFailed { step, residual }) => {
                assert_eq!(step, 2);
                assert_eq!(residual, vec![-1, 0, 0]);
            }
            other => panic!("expected failure, got {other:?}"),
        }
    }

    #[test]
    fn leftover_residual_fails() {
        // center 1 can only remove one interval
        assert!(decompose_intervals(&[1, 2, 1], 1, 4).is_err());
        // interval would have to start at D_2 but s_1 is nonzero
        assert!(decompose_intervals(&[1, 0], 2, 3).is_err());
    }

    #[test]
    fn nested_intervals() {
        // (D_2 + D_3) + (D_1 + D_2) for m = 5, p = 2
        let d = decompose_intervals(&[1, 2, 1, 0], 2, 5).unwrap();
        assert_eq!(d.k, vec![2, 3]);
        assert_eq!(d.reconstruct(5), vec![1, 2, 1, 0]);
    }
}
