//! The admissibility criterion for open Gromov-Witten invariants of `X_{Σ_m}`.

use serde::Serialize;

use super::{Condition, Conditions, EnumerativeError};
use crate::par::*;

/// A sequence `(s_1, …, s_{m-1})` admissible with center `l`, i.e. a class
/// `α = Σ s_k [D_k]` with `n_{β_l + α} = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct AdmissibleSequence {
    pub m: usize,
    pub center: usize,
    pub s: Vec<i32>,
}

impl AdmissibleSequence {
    pub fn is_zero(&self) -> bool {
        self.s.iter().all(|&x| x == 0)
    }
}

pub(crate) fn check_shape(s: &[i32], l: usize, m: usize) -> Result<(), EnumerativeError> {
    if m == 0 {
        return Err(EnumerativeError::InvalidM(m));
    }
    if s.len() + 1 != m {
        return Err(EnumerativeError::LengthMismatch {
            expected: m - 1,
            got: s.len(),
        });
    }
    if l < 1 || l > m {
        return Err(EnumerativeError::CenterOutOfRange { l, m });
    }
    Ok(())
}

/// Conditions (1)–(4) with every rule switched on.
pub fn is_admissible(s: &[i32], l: usize, m: usize) -> Result<bool, EnumerativeError> {
    is_admissible_with(s, l, m, Conditions::ALL)
}

/// Evaluates the enabled subset of the four conditions:
///
/// 1. `s_k ≥ 0`;
/// 2. `s_i ≤ s_{i+1} ≤ s_i + 1` for `i < l`;
/// 3. `s_i ≥ s_{i+1} ≥ s_i − 1` for `i ≥ l`;
/// 4. `s_1 ≤ 1` and `s_{m-1} ≤ 1`.
///
/// Conditions (2) and (3) run over the pairs `(s_i, s_{i+1})`, `1 ≤ i ≤ m−2`.
/// For the center `l = m` condition (2) also covers `i = m−1` against the
/// boundary value `s_m = 0`; this is the only place the center `m` differs from
/// `m−1`, and it makes the zero class the unique center-`m` sequence.
pub fn is_admissible_with(
    s: &[i32],
    l: usize,
    m: usize,
    rules: Conditions,
) -> Result<bool, EnumerativeError> {
    check_shape(s, l, m)?;
    Ok(satisfies(s, l, m, rules))
}

pub(crate) fn satisfies(s: &[i32], l: usize, m: usize, rules: Conditions) -> bool {
    // 1-based access: at(i) = s_i
    let at = |i: usize| s[i - 1];

    if rules.has(Condition::Nonnegative) && s.iter().any(|&x| x < 0) {
        return false;
    }
    for i in 1..m.saturating_sub(1) {
        let (a, b) = (at(i), at(i + 1));
        let ok = if i < l {
            !rules.has(Condition::Ascending) || (a <= b && b <= a + 1)
        } else {
            !rules.has(Condition::Descending) || (a >= b && b >= a - 1)
        };
        if !ok {
            return false;
        }
    }
    if l == m && m >= 2 && rules.has(Condition::Ascending) {
        let a = at(m - 1);
        if !(a <= 0 && 0 <= a + 1) {
            return false;
        }
    }
    if rules.has(Condition::Boundary) && m >= 2 && (at(1) > 1 || at(m - 1) > 1) {
        return false;
    }
    true
}

/// `n_{β_l + α}` for `α = Σ s_k [D_k]`: 1 when admissible with center `l`, else 0.
/// Only centers `1 ≤ l ≤ m−1` are accepted.
pub fn open_gw(m: usize, l: usize, alpha: &[i32]) -> Result<u8, EnumerativeError> {
    if l < 1 || l + 1 > m {
        return Err(EnumerativeError::CenterOutOfRange { l, m });
    }
    Ok(u8::from(is_admissible(alpha, l, m)?))
}

/// Largest value any admissible sequence takes at position `k`.
///
/// Condition (4) gives `s_1 ≤ 1`; condition (2) lets the sequence climb by at
/// most 1 per step, condition (3) lets it fall by at most 1 per step, and
/// condition (4) pins `s_{m-1} ≤ 1`. Hence `s_k ≤ k` from the left and
/// `s_k ≤ m−k` from the right.
pub fn position_bound(k: usize, m: usize) -> i32 {
    k.min(m - k) as i32
}

/// All sequences admissible with center `l`, in lexicographic order.
pub fn enumerate_admissible(
    m: usize,
    l: usize,
) -> Result<Vec<AdmissibleSequence>, EnumerativeError> {
    if m == 0 {
        return Err(EnumerativeError::InvalidM(m));
    }
    if l < 1 || l > m {
        return Err(EnumerativeError::CenterOutOfRange { l, m });
    }
    let bounds: Vec<(i32, i32)> = (1..m).map(|k| (0, position_bound(k, m))).collect();
    Ok(scan_box(m, l, &bounds, Conditions::ALL))
}

/// Enumerates with a subset of the rules over the box `[lo, hi]^(m-1)`, needed
/// because dropping a rule can make the admissible set infinite.
pub fn enumerate_in_box(
    m: usize,
    l: usize,
    lo: i32,
    hi: i32,
    rules: Conditions,
) -> Result<Vec<AdmissibleSequence>, EnumerativeError> {
    if m == 0 {
        return Err(EnumerativeError::InvalidM(m));
    }
    if l < 1 || l > m {
        return Err(EnumerativeError::CenterOutOfRange { l, m });
    }
    let bounds = vec![(lo, hi); m - 1];
    Ok(scan_box(m, l, &bounds, rules))
}

/// Number of points of the box, and the point with a given mixed-radix index
/// (last coordinate fastest, so index order is lexicographic order).
pub(crate) struct BoxIndex<'a> {
    bounds: &'a [(i32, i32)],
    pub(crate) size: usize,
}

impl<'a> BoxIndex<'a> {
    pub(crate) fn new(bounds: &'a [(i32, i32)]) -> Self {
        let size = bounds
            .iter()
            .map(|&(lo, hi)| (hi - lo + 1).max(0) as usize)
            .product();
        BoxIndex { bounds, size }
    }

    pub(crate) fn point(&self, mut idx: usize) -> Vec<i32> {
        let mut s = vec![0; self.bounds.len()];
        for (k, &(lo, hi)) in self.bounds.iter().enumerate().rev() {
            let w = (hi - lo + 1) as usize;
            s[k] = lo + (idx % w) as i32;
            idx /= w;
        }
        s
    }
}

fn scan_box(
    m: usize,
    l: usize,
    bounds: &[(i32, i32)],
    rules: Conditions,
) -> Vec<AdmissibleSequence> {
    let index = BoxIndex::new(bounds);
    (0..index.size)
        .into_par_iter()
        .filter_map(|i| {
            let s = index.point(i);
            satisfies(&s, l, m, rules).then_some(AdmissibleSequence { m, center: l, s })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn criterion_examples() {
        assert!(is_admissible(&[1, 1, 2, 1], 3, 5).unwrap());
        assert!(!is_admissible(&[0, 2, 0], 2, 4).unwrap());
        for m in 1..7 {
            for l in 1..=m {
                assert!(is_admissible(&vec![0; m - 1], l, m).unwrap());
            }
        }
    }

    #[test]
    fn shape_errors() {
        assert!(matches!(
            is_admissible(&[0, 0], 1, 4),
            Err(EnumerativeError::LengthMismatch {
                expected: 3,
                got: 2
            })
        ));
        assert!(matches!(
            is_admissible(&[0, 0], 0, 3),
            Err(EnumerativeError::CenterOutOfRange { .. })
        ));
        assert!(matches!(
            is_admissible(&[0, 0], 4, 3),
            Err(EnumerativeError::CenterOutOfRange { .. })
        ));
    }

    #[test]
    fn invariant_values() {
        assert_eq!(open_gw(2, 1, &[1]).unwrap(), 1);
        assert_eq!(open_gw(3, 1, &[0, 1]).unwrap(), 0);
        assert_eq!(open_gw(4, 2, &[0, 0, 0]).unwrap(), 1);
        assert!(matches!(
            open_gw(3, 3, &[0, 0]),
            Err(EnumerativeError::CenterOutOfRange { .. })
        ));
    }

    #[test]
    fn small_enumerations() {
        let seqs = |m, l| -> Vec<Vec<i32>> {
            enumerate_admissible(m, l)
                .unwrap()
                .into_iter()
                .map(|a| a.s)
                .collect()
        };
        assert_eq!(seqs(3, 1), vec![vec![0, 0], vec![1, 0], vec![1, 1]]);
        assert_eq!(seqs(3, 2), vec![vec![0, 0], vec![0, 1], vec![1, 1]]);
        assert_eq!(seqs(2, 1), vec![vec![0], vec![1]]);
        assert_eq!(seqs(2, 2), vec![vec![0]]);
        assert_eq!(seqs(1, 1), vec![Vec::<i32>::new()]);
    }

    #[test]
    fn center_m_has_only_the_zero_class() {
        for m in 1..9 {
            let all = enumerate_admissible(m, m).unwrap();
            assert_eq!(all.len(), 1);
            assert!(all[0].is_zero());
        }
    }

    #[test]
    fn box_index_is_lexicographic() {
        let bounds = [(0, 1), (-1, 1)];
        let b = BoxIndex::new(&bounds);
        let pts: Vec<_> = (0..b.size).map(|i| b.point(i)).collect();
        let mut sorted = pts.clone();
        sorted.sort();
        assert_eq!(pts, sorted);
        assert_eq!(pts.len(), 6);
    }
}
