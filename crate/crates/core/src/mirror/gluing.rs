//! The gluing polynomial `g(z)` of the SYZ mirror `uv = g(z)`, built from the
//! disk invariants and, independently, from the product of linear factors.

use num_bigint::BigInt;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::enumerative::{delta_series_with, Conditions};
use crate::par::*;
use crate::poly::{Exponent, MultiPoly};

use super::MirrorError;

/// `g(z) = Σ_{i=0}^{m} coeff[i] z^i` with coefficients in `ℤ[q_1, …, q_{m-1}]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GluingPolynomial {
    pub m: usize,
    pub coeff: Vec<MultiPoly>,
}

impl Serialize for GluingPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(2))?;
        map.serialize_entry("m", &self.m)?;
        map.serialize_entry("coeff", &self.coeff)?;
        map.end()
    }
}

/// `Π_{j=1}^{i-1} q_j^{i-j}` as an exponent vector on `m−1` variables.
fn prefactor(m: usize, i: usize) -> Exponent {
    Exponent(
        (1..m)
            .map(|j| if j < i { (i - j) as i32 } else { 0 })
            .collect(),
    )
}

/// `g` from the invariants: `coeff[i] = (Π_{j<i} q_j^{i-j})(1 + δ_i)`.
pub fn g_from_invariants(m: usize) -> Result<GluingPolynomial, MirrorError> {
    g_from_invariants_with(m, Conditions::ALL)
}

/// [`g_from_invariants`] with some admissibility rules switched off.
pub fn g_from_invariants_with(
    m: usize,
    rules: Conditions,
) -> Result<GluingPolynomial, MirrorError> {
    if m == 0 {
        return Err(MirrorError::InvalidM(m));
    }
    let nvars = m - 1;
    let rest: Vec<MultiPoly> = (1..=m)
        .into_par_iter()
        .map(|i| {
            let delta = delta_series_with(m, i, rules)?;
            Ok(MultiPoly::one(nvars)
                .add(&delta)
                .mul_monomial(&prefactor(m, i)))
        })
        .collect::<Result<_, MirrorError>>()?;
    let mut coeff = Vec::with_capacity(m + 1);
    coeff.push(MultiPoly::one(nvars));
    coeff.extend(rest);
    Ok(GluingPolynomial { m, coeff })
}

/// `g` from the product `(1+z)(1+q_1 z)(1+q_1q_2 z)⋯(1+q_1⋯q_{m-1} z)`.
pub fn g_from_product(m: usize) -> Result<GluingPolynomial, MirrorError> {
    if m == 0 {
        return Err(MirrorError::InvalidM(m));
    }
    let nvars = m - 1;
    let mut coeff = vec![MultiPoly::one(nvars)];
    for i in 0..m {
        // factor 1 + (q_1⋯q_i) z
        let slope: Vec<i32> = (1..m).map(|j| i32::from(j <= i)).collect();
        let slope = MultiPoly::q_power(&slope);
        let mut next = vec![MultiPoly::zero(nvars); coeff.len() + 1];
        for (k, c) in coeff.iter().enumerate() {
            next[k] = next[k].add(c);
            next[k + 1] = next[k + 1].add(&c.mul(&slope));
        }
        coeff = next;
    }
    Ok(GluingPolynomial { m, coeff })
}

/// First coefficient where the two constructions disagree.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("z^{power} coefficient differs at q^{exponent:?}: invariants give {from_invariants}, product gives {from_product}")]
pub struct IdentityMismatch {
    pub m: usize,
    pub power: usize,
    pub exponent: Vec<i32>,
    pub from_invariants: BigInt,
    pub from_product: BigInt,
}

/// Outcome of comparing the two constructions for one `m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    pub m: usize,
    /// Number of `(power, exponent)` terms compared.
    pub terms: usize,
    pub mismatch: Option<IdentityMismatch>,
}

impl IdentityReport {
    pub fn holds(&self) -> bool {
        self.mismatch.is_none()
    }
}

/// Compares the two constructions coefficient by coefficient, exactly.
pub fn verify_identity(m: usize) -> Result<IdentityReport, MirrorError> {
    verify_identity_with(m, Conditions::ALL)
}

pub fn verify_identity_with(m: usize, rules: Conditions) -> Result<IdentityReport, MirrorError> {
    let a = g_from_invariants_with(m, rules)?;
    let b = g_from_product(m)?;
    let terms = b.coeff.iter().map(MultiPoly::len).sum();
    let mismatch = a
        .coeff
        .iter()
        .zip(&b.coeff)
        .enumerate()
        .find_map(|(power, (ca, cb))| {
            ca.first_difference(cb)
                .map(|(exp, fi, fp)| IdentityMismatch {
                    m,
                    power,
                    exponent: exp.0,
                    from_invariants: fi,
                    from_product: fp,
                })
        });
    Ok(IdentityReport { m, terms, mismatch })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn poly_str(g: &GluingPolynomial) -> Vec<String> {
        g.coeff.iter().map(|c| c.to_string()).collect()
    }

    #[test]
    fn m_two_both_routes() {
        let expected = vec!["1", "1 + q1", "q1"];
        assert_eq!(poly_str(&g_from_invariants(2).unwrap()), expected);
        assert_eq!(poly_str(&g_from_product(2).unwrap()), expected);
    }

    #[test]
    fn m_one_is_one_plus_z() {
        assert_eq!(poly_str(&g_from_invariants(1).unwrap()), vec!["1", "1"]);
        assert_eq!(poly_str(&g_from_product(1).unwrap()), vec!["1", "1"]);
        assert!(verify_identity(1).unwrap().holds());
    }

    #[test]
    fn m_three_coefficients() {
        let g = g_from_invariants(3).unwrap();
        let expected = MultiPoly::q_power(&[1, 0])
            .add(&MultiPoly::q_power(&[1, 1]))
            .add(&MultiPoly::q_power(&[2, 1]));
        assert_eq!(g.coeff[2], expected);
        let p = g_from_product(3).unwrap();
        assert_eq!(p.coeff[3], MultiPoly::q_power(&[2, 1]));
    }

    #[test]
    fn q_equal_one_gives_binomials() {
        for m in 1..8 {
            let g = g_from_product(m).unwrap();
            for (i, c) in g.coeff.iter().enumerate() {
                let binom = (0..i).fold(BigInt::one(), |acc, k| acc * (m - k) / (k + 1));
                assert_eq!(c.coefficient_sum(), binom, "m={m} i={i}");
            }
        }
    }

    #[test]
    fn dropping_boundary_rule_breaks_m_three() {
        let rules = Conditions::ALL.without(crate::enumerative::Condition::Boundary);
        let res = verify_identity_with(3, rules).unwrap();
        let mm = res.mismatch.expect("mutation must be detected");
        assert_eq!(mm.power, 1);
    }

    #[test]
    fn json_has_decimal_strings() {
        let s = serde_json::to_string(&g_from_product(2).unwrap()).unwrap();
        assert_eq!(
            s,
            r#"{"m":2,"coeff":[[{"exps":[0],"c":"1"}],[{"exps":[0],"c":"1"},{"exps":[1],"c":"1"}],[{"exps":[1],"c":"1"}]]}"#
        );
    }
}
