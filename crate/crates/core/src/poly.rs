//! Exact sparse multivariate polynomials over ℤ in the Kähler variables
//! `q_1, …, q_n`.
//!
//! Terms live in a `BTreeMap` keyed by exponent vector under graded
//! lexicographic order, so iteration, equality and printing are canonical.
//! Exponents are signed so that Laurent terms produced by deliberately broken
//! admissibility rules stay representable; everything built from the real rules
//! is an honest polynomial.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::{SerializeMap, SerializeSeq};
use serde::{Serialize, Serializer};

use crate::par::*;

/// Exponent vector `(e_1, …, e_n)` for the monomial `q_1^{e_1} ⋯ q_n^{e_n}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Exponent(pub Vec<i32>);

impl Exponent {
    pub fn zero(n: usize) -> Self {
        Exponent(vec![0; n])
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&e| e >= 0)
    }

    fn add(&self, other: &Exponent) -> Exponent {
        Exponent(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Exponent, BigInt>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        MultiPoly::monomial(Exponent::zero(nvars), BigInt::one())
    }

    pub fn monomial(exp: Exponent, coeff: BigInt) -> Self {
        let nvars = exp.0.len();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        MultiPoly { nvars, terms }
    }

    /// `q^e` with coefficient 1.
    pub fn q_power(exps: &[i32]) -> Self {
        MultiPoly::monomial(Exponent(exps.to_vec()), BigInt::one())
    }

    /// The variable `q_{idx+1}`.
    pub fn variable(nvars: usize, idx: usize) -> Self {
        let mut e = vec![0; nvars];
        e[idx] = 1;
        MultiPoly::q_power(&e)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical (graded lexicographic) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exp: &Exponent) -> BigInt {
        self.terms.get(exp).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, exp: Exponent, coeff: &BigInt) {
        assert_eq!(exp.0.len(), self.nvars, "exponent length mismatch");
        let slot = self.terms.entry(exp).or_default();
        *slot += coeff;
        if slot.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    /// All exponents are `≥ 0`.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(Exponent::is_nonnegative)
    }

    /// All coefficients are `≥ 0`.
    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// Value at `q = (1, …, 1)`: the sum of the coefficients.
    pub fn coefficient_sum(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn mul_monomial(&self, exp: &Exponent) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.add(exp), c.clone()))
                .collect(),
        }
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), &-c);
        }
        out
    }

    /// Exact product. The left operand is split into blocks that are
    /// multiplied independently and then merged; the merge is an exact sum into
    /// a sorted map, so the result does not depend on the split.
    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        const BLOCK: usize = 64;
        let left: Vec<(&Exponent, &BigInt)> = self.terms.iter().collect();
        let partials: Vec<BTreeMap<Exponent, BigInt>> = left
            .chunks(BLOCK)
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(|block| {
                let mut acc: BTreeMap<Exponent, BigInt> = BTreeMap::new();
                for (ea, ca) in block {
                    for (eb, cb) in &other.terms {
                        *acc.entry(ea.add(eb)).or_default() += *ca * cb;
                    }
                }
                acc
            })
            .collect();
        let mut terms: BTreeMap<Exponent, BigInt> = BTreeMap::new();
        for part in partials {
            for (e, c) in part {
                *terms.entry(e).or_default() += c;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        MultiPoly {
            nvars: self.nvars,
            terms,
        }
    }

    /// Numeric evaluation at a complex point.
    pub fn eval(&self, q: &[Complex64]) -> Complex64 {
        assert_eq!(q.len(), self.nvars, "point dimension mismatch");
        self.terms
            .iter()
            .map(|(e, c)| {
                let coeff = c.to_f64().unwrap_or(f64::INFINITY);
                e.0.iter()
                    .zip(q)
                    .fold(Complex64::new(coeff, 0.0), |acc, (&k, &x)| acc * x.powi(k))
            })
            .sum()
    }

    /// First exponent (in canonical order) where the two polynomials differ,
    /// with both coefficients.
    pub fn first_difference(&self, other: &MultiPoly) -> Option<(Exponent, BigInt, BigInt)> {
        let diff = self.sub(other);
        diff.terms
            .keys()
            .next()
            .map(|e| (e.clone(), self.coefficient(e), other.coefficient(e)))
    }
}

impl fmt::Display for MultiPoly {
    /// Human-readable form such as `q2 + q1*q2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            let vars: Vec<String> =
                e.0.iter()
                    .enumerate()
                    .filter(|(_, &p)| p != 0)
                    .map(|(i, &p)| match p {
                        1 => format!("q{}", i + 1),
                        _ => format!("q{}^{}", i + 1, p),
                    })
                    .collect();
            if vars.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&vars.join("*"))?;
            } else {
                write!(f, "{mag}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl Serialize for MultiPoly {
    /// `[{"exps": [...], "c": "<decimal>"}, ...]` in canonical order.
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        struct Term<'a>(&'a Exponent, &'a BigInt);
        impl Serialize for Term<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                let mut map = s.serialize_map(Some(2))?;
                map.serialize_entry("exps", &self.0 .0)?;
                map.serialize_entry("c", &self.1.to_string())?;
                map.end()
            }
        }
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (e, c) in &self.terms {
            seq.serialize_element(&Term(e, c))?;
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(i: usize) -> MultiPoly {
        MultiPoly::variable(2, i)
    }

    #[test]
    fn display_is_canonical() {
        let p = q(1).add(&q(0).mul(&q(1)));
        assert_eq!(p.to_string(), "q2 + q1*q2");
        let r = MultiPoly::one(2).sub(&q(0).mul(&q(0)).mul_monomial(&Exponent(vec![0, 3])));
        assert_eq!(r.to_string(), "1 - q1^2*q2^3");
        assert_eq!(MultiPoly::zero(2).to_string(), "0");
    }

    #[test]
    fn binomial_square() {
        let one_plus = MultiPoly::one(2).add(&q(0));
        let sq = one_plus.mul(&one_plus);
        assert_eq!(sq.coefficient(&Exponent(vec![1, 0])), BigInt::from(2));
        assert_eq!(sq.len(), 3);
        assert_eq!(sq.coefficient_sum(), BigInt::from(4));
    }

    #[test]
    fn cancellation_removes_terms() {
        let p = q(0).sub(&q(0));
        assert!(p.is_zero());
        assert_eq!(p, MultiPoly::zero(2));
    }

    #[test]
    fn json_shape() {
        let p = MultiPoly::one(2).add(&q(1));
        assert_eq!(
            serde_json::to_string(&p).unwrap(),
            r#"[{"exps":[0,0],"c":"1"},{"exps":[0,1],"c":"1"}]"#
        );
    }

    #[test]
    fn large_products_stay_exact() {
        // (1 + q1)^80 has central coefficient C(80, 40) > 2^64.
        let base = MultiPoly::one(1).add(&MultiPoly::variable(1, 0));
        let mut p = MultiPoly::one(1);
        for _ in 0..80 {
            p = p.mul(&base);
        }
        let expected: BigInt = "107507208733336176461620".parse().unwrap();
        assert_eq!(p.coefficient(&Exponent(vec![40])), expected);
    }

    fn arb_poly() -> impl Strategy<Value = MultiPoly> {
        prop::collection::vec((0i32..4, 0i32..4, -5i64..6), 0..8).prop_map(|ts| {
            let mut p = MultiPoly::zero(2);
            for (a, b, c) in ts {
                p.add_term(Exponent(vec![a, b]), &BigInt::from(c));
            }
            p
        })
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        }

        #[test]
        fn evaluation_is_a_ring_map(a in arb_poly(), b in arb_poly(), x in 0.1f64..0.9, y in 0.1f64..0.9) {
            let pt = [Complex64::new(x, 0.0), Complex64::new(y, 0.0)];
            let lhs = a.mul(&b).eval(&pt);
            let rhs = a.eval(&pt) * b.eval(&pt);
            prop_assert!((lhs - rhs).norm() < 1e-9 * (1.0 + rhs.norm()));
        }
    }
}
