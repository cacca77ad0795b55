//! Rank-2 lattice vectors and 2x2 integer matrices in arbitrary precision.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

/// An element of the lattice `N ≅ ℤ²` (or its dual `M`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticeVec {
    pub x: BigInt,
    pub y: BigInt,
}

impl LatticeVec {
    pub fn new(x: impl Into<BigInt>, y: impl Into<BigInt>) -> Self {
        LatticeVec {
            x: x.into(),
            y: y.into(),
        }
    }

    pub fn zero() -> Self {
        LatticeVec::new(0, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    /// `gcd(|x|, |y|) = 1`.
    pub fn is_primitive(&self) -> bool {
        self.x.gcd(&self.y).is_one()
    }

    /// The determinant `x₁y₂ − y₁x₂` of the matrix with columns `self`, `other`.
    pub fn det(&self, other: &LatticeVec) -> BigInt {
        &self.x * &other.y - &self.y * &other.x
    }

    /// The pairing `⟨self, other⟩ = x₁x₂ + y₁y₂`.
    pub fn dot(&self, other: &LatticeVec) -> BigInt {
        &self.x * &other.x + &self.y * &other.y
    }

    pub fn add(&self, other: &LatticeVec) -> LatticeVec {
        LatticeVec {
            x: &self.x + &other.x,
            y: &self.y + &other.y,
        }
    }

    pub fn neg(&self) -> LatticeVec {
        LatticeVec {
            x: -&self.x,
            y: -&self.y,
        }
    }

    pub fn scale(&self, k: &BigInt) -> LatticeVec {
        LatticeVec {
            x: &self.x * k,
            y: &self.y * k,
        }
    }

    /// If `self = k·other` for an integer `k`, returns `k`.
    pub fn multiple_of(&self, other: &LatticeVec) -> Option<BigInt> {
        if other.is_zero() || !self.det(other).is_zero() {
            return None;
        }
        let (num, den) = if !other.x.is_zero() {
            (&self.x, &other.x)
        } else {
            (&self.y, &other.y)
        };
        let (q, r) = num.div_rem(den);
        r.is_zero().then_some(q)
    }

    /// 0 for the half-plane `y > 0 or (y = 0, x > 0)`, 1 otherwise.
    fn half(&self) -> u8 {
        if self.y.is_positive() || (self.y.is_zero() && self.x.is_positive()) {
            0
        } else {
            1
        }
    }

    /// Counterclockwise angular order starting at the positive x-axis.
    pub fn ccw_cmp(&self, other: &LatticeVec) -> Ordering {
        self.half().cmp(&other.half()).then_with(|| {
            let d = self.det(other);
            if d.is_positive() {
                Ordering::Less
            } else if d.is_negative() {
                Ordering::Greater
            } else {
                Ordering::Equal
            }
        })
    }

    pub fn to_i64_pair(&self) -> Option<(i64, i64)> {
        Some((self.x.to_i64()?, self.y.to_i64()?))
    }
}

impl From<(i64, i64)> for LatticeVec {
    fn from((x, y): (i64, i64)) -> Self {
        LatticeVec::new(x, y)
    }
}

impl fmt::Display for LatticeVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// Serializes an integer as a JSON number when it fits in `i64`, otherwise as
/// a decimal string.
pub(crate) fn serialize_bigint<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    match v.to_i64() {
        Some(n) => s.serialize_i64(n),
        None => s.serialize_str(&v.to_string()),
    }
}

pub(crate) fn serialize_bigint_vec<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    struct Num<'a>(&'a BigInt);
    impl Serialize for Num<'_> {
        fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            serialize_bigint(self.0, s)
        }
    }
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&Num(x))?;
    }
    seq.end()
}

struct BigIntRepr(BigInt);

impl<'de> Deserialize<'de> for BigIntRepr {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = BigIntRepr;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an integer or a decimal string")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<BigIntRepr, E> {
                Ok(BigIntRepr(v.into()))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<BigIntRepr, E> {
                Ok(BigIntRepr(v.into()))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<BigIntRepr, E> {
                v.parse().map(BigIntRepr).map_err(E::custom)
            }
        }
        d.deserialize_any(V)
    }
}

impl Serialize for LatticeVec {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        struct Num<'a>(&'a BigInt);
        impl Serialize for Num<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                serialize_bigint(self.0, s)
            }
        }
        let mut seq = s.serialize_seq(Some(2))?;
        seq.serialize_element(&Num(&self.x))?;
        seq.serialize_element(&Num(&self.y))?;
        seq.end()
    }
}

impl<'de> Deserialize<'de> for LatticeVec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = LatticeVec;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a pair [x, y]")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<LatticeVec, A::Error> {
                let x: BigIntRepr = seq
                    .next_element()?
                    .ok_or_else(|| de::Error::invalid_length(0, &self))?;
                let y: BigIntRepr = seq
                    .next_element()?
                    .ok_or_else(|| de::Error::invalid_length(1, &self))?;
                if seq.next_element::<BigIntRepr>()?.is_some() {
                    return Err(de::Error::invalid_length(3, &self));
                }
                Ok(LatticeVec { x: x.0, y: y.0 })
            }
        }
        d.deserialize_seq(V)
    }
}

/// A 2x2 integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix2 {
    pub rows: [[BigInt; 2]; 2],
}

impl IntMatrix2 {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        IntMatrix2 {
            rows: [[a.into(), b.into()], [c.into(), d.into()]],
        }
    }

    pub fn identity() -> Self {
        IntMatrix2::new(1, 0, 0, 1)
    }

    /// Matrix whose columns are `c0` and `c1`.
    pub fn from_columns(c0: &LatticeVec, c1: &LatticeVec) -> Self {
        IntMatrix2 {
            rows: [[c0.x.clone(), c1.x.clone()], [c0.y.clone(), c1.y.clone()]],
        }
    }

    pub fn det(&self) -> BigInt {
        &self.rows[0][0] * &self.rows[1][1] - &self.rows[0][1] * &self.rows[1][0]
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().abs().is_one()
    }

    pub fn apply(&self, v: &LatticeVec) -> LatticeVec {
        LatticeVec {
            x: &self.rows[0][0] * &v.x + &self.rows[0][1] * &v.y,
            y: &self.rows[1][0] * &v.x + &self.rows[1][1] * &v.y,
        }
    }

    pub fn mul(&self, other: &IntMatrix2) -> IntMatrix2 {
        let r = |i: usize, j: usize| {
            &self.rows[i][0] * &other.rows[0][j] + &self.rows[i][1] * &other.rows[1][j]
        };
        IntMatrix2 {
            rows: [[r(0, 0), r(0, 1)], [r(1, 0), r(1, 1)]],
        }
    }

    /// Inverse over ℤ; `None` unless the determinant is ±1.
    pub fn inverse(&self) -> Option<IntMatrix2> {
        let det = self.det();
        if !det.abs().is_one() {
            return None;
        }
        let [[a, b], [c, d]] = &self.rows;
        // det = ±1, so dividing by det is multiplying by det.
        Some(IntMatrix2 {
            rows: [[d * &det, -b * &det], [-c * &det, a * &det]],
        })
    }

    /// Sum of absolute values of the entries.
    pub fn l1_norm(&self) -> BigInt {
        self.rows.iter().flatten().map(|e| e.abs()).sum()
    }
}

impl Serialize for IntMatrix2 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rows = [
            LatticeVec::new(self.rows[0][0].clone(), self.rows[0][1].clone()),
            LatticeVec::new(self.rows[1][0].clone(), self.rows[1][1].clone()),
        ];
        rows.serialize(s)
    }
}

/// Extended Euclid: `(g, a, b)` with `a·x + b·y = g = gcd(x, y) ≥ 0`.
pub fn extended_gcd(x: &BigInt, y: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = x.extended_gcd(y);
    (e.gcd, e.x, e.y)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: i64, y: i64) -> LatticeVec {
        LatticeVec::new(x, y)
    }

    #[test]
    fn primitive_and_det() {
        assert!(v(2, 1).is_primitive());
        assert!(!v(2, 2).is_primitive());
        assert!(!v(0, 0).is_primitive());
        assert!(v(0, -1).is_primitive());
        assert_eq!(v(1, 1).det(&v(2, 1)), BigInt::from(-1));
    }

    #[test]
    fn ccw_order_goes_around_once() {
        let mut vs = vec![v(0, -1), v(-1, 0), v(1, 1), v(1, 0), v(-1, -1), v(0, 1)];
        vs.sort_by(|a, b| a.ccw_cmp(b));
        assert_eq!(
            vs,
            vec![v(1, 0), v(1, 1), v(0, 1), v(-1, 0), v(-1, -1), v(0, -1)]
        );
    }

    #[test]
    fn multiple_of_exact() {
        assert_eq!(v(4, 2).multiple_of(&v(2, 1)), Some(BigInt::from(2)));
        assert_eq!(v(0, -3).multiple_of(&v(0, 1)), Some(BigInt::from(-3)));
        assert_eq!(v(3, 2).multiple_of(&v(2, 1)), None);
    }

    #[test]
    fn matrix_inverse_roundtrip() {
        let a = IntMatrix2::new(2, 1, 1, 1);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), IntMatrix2::identity());
        assert!(IntMatrix2::new(2, 0, 0, 1).inverse().is_none());
    }

    #[test]
    fn json_falls_back_to_strings_for_huge_entries() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let p = LatticeVec::new(big.clone(), -3);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, "[\"123456789012345678901234567890\",-3]");
        let back: LatticeVec = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }
}
