//! Two-dimensional fans, the Calabi-Yau family `Σ_m`, and intersection data.
//!
//! Rays are stored in clockwise angular order, which is the labelling used for
//! `Σ_m`: `v_i = (i, 1)` for `i = 0..=m`. Non-complete fans start right after
//! their open side; complete fans keep the rotation of the input.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::vector::{extended_gcd, serialize_bigint_vec, IntMatrix2, LatticeVec};
use super::FanError;

/// A simplicial fan in `N_ℝ ≅ ℝ²`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fan2D {
    rays: Vec<LatticeVec>,
    complete: bool,
}

#[derive(Deserialize)]
struct RawFan {
    rays: Vec<LatticeVec>,
    #[serde(default)]
    #[allow(dead_code)]
    complete: Option<bool>,
}

impl<'de> Deserialize<'de> for Fan2D {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = RawFan::deserialize(d)?;
        Fan2D::from_rays(raw.rays).map_err(serde::de::Error::custom)
    }
}

impl Fan2D {
    /// Builds a fan from primitive, pairwise distinct rays given in any order.
    /// Completeness is detected from the rays: the fan is complete when every
    /// clockwise gap between consecutive rays is below a half-turn.
    pub fn from_rays(rays: Vec<LatticeVec>) -> Result<Fan2D, FanError> {
        if rays.is_empty() {
            return Err(FanError::EmptyFan);
        }
        for r in &rays {
            if !r.is_primitive() {
                return Err(FanError::NonPrimitive(r.clone()));
            }
        }
        let first = rays[0].clone();
        let mut sorted = rays;
        // clockwise = reversed counterclockwise
        sorted.sort_by(|a, b| b.ccw_cmp(a));
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(FanError::DuplicateRay(w[0].clone()));
        }
        let n = sorted.len();
        if n == 1 {
            return Ok(Fan2D {
                rays: sorted,
                complete: false,
            });
        }

        // A clockwise gap from a to b is at least a half-turn iff det(a, b) ≥ 0.
        let open: Vec<usize> = (0..n)
            .filter(|&i| !sorted[i].det(&sorted[(i + 1) % n]).is_negative())
            .collect();
        match open.len() {
            0 => {
                let start = sorted.iter().position(|r| *r == first).unwrap_or(0);
                sorted.rotate_left(start);
                Ok(Fan2D {
                    rays: sorted,
                    complete: true,
                })
            }
            1 => {
                sorted.rotate_left((open[0] + 1) % n);
                Ok(Fan2D {
                    rays: sorted,
                    complete: false,
                })
            }
            _ => {
                let i = open[0];
                Err(FanError::NonSimplicial(Box::new((
                    sorted[i].clone(),
                    sorted[(i + 1) % n].clone(),
                ))))
            }
        }
    }

    pub fn rays(&self) -> &[LatticeVec] {
        &self.rays
    }

    pub fn len(&self) -> usize {
        self.rays.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rays.is_empty()
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Index pairs `(i, i+1)` spanning the two-dimensional cones.
    pub fn cones(&self) -> Vec<(usize, usize)> {
        let n = self.rays.len();
        if self.complete {
            (0..n).map(|i| (i, (i + 1) % n)).collect()
        } else {
            (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect()
        }
    }

    /// Every two-dimensional cone is generated by a lattice basis.
    pub fn is_smooth(&self) -> bool {
        self.cones()
            .iter()
            .all(|&(a, b)| self.rays[a].det(&self.rays[b]).abs().is_one())
    }

    /// Applies a linear map to every ray and rebuilds the fan.
    pub fn transform(&self, a: &IntMatrix2) -> Result<Fan2D, FanError> {
        if !a.is_unimodular() {
            return Err(FanError::NotUnimodular);
        }
        Fan2D::from_rays(self.rays.iter().map(|r| a.apply(r)).collect())
    }

    /// Angular neighbours of ray `i`, if it has two.
    fn neighbours(&self, i: usize) -> Option<(usize, usize)> {
        let n = self.rays.len();
        if i >= n {
            return None;
        }
        if self.complete {
            Some(((i + n - 1) % n, (i + 1) % n))
        } else if i >= 1 && i + 1 < n {
            Some((i - 1, i + 1))
        } else {
            None
        }
    }
}

/// The fan `Σ_m` with rays `(0,1), (1,1), …, (m,1)`.
pub fn build_cy_fan(m: i64) -> Result<Fan2D, FanError> {
    if m < 0 {
        return Err(FanError::NegativeM(m));
    }
    Ok(Fan2D {
        rays: (0..=m).map(|i| LatticeVec::new(i, 1)).collect(),
        complete: false,
    })
}

/// Finds `ν ∈ M` with `⟨ν, v⟩ = 1` for every ray.
pub fn is_calabi_yau(fan: &Fan2D) -> Result<LatticeVec, FanError> {
    let rays = fan.rays();
    let a = rays.first().ok_or(FanError::EmptyFan)?;
    let nu = match rays.iter().find(|b| !a.det(b).is_zero()) {
        Some(b) => {
            // Solve ⟨ν, a⟩ = ⟨ν, b⟩ = 1 by Cramer's rule.
            let det = a.det(b);
            let (nx, rx) = (&b.y - &a.y).div_rem(&det);
            let (ny, ry) = (&a.x - &b.x).div_rem(&det);
            if !rx.is_zero() || !ry.is_zero() {
                return Err(FanError::NotCalabiYau);
            }
            LatticeVec::new(nx, ny)
        }
        None => {
            let (g, p, q) = extended_gcd(&a.x, &a.y);
            if !g.is_one() {
                return Err(FanError::NonPrimitive(a.clone()));
            }
            LatticeVec::new(p, q)
        }
    };
    if rays.iter().all(|v| nu.dot(v).is_one()) {
        Ok(nu)
    } else {
        Err(FanError::NotCalabiYau)
    }
}

/// Result of normalizing a Calabi-Yau fan to `Σ_m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub m: usize,
    /// Unimodular `A` with `A·v_i = (i, 1)` for the rays in chain order.
    pub transform: IntMatrix2,
    /// The Calabi-Yau witness of the input fan.
    pub nu: LatticeVec,
}

/// Identifies a smooth toric Calabi-Yau surface with some `X_{Σ_m}`.
///
/// The normalizing matrix sends the end ray `v_0` of the chain to `(0,1)` and
/// its neighbour `v_1` to `(1,1)`. Either end of the chain can play `v_0`; the
/// candidate with the smaller entries is returned, ties going to determinant
/// `+1`.
pub fn classify(fan: &Fan2D) -> Result<Classification, FanError> {
    let nu = is_calabi_yau(fan)?;
    let rays = fan.rays();
    let m = rays.len() - 1;

    if m == 0 {
        // Complete {v_0} to a basis {w, v_0} with det(w, v_0) = 1.
        let v0 = &rays[0];
        let (_, p, q) = extended_gcd(&v0.y, &(-&v0.x));
        let w = LatticeVec::new(p, q);
        let basis = IntMatrix2::from_columns(&w, v0);
        let transform = basis.inverse().ok_or(FanError::NotSmooth)?;
        return Ok(Classification { m, transform, nu });
    }

    let target = IntMatrix2::from_columns(&LatticeVec::new(0, 1), &LatticeVec::new(1, 1));
    let forward: Vec<&LatticeVec> = rays.iter().collect();
    let backward: Vec<&LatticeVec> = rays.iter().rev().collect();

    let mut candidates = Vec::with_capacity(2);
    for chain in [forward, backward] {
        let basis = IntMatrix2::from_columns(chain[0], chain[1]);
        let Some(inv) = basis.inverse() else {
            continue;
        };
        let a = target.mul(&inv);
        let hits = chain
            .iter()
            .enumerate()
            .all(|(i, v)| a.apply(v) == LatticeVec::new(i as i64, 1));
        if hits {
            candidates.push(a);
        }
    }
    candidates.sort_by(|a, b| {
        a.l1_norm()
            .cmp(&b.l1_norm())
            .then_with(|| b.det().cmp(&a.det()))
    });
    let transform = candidates.into_iter().next().ok_or(FanError::NotSmooth)?;
    Ok(Classification { m, transform, nu })
}

/// The integer `a = D_i·D_i`, from `v_{i-1} + v_{i+1} = −a·v_i`.
pub fn self_intersection(fan: &Fan2D, i: usize) -> Result<BigInt, FanError> {
    let (prev, next) = fan.neighbours(i).ok_or(FanError::BoundaryRay(i))?;
    let rays = fan.rays();
    let sum = rays[prev].add(&rays[next]);
    sum.multiple_of(&rays[i])
        .map(|k| -k)
        .ok_or(FanError::NonProportional(i))
}

/// The toric compactification of `X_{Σ_m}` along `v_l`: adds `(1,0)`, `(−1,0)`
/// and `v_∞ = −v_l`.
///
/// Ray order (clockwise): `(0,1), …, (m,1), (1,0), −v_l, (−1,0)`, so `D_i` keeps
/// index `i` and `D_∞` has index `m + 2`.
pub fn compactify(m: i64, l: i64) -> Result<Fan2D, FanError> {
    if m < 1 || l < 1 || l > m - 1 {
        return Err(FanError::CenterOutOfRange { m, l });
    }
    let mut rays: Vec<LatticeVec> = (0..=m).map(|i| LatticeVec::new(i, 1)).collect();
    rays.push(LatticeVec::new(1, 0));
    rays.push(LatticeVec::new(-l, -1));
    rays.push(LatticeVec::new(-1, 0));
    Fan2D::from_rays(rays)
}

/// Index of `D_∞` in [`compactify`]'s output.
pub fn infinity_index(m: usize) -> usize {
    m + 2
}

/// The pairings prescribed for the class `h`: `h·D_l = h·D_∞ = 1`, all others 0.
pub fn h_class_targets(m: usize, l: usize) -> BTreeMap<usize, BigInt> {
    BTreeMap::from([(l, BigInt::one()), (infinity_index(m), BigInt::one())])
}

/// A formal sum `Σ a_j D_j` of toric divisors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivisorClass {
    #[serde(serialize_with = "serialize_bigint_vec")]
    pub coefficients: Vec<BigInt>,
}

impl DivisorClass {
    pub fn single(n_rays: usize, j: usize) -> Self {
        let mut coefficients = vec![BigInt::zero(); n_rays];
        coefficients[j] = BigInt::one();
        DivisorClass { coefficients }
    }

    /// The principal divisor `Σ ⟨ν, v_j⟩ D_j`.
    pub fn principal(fan: &Fan2D, nu: &LatticeVec) -> Self {
        DivisorClass {
            coefficients: fan.rays().iter().map(|v| nu.dot(v)).collect(),
        }
    }

    /// Whether the two classes differ by a principal divisor.
    pub fn linearly_equivalent(&self, other: &DivisorClass, fan: &Fan2D) -> bool {
        let rays = fan.rays();
        if self.coefficients.len() != rays.len() || other.coefficients.len() != rays.len() {
            return false;
        }
        let diff: Vec<BigInt> = self
            .coefficients
            .iter()
            .zip(&other.coefficients)
            .map(|(a, b)| a - b)
            .collect();
        let a = &rays[0];
        let nu = match rays.iter().position(|b| !a.det(b).is_zero()) {
            Some(jb) => {
                let b = &rays[jb];
                let det = a.det(b);
                let nx = &diff[0] * &b.y - &diff[jb] * &a.y;
                let ny = &diff[jb] * &a.x - &diff[0] * &b.x;
                let (nx, rx) = nx.div_rem(&det);
                let (ny, ry) = ny.div_rem(&det);
                if !rx.is_zero() || !ry.is_zero() {
                    return false;
                }
                LatticeVec::new(nx, ny)
            }
            None => {
                // A single ray: ν·v_0 = diff_0 always solvable for primitive v_0.
                return diff.len() == 1;
            }
        };
        DivisorClass::principal(fan, &nu).coefficients == diff
    }
}

/// A curve class recorded through its pairings `c·D_j` with every toric divisor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurveClass {
    #[serde(serialize_with = "serialize_bigint_vec")]
    pub pairings: Vec<BigInt>,
}

impl CurveClass {
    pub fn intersect(&self, d: &DivisorClass) -> BigInt {
        self.pairings
            .iter()
            .zip(&d.coefficients)
            .map(|(a, b)| a * b)
            .sum()
    }
}

/// Builds the curve class with the given pairings (unlisted rays pair to 0),
/// after checking `Σ_j ⟨ν, v_j⟩ t_j = 0` for `ν = (1,0), (0,1)`.
pub fn solve_curve_class(
    fan: &Fan2D,
    targets: &BTreeMap<usize, BigInt>,
) -> Result<CurveClass, FanError> {
    if !fan.is_complete() {
        return Err(FanError::NotComplete);
    }
    if !fan.is_smooth() {
        return Err(FanError::NotSmooth);
    }
    let n = fan.len();
    let mut pairings = vec![BigInt::zero(); n];
    for (&j, t) in targets {
        if j >= n {
            return Err(FanError::RayIndexOutOfRange(j));
        }
        pairings[j] = t.clone();
    }
    for nu in [LatticeVec::new(1, 0), LatticeVec::new(0, 1)] {
        let total: BigInt = fan
            .rays()
            .iter()
            .zip(&pairings)
            .map(|(v, t)| nu.dot(v) * t)
            .sum();
        if !total.is_zero() {
            return Err(FanError::Inconsistent { nu, total });
        }
    }
    Ok(CurveClass { pairings })
}
