//! Moment polytopes of `X_{Σ_m}` and the Kähler parameters they carry.

use serde::Serialize;

use super::{FanError, LatticeVec};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Facet {
    pub normal: LatticeVec,
    pub offset: f64,
}

/// `P = {x : ⟨v_j, x⟩ ≥ c_j}` for the rays `v_j = (j, 1)` of `Σ_m`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MomentPolytope {
    pub facets: Vec<Facet>,
    /// `vertices[i-1]` is the corner `T_{i-1,i}` where facets `i-1` and `i` meet.
    pub vertices: Vec<[f64; 2]>,
}

impl MomentPolytope {
    pub fn m(&self) -> usize {
        self.facets.len() - 1
    }

    /// Lattice length of the bounded edge on facet `i`, `1 ≤ i ≤ m-1`.
    pub fn edge_length(&self, i: usize) -> f64 {
        // The edge direction (1, -i) is primitive, so the lattice length is the
        // change in x between its two corners.
        (self.vertices[i - 1][0] - self.vertices[i][0]).abs()
    }

    /// `q_i = exp(−∫_{D_i} ω)`, with `∫_{D_i} ω` the lattice length of edge `i`.
    pub fn kahler_parameters(&self) -> Vec<f64> {
        (1..self.m())
            .map(|i| (-self.edge_length(i)).exp())
            .collect()
    }

    /// `⟨v_j, x⟩ − c_j` for every facet.
    pub fn slacks(&self, x: [f64; 2]) -> Vec<f64> {
        self.facets
            .iter()
            .map(|f| {
                let (nx, ny) = f.normal.to_i64_pair().expect("small normals");
                nx as f64 * x[0] + ny as f64 * x[1] - f.offset
            })
            .collect()
    }
}

/// Builds the moment polytope for offsets `c_0, …, c_m`.
///
/// Every facet must support an edge: the second differences
/// `ℓ_i = 2c_i − c_{i-1} − c_{i+1}` are the bounded edge lengths and must be
/// positive. The polyhedron itself is never empty since `y → +∞` is feasible.
pub fn moment_polytope(m: usize, c: &[f64]) -> Result<MomentPolytope, FanError> {
    if c.len() != m + 1 || c.iter().any(|x| !x.is_finite()) {
        return Err(FanError::InvalidOffsets {
            expected: m + 1,
            got: c.len(),
        });
    }
    for i in 1..m {
        let length = 2.0 * c[i] - c[i - 1] - c[i + 1];
        if length <= 0.0 {
            return Err(FanError::RedundantFacet { index: i, length });
        }
    }
    let facets = c
        .iter()
        .enumerate()
        .map(|(j, &offset)| Facet {
            normal: LatticeVec::new(j as i64, 1),
            offset,
        })
        .collect();
    // (i-1)x + y = c_{i-1} and ix + y = c_i
    let vertices = (1..=m)
        .map(|i| {
            let x = c[i] - c[i - 1];
            [x, c[i] - i as f64 * x]
        })
        .collect();
    Ok(MomentPolytope { facets, vertices })
}

/// Reconciles the two ways of supplying Kähler data. Polytope offsets win;
/// when q is given too it must agree to relative tolerance `rel_tol`.
pub fn resolve_kahler(
    m: usize,
    offsets: Option<&[f64]>,
    q: Option<&[f64]>,
    rel_tol: f64,
) -> Result<Vec<f64>, FanError> {
    match (offsets, q) {
        (None, None) => Err(FanError::MissingKahlerData),
        (None, Some(q)) => {
            if q.len() + 1 != m {
                return Err(FanError::InvalidOffsets {
                    expected: m.saturating_sub(1),
                    got: q.len(),
                });
            }
            Ok(q.to_vec())
        }
        (Some(c), given) => {
            let derived = moment_polytope(m, c)?.kahler_parameters();
            if let Some(q) = given {
                if q.len() != derived.len() {
                    return Err(FanError::InvalidOffsets {
                        expected: derived.len(),
                        got: q.len(),
                    });
                }
                for (i, (&g, &d)) in q.iter().zip(&derived).enumerate() {
                    if (g - d).abs() > rel_tol * d.abs().max(g.abs()) {
                        return Err(FanError::KahlerMismatch {
                            index: i + 1,
                            given: g,
                            derived: d,
                        });
                    }
                }
            }
            Ok(derived)
        }
    }
}
