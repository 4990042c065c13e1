//! Face vectors of dual-neighborly polytopes of even dimension d = 2p with
//! n = 2p + m + 1 facets, and the cell counts of the associated
//! moment-angle manifold.
//!
//! Two independent formulas compute the same face numbers: Brøndsted's
//! direct binomial sum and a dualized Grünbaum-style alternating sum that
//! only lands in the integers after cancellation. The second is evaluated
//! over exact rationals and acts as a built-in cross-check of the first.

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exactmath::{binomial, ExactInt, ExactRat};

/// The pair (p, m) identifying a dual-neighborly polytope: half-dimension
/// p ≥ 1 (so d = 2p) and facet excess m ≥ 0 (so n = 2p + m + 1 facets).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PolytopeParams {
    p: u32,
    m: u32,
}

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
#[error("half-dimension p must be at least 1")]
pub struct InvalidParams;

impl PolytopeParams {
    pub fn new(p: u32, m: u32) -> Result<Self, InvalidParams> {
        if p == 0 {
            return Err(InvalidParams);
        }
        Ok(PolytopeParams { p, m })
    }

    pub fn p(self) -> u32 {
        self.p
    }

    pub fn m(self) -> u32 {
        self.m
    }

    /// Polytope dimension d = 2p.
    pub fn dim(self) -> u32 {
        2 * self.p
    }

    /// Facet count n = 2p + m + 1.
    pub fn facets(self) -> u32 {
        2 * self.p + self.m + 1
    }
}

/// Exact face counts f_0..f_d of a d-polytope. The top entry counts the
/// polytope itself as its single d-face, so f_d = 1 always.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceVector {
    counts: Vec<ExactInt>,
}

impl FaceVector {
    /// Wraps counts f_0..f_d. The slice index is the face dimension.
    pub fn from_counts(counts: Vec<ExactInt>) -> Self {
        assert!(!counts.is_empty(), "a face vector needs at least f_0");
        FaceVector { counts }
    }

    pub fn dim(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn counts(&self) -> &[ExactInt] {
        &self.counts
    }

    /// Count of k-faces (zero beyond the dimension).
    pub fn count(&self, k: usize) -> ExactInt {
        self.counts.get(k).cloned().unwrap_or_else(ExactInt::zero)
    }

    /// Alternating sum over proper faces, sum of (-1)^k f_k for k < d.
    /// This is the Euler characteristic of the boundary sphere, so it
    /// equals 0 for even d and 2 for odd d.
    pub fn boundary_alternating_sum(&self) -> ExactInt {
        let mut acc = ExactInt::zero();
        for (k, f) in self.counts[..self.counts.len() - 1].iter().enumerate() {
            if k % 2 == 0 {
                acc += f;
            } else {
                acc -= f;
            }
        }
        acc
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FaceVectorError {
    /// The rational form summed to a non-integer; impossible for correct
    /// inputs, so this flags an implementation defect loudly.
    #[error("face count f_{k} evaluated to the non-integer {value}")]
    NonIntegralFaceCount { k: usize, value: ExactRat },
    #[error("face count f_{k} evaluated to the negative value {value}")]
    NegativeFaceCount { k: usize, value: ExactInt },
}

/// Weights C(m+j, j) for j = 0..=p, built by running exact division.
fn facet_weights(p: i64, m: i64) -> Vec<ExactInt> {
    let mut weights = Vec::with_capacity(p as usize + 1);
    let mut w = ExactInt::one();
    weights.push(w.clone());
    for j in 1..=p {
        w *= m + j;
        w /= j;
        weights.push(w.clone());
    }
    weights
}

/// Face vector by Brøndsted's sum for duals of cyclic polytopes:
/// f_k = sum_{j=0..p} C(j,k) C(m+j,j) + sum_{j=0..p-1} C(2p-j,k) C(m+j,j).
pub fn face_vector_brondsted(params: PolytopeParams) -> FaceVector {
    let p = i64::from(params.p());
    let m = i64::from(params.m());
    let d = 2 * p;
    let weights = facet_weights(p, m);
    let mut counts = Vec::with_capacity(d as usize + 1);
    for k in 0..=d {
        let mut f = ExactInt::zero();
        for (j, w) in weights.iter().enumerate() {
            let j = j as i64;
            f += binomial(j, k) * w;
            if j < p {
                f += binomial(d - j, k) * w;
            }
        }
        counts.push(f);
    }
    FaceVector { counts }
}

/// Face vector by the dualized Grünbaum alternating sum:
/// f_k = n/(m+k+1) * sum_{j=0..p} C(m+2p-j, 2p-k-j) C(m+k+1, 2j-2p+k).
///
/// The prefactor is constant in j, so the sum is taken over integers and
/// only one exact division per k remains. Each count is checked to be a
/// nonnegative integer instead of silently rounded.
pub fn face_vector_grunbaum(params: PolytopeParams) -> Result<FaceVector, FaceVectorError> {
    let p = i64::from(params.p());
    let m = i64::from(params.m());
    let d = 2 * p;
    let n = d + m + 1;
    let mut counts = Vec::with_capacity(d as usize + 1);
    for k in 0..=d {
        let mut inner = ExactInt::zero();
        for j in 0..=p {
            inner += binomial(m + d - j, d - k - j) * binomial(m + k + 1, 2 * j - d + k);
        }
        let value = ExactRat::new(ExactInt::from(n) * inner, ExactInt::from(m + k + 1));
        if !value.is_integer() {
            return Err(FaceVectorError::NonIntegralFaceCount { k: k as usize, value });
        }
        let f = value.to_integer();
        if f.is_negative() {
            return Err(FaceVectorError::NegativeFaceCount { k: k as usize, value: f });
        }
        counts.push(f);
    }
    Ok(FaceVector { counts })
}

/// Cell counts c_0..c_d of the moment-angle manifold Z built over the
/// polytope: c_k = f_k * 2^{m+k+1}, and in particular c_d = 2^n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellCounts {
    counts: Vec<ExactInt>,
}

impl CellCounts {
    pub fn counts(&self) -> &[ExactInt] {
        &self.counts
    }

    pub fn dim(&self) -> usize {
        self.counts.len() - 1
    }

    /// Euler characteristic of Z: the alternating sum of all cell counts.
    pub fn euler_characteristic(&self) -> ExactInt {
        let mut acc = ExactInt::zero();
        for (k, c) in self.counts.iter().enumerate() {
            if k % 2 == 0 {
                acc += c;
            } else {
                acc -= c;
            }
        }
        acc
    }
}

pub fn cell_counts(params: PolytopeParams) -> CellCounts {
    let f = face_vector_brondsted(params);
    let m = params.m() as usize;
    let counts = f
        .counts()
        .iter()
        .enumerate()
        .map(|(k, fk)| fk << (m + k + 1))
        .collect();
    CellCounts { counts }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pm(p: u32, m: u32) -> PolytopeParams {
        PolytopeParams::new(p, m).unwrap()
    }

    fn ints(values: &[i64]) -> Vec<ExactInt> {
        values.iter().map(|&v| ExactInt::from(v)).collect()
    }

    #[test]
    fn params_validate_and_derive() {
        assert_eq!(PolytopeParams::new(0, 3), Err(InvalidParams));
        let q = pm(2, 1);
        assert_eq!(q.dim(), 4);
        assert_eq!(q.facets(), 6);
    }

    #[test]
    fn brondsted_simplices() {
        // m = 0 gives the 2p-simplex: f_k = C(2p+1, k+1).
        assert_eq!(face_vector_brondsted(pm(1, 0)).counts(), ints(&[3, 3, 1]));
        assert_eq!(
            face_vector_brondsted(pm(2, 0)).counts(),
            ints(&[5, 10, 10, 5, 1])
        );
        for p in 1..=6u32 {
            let f = face_vector_brondsted(pm(p, 0));
            for k in 0..=2 * p as i64 {
                assert_eq!(f.count(k as usize), binomial(2 * i64::from(p) + 1, k + 1));
            }
        }
    }

    #[test]
    fn brondsted_product_of_two_triangles() {
        // (p=2, m=1) is the dual of the cyclic polytope C(4,6); its face
        // counts agree with those of a product of two triangles.
        assert_eq!(
            face_vector_brondsted(pm(2, 1)).counts(),
            ints(&[9, 18, 15, 6, 1])
        );
    }

    #[test]
    fn grunbaum_matches_frozen_values() {
        assert_eq!(
            face_vector_grunbaum(pm(1, 0)).unwrap().counts(),
            ints(&[3, 3, 1])
        );
        assert_eq!(
            face_vector_grunbaum(pm(2, 0)).unwrap().counts(),
            ints(&[5, 10, 10, 5, 1])
        );
        assert_eq!(
            face_vector_grunbaum(pm(2, 1)).unwrap().counts(),
            ints(&[9, 18, 15, 6, 1])
        );
    }

    #[test]
    fn grunbaum_equals_brondsted_small_grid() {
        for p in 1..=6 {
            for m in 0..=10 {
                let params = pm(p, m);
                assert_eq!(
                    face_vector_grunbaum(params).unwrap(),
                    face_vector_brondsted(params),
                    "p={p} m={m}"
                );
            }
        }
    }

    #[test]
    fn top_face_is_single() {
        for p in 1..=8 {
            for m in 0..=12 {
                let f = face_vector_brondsted(pm(p, m));
                assert_eq!(f.count(f.dim()), ExactInt::one());
            }
        }
    }

    #[test]
    fn boundary_euler_vanishes_in_even_dimension() {
        for p in 1..=8 {
            for m in 0..=12 {
                let f = face_vector_brondsted(pm(p, m));
                assert_eq!(f.boundary_alternating_sum(), ExactInt::zero());
            }
        }
    }

    #[test]
    fn dual_neighborliness_top_counts() {
        // Every j <= p facets meet, so f_{d-j} = C(n, j); in particular
        // f_{d-1} = n.
        for p in 1..=6u32 {
            for m in 0..=8u32 {
                let params = pm(p, m);
                let f = face_vector_brondsted(params);
                let d = params.dim() as usize;
                let n = i64::from(params.facets());
                assert_eq!(f.count(d - 1), ExactInt::from(n));
                for j in 1..=i64::from(p) {
                    assert_eq!(f.count(d - j as usize), binomial(n, j), "p={p} m={m} j={j}");
                }
            }
        }
    }

    #[test]
    fn cell_counts_frozen_values() {
        // Octahedral decomposition of the 2-sphere.
        assert_eq!(cell_counts(pm(1, 0)).counts(), ints(&[6, 12, 8]));
        // Torus decomposition from the square.
        assert_eq!(cell_counts(pm(1, 1)).counts(), ints(&[16, 32, 16]));
        assert_eq!(cell_counts(pm(2, 0)).counts(), ints(&[10, 40, 80, 80, 32]));
    }

    #[test]
    fn top_cells_count_is_two_to_the_n() {
        for p in 1..=6 {
            for m in 0..=8 {
                let params = pm(p, m);
                let c = cell_counts(params);
                assert_eq!(
                    c.counts()[c.dim()],
                    ExactInt::one() << params.facets() as usize
                );
            }
        }
    }

    #[test]
    fn euler_characteristic_of_spheres_and_torus() {
        assert_eq!(cell_counts(pm(1, 0)).euler_characteristic(), ExactInt::from(2));
        assert_eq!(cell_counts(pm(1, 1)).euler_characteristic(), ExactInt::zero());
        assert_eq!(cell_counts(pm(2, 0)).euler_characteristic(), ExactInt::from(2));
    }

    proptest! {
        #[test]
        fn formulas_agree_on_random_params(p in 1u32..=8, m in 0u32..=14) {
            let params = pm(p, m);
            prop_assert_eq!(
                face_vector_grunbaum(params).unwrap(),
                face_vector_brondsted(params)
            );
        }

        #[test]
        fn face_counts_are_positive(p in 1u32..=8, m in 0u32..=14) {
            let f = face_vector_brondsted(pm(p, m));
            prop_assert!(f.counts().iter().all(|c| c > &ExactInt::zero()));
        }
    }
}
