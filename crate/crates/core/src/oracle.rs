//! Brute-force ground truth, independent of every formula in this crate.
//!
//! Facets of the cyclic polytope C(d, n) are enumerated directly from
//! Gale's evenness condition on vertex subsets, all faces of the boundary
//! complex are counted by bitmask expansion, and the counts are dualized
//! into the f-vector of a simple dual-neighborly polytope. Everything is
//! integer bit arithmetic; nothing here touches coordinates or floats.

use num_traits::Zero;
use thiserror::Error;

use crate::exactmath::ExactInt;
use crate::facevec::FaceVector;

/// Vertex subsets are u32 bitmasks; the dense face bitset below has one
/// bit per subset of {0..n-1}, so n is capped to keep it at a few MiB.
pub const MAX_VERTICES: u32 = 24;
pub const MAX_DIM: u32 = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("only even dimensions up to {MAX_DIM} are supported, got d = {d}")]
    DimensionUnsupported { d: u32 },
    #[error("need at least d + 1 = {min} vertices, got n = {n}")]
    TooFewVertices { n: u32, min: u32 },
    #[error("vertex count n = {n} exceeds the enumeration limit {MAX_VERTICES}")]
    TooManyVertices { n: u32 },
}

/// Gale evenness: a d-subset (mask) of the linearly ordered vertices
/// 0..n-1 is a facet of C(d, n) exactly when every maximal run of chosen
/// vertices lying strictly between two unchosen ones has even length.
/// Runs touching either end of the order are unconstrained.
fn is_gale_even(mask: u32, n: u32) -> bool {
    let mut past_first_gap = false;
    let mut run = 0u32;
    for v in 0..n {
        if mask & (1 << v) != 0 {
            run += 1;
        } else {
            if past_first_gap && run % 2 == 1 {
                return false;
            }
            past_first_gap = true;
            run = 0;
        }
    }
    true
}

/// All facets of the cyclic polytope C(d, n) as vertex bitmasks, in
/// increasing mask order.
pub fn gale_facets(d: u32, n: u32) -> Result<Vec<u32>, OracleError> {
    if d == 0 || !d.is_multiple_of(2) || d > MAX_DIM {
        return Err(OracleError::DimensionUnsupported { d });
    }
    if n > MAX_VERTICES {
        return Err(OracleError::TooManyVertices { n });
    }
    if n < d + 1 {
        return Err(OracleError::TooFewVertices { n, min: d + 1 });
    }
    let mut facets = Vec::new();
    // Gosper's hack: iterate all d-subsets of n bits in increasing order.
    let limit = 1u32 << n;
    let mut mask = (1u32 << d) - 1;
    while mask < limit {
        if is_gale_even(mask, n) {
            facets.push(mask);
        }
        let c = mask & mask.wrapping_neg();
        let r = mask + c;
        mask = (((r ^ mask) >> 2) / c) | r;
    }
    Ok(facets)
}

/// Face counts of a simplicial complex given by its facets: entry s is
/// the number of faces with exactly s vertices (so entry 0 counts the
/// empty face, once).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplexFaces {
    n_vertices: u32,
    facets: Vec<u32>,
    counts_by_size: Vec<ExactInt>,
}

impl SimplicialComplexFaces {
    pub fn n_vertices(&self) -> u32 {
        self.n_vertices
    }

    pub fn facets(&self) -> &[u32] {
        &self.facets
    }

    /// Number of faces with `size` vertices (f_{size-1} in the usual
    /// indexing); zero beyond the facet size.
    pub fn count_by_size(&self, size: usize) -> ExactInt {
        self.counts_by_size
            .get(size)
            .cloned()
            .unwrap_or_else(ExactInt::zero)
    }

    pub fn counts_by_size(&self) -> &[ExactInt] {
        &self.counts_by_size
    }

    /// Euler characteristic of the complex, sum of (-1)^j f_j over face
    /// dimensions j = 0..d-1 (the empty face excluded).
    pub fn euler_characteristic(&self) -> ExactInt {
        let mut acc = ExactInt::zero();
        for (size, count) in self.counts_by_size.iter().enumerate().skip(1) {
            if size % 2 == 1 {
                acc += count;
            } else {
                acc -= count;
            }
        }
        acc
    }
}

/// Counts every subset of every facet exactly once, via a dense bitset
/// over all 2^n vertex subsets and per-facet submask expansion.
pub fn enumerate_face_counts(facets: &[u32], n: u32) -> SimplicialComplexFaces {
    assert!(!facets.is_empty(), "a complex needs at least one facet");
    assert!(n <= MAX_VERTICES);
    // One bit for each of the 2^n vertex subsets.
    let mut seen = vec![0u64; (1usize << n).div_ceil(64)];
    let mut max_size = 0usize;
    for &facet in facets {
        debug_assert_eq!(facet >> n, 0, "facet uses vertices beyond n");
        max_size = max_size.max(facet.count_ones() as usize);
        // Submask walk visits every subset of `facet`, including empty.
        let mut sub = facet;
        loop {
            seen[(sub >> 6) as usize] |= 1u64 << (sub & 63);
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & facet;
        }
    }
    let mut counts = vec![0u64; max_size + 1];
    for (word_index, &word) in seen.iter().enumerate() {
        let mut bits = word;
        while bits != 0 {
            let bit = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let mask = ((word_index as u32) << 6) | bit as u32;
            counts[mask.count_ones() as usize] += 1;
        }
    }
    SimplicialComplexFaces {
        n_vertices: n,
        facets: facets.to_vec(),
        counts_by_size: counts.into_iter().map(ExactInt::from).collect(),
    }
}

/// f-vector of the polar dual of a simplicial d-polytope boundary:
/// k-faces of the dual correspond to (d-1-k)-faces of the complex, and
/// the dual polytope itself contributes f_d = 1.
pub fn dual_f_vector(complex: &SimplicialComplexFaces, d: u32) -> FaceVector {
    let d = d as usize;
    let mut counts = Vec::with_capacity(d + 1);
    for k in 0..d {
        counts.push(complex.count_by_size(d - k));
    }
    counts.push(ExactInt::from(1));
    FaceVector::from_counts(counts)
}

/// Euler characteristic of the moment-angle manifold over the dual
/// polytope, by raw cell counting: sum of (-1)^k 2^{n-d+k} f_k.
pub fn chi_by_cells(dual: &FaceVector, n: u32, d: u32) -> ExactInt {
    let mut acc = ExactInt::zero();
    for (k, f) in dual.counts().iter().enumerate() {
        let cells = f << ((n - d) as usize + k);
        if k % 2 == 0 {
            acc += cells;
        } else {
            acc -= cells;
        }
    }
    acc
}
