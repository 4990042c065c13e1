//! Euler characteristic and genus of the moment-angle manifold Z over a
//! dual-neighborly 2p-polytope with n = 2p + m + 1 facets.
//!
//! Each quantity is computable by several routes that must agree exactly:
//! the raw alternating cell sum, a collapsed binomial form, a closed sum
//! with no cancellation (the fast path, fine for p and m in the
//! thousands), and coefficient extraction from a rational generating
//! function. Keeping all of them around turns the library into its own
//! cross-checking harness.

use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::exactmath::{ExactInt, Polynomial, RationalFunction};
use crate::facevec::{cell_counts, PolytopeParams};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenusError {
    /// chi - 2 must be even; an odd value signals a defect upstream.
    #[error("Euler characteristic {chi} has the wrong parity for a genus")]
    ParityViolation { chi: ExactInt },
}

/// Euler characteristic as the raw alternating sum of cell counts,
/// sum of (-1)^k f_k 2^{m+k+1} over k = 0..2p.
pub fn chi_cell_sum(params: PolytopeParams) -> ExactInt {
    cell_counts(params).euler_characteristic()
}

/// Auxiliary sequence S(r,m) = 2 sum_{j=0..r} (-1)^j 2^m C(m+j,j).
/// The characteristic decomposes as chi(p,m) = S(p,m) + S(p-1,m).
pub fn aux_s(r: u32, m: u32) -> ExactInt {
    let m_i = i64::from(m);
    let mut sum = ExactInt::zero();
    let mut w = ExactInt::one();
    for j in 0..=i64::from(r) {
        if j > 0 {
            w *= m_i + j;
            w /= j;
        }
        if j % 2 == 0 {
            sum += &w;
        } else {
            sum -= &w;
        }
    }
    sum << (m as usize + 1)
}

/// A_p + A_{p-1} where A_r = sum_{j=0..r} (-1)^j C(m+j,j); the shared
/// core of the collapsed chi and genus forms.
fn alternating_weight_sums(p: i64, m: i64) -> ExactInt {
    let mut with_top = ExactInt::zero();
    let mut without_top = ExactInt::zero();
    let mut w = ExactInt::one();
    for j in 0..=p {
        if j > 0 {
            w *= m + j;
            w /= j;
        }
        let term = if j % 2 == 0 { w.clone() } else { -w.clone() };
        if j < p {
            without_top += &term;
        }
        with_top += term;
    }
    with_top + without_top
}

/// Collapsed binomial form:
/// chi = 2^{m+1} (sum_{j=0..p} (-1)^j C(m+j,j) + sum_{j=0..p-1} (-1)^j C(m+j,j)).
pub fn chi_simplified(params: PolytopeParams) -> ExactInt {
    let sums = alternating_weight_sums(i64::from(params.p()), i64::from(params.m()));
    sums << (params.m() as usize + 1)
}

/// Cancellation-free closed form:
/// chi = (-1)^p sum_{j=0..m-1} 2^{j+1} C(j+p,p) + 2 (empty sum at m = 0).
pub fn chi_closed(params: PolytopeParams) -> ExactInt {
    let p = i64::from(params.p());
    let m = i64::from(params.m());
    let mut sum = ExactInt::zero();
    let mut c = ExactInt::one();
    let mut pow = ExactInt::from(2);
    for j in 0..m {
        if j > 0 {
            c *= j + p;
            c /= j;
            pow <<= 1;
        }
        sum += &c * &pow;
    }
    if p % 2 == 1 {
        sum = -sum;
    }
    sum + 2
}

/// chi(p, m) for m = 0..=max_m, as the series prefix of
/// 2/(1-z) + 2z/((z-1)(2z-1)^{p+1}).
pub fn chi_genfunc(p: u32, max_m: u32) -> Vec<ExactInt> {
    assert!(p >= 1, "half-dimension p must be at least 1");
    let first = RationalFunction::new(Polynomial::from_ints(&[2]), Polynomial::from_ints(&[1, -1]))
        .expect("1 - z expands at z = 0");
    let den = &Polynomial::from_ints(&[-1, 1]) * &Polynomial::from_ints(&[-1, 2]).pow(p + 1);
    let second = RationalFunction::new(Polynomial::from_ints(&[0, 2]), den)
        .expect("(z-1)(2z-1)^{p+1} expands at z = 0");
    (&first + &second)
        .series_prefix(max_m as usize + 1)
        .expect("unit constant term gives integer coefficients")
}

/// Genus by the cancellation-free sum g = sum_{j=0..m-1} C(j+p,p) 2^j.
/// This is the fast path; the empty sum at m = 0 gives the sphere.
pub fn genus_closed(params: PolytopeParams) -> ExactInt {
    let p = i64::from(params.p());
    let m = i64::from(params.m());
    let mut sum = ExactInt::zero();
    let mut c = ExactInt::one();
    let mut pow = ExactInt::one();
    for j in 0..m {
        if j > 0 {
            c *= j + p;
            c /= j;
            pow <<= 1;
        }
        sum += &c * &pow;
    }
    sum
}

/// Genus in the signed form
/// g = (-1)^p 2^m (sum_{j=0..p} + sum_{j=0..p-1}) (-1)^j C(m+j,j) - (-1)^p.
pub fn genus_signed_form(params: PolytopeParams) -> ExactInt {
    let p = i64::from(params.p());
    let m = i64::from(params.m());
    let scaled = alternating_weight_sums(p, m) << params.m() as usize;
    if p % 2 == 0 {
        scaled - 1
    } else {
        ExactInt::one() - scaled
    }
}

/// Genus from the characteristic via g = (-1)^p (chi - 2)/2.
pub fn genus_from_chi(params: PolytopeParams) -> Result<ExactInt, GenusError> {
    let chi = chi_closed(params);
    let diff: ExactInt = &chi - 2;
    if diff.is_odd() {
        return Err(GenusError::ParityViolation { chi });
    }
    let half: ExactInt = diff / 2;
    Ok(if params.p() % 2 == 1 { -half } else { half })
}

/// g(p, m) for m = 0..=max_m, as the series prefix of
/// z/((1-z)(1-2z)^{p+1}).
pub fn genus_genfunc(p: u32, max_m: u32) -> Vec<ExactInt> {
    assert!(p >= 1, "half-dimension p must be at least 1");
    let den = &Polynomial::from_ints(&[1, -1]) * &Polynomial::from_ints(&[1, -2]).pow(p + 1);
    RationalFunction::new(Polynomial::from_ints(&[0, 1]), den)
        .expect("(1-z)(1-2z)^{p+1} expands at z = 0")
        .series_prefix(max_m as usize + 1)
        .expect("unit constant term gives integer coefficients")
}

/// Homological summary of Z: Betti numbers sit in degrees 0, p and 2p+m+1
/// only, with total beta = 2g + 2 and middle rank 2g.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenusReport {
    pub params: PolytopeParams,
    pub chi: ExactInt,
    pub genus: ExactInt,
    pub beta_total: ExactInt,
    pub middle_betti: ExactInt,
}

pub fn betti_report(params: PolytopeParams) -> GenusReport {
    let genus = genus_closed(params);
    let chi = chi_closed(params);
    let middle_betti: ExactInt = &genus * 2;
    let beta_total = &middle_betti + 2;
    GenusReport {
        params,
        chi,
        genus,
        beta_total,
        middle_betti,
    }
}
