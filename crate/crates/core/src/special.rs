//! Gaussian tail and binary entropy kernels.

use core::f64::consts::{FRAC_1_SQRT_2, LN_2};

use crate::{Error, Result};

/// Inputs this close to 0 or 1 are snapped to the endpoint by [`binary_entropy`].
pub const ENDPOINT_TOLERANCE: f64 = 1e-12;

/// Standard Gaussian tail probability `Q(t) = P[N(0,1) > t]`.
///
/// Evaluated as `erfc(t/√2)/2`, so the far tail keeps full relative precision.
pub fn q_function(t: f64) -> Result<f64> {
    if !t.is_finite() {
        return Err(Error::NonFinite(t));
    }
    Ok(q(t))
}

#[inline]
pub(crate) fn q(t: f64) -> f64 {
    0.5 * libm::erfc(t * FRAC_1_SQRT_2)
}

/// Binary entropy in bits, with `0·log 0 = 0`.
pub fn binary_entropy(p: f64) -> Result<f64> {
    if !p.is_finite() {
        return Err(Error::NonFinite(p));
    }
    if !(-ENDPOINT_TOLERANCE..=1.0 + ENDPOINT_TOLERANCE).contains(&p) {
        return Err(Error::ProbabilityOutOfRange(p));
    }
    Ok(hb(p))
}

/// `binary_entropy` without range checks; `p` must already lie in `[0, 1]`
/// up to [`ENDPOINT_TOLERANCE`].
#[inline]
pub(crate) fn hb(p: f64) -> f64 {
    // 1 - p is exact for p >= 1/2, so folding loses nothing.
    let p = if p > 0.5 { 1.0 - p } else { p };
    if p <= ENDPOINT_TOLERANCE {
        return 0.0;
    }
    -(p * libm::log2(p) + (1.0 - p) * libm::log1p(-p) / LN_2)
}

/// `H_b(Q(t))`. Even in `t`, so the tail is evaluated at `|t|`.
#[inline]
pub(crate) fn hb_of_q(t: f64) -> f64 {
    hb(q(libm::fabs(t)))
}
