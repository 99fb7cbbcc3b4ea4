//! Complex channel, its real-valued lifting, and per-subset conditional entropy.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::constellation::{Constellation, SignalVector};
use crate::special::hb_of_q;
use crate::{Error, Result};

/// Row vector `h̄ᵀ ∈ C^{1×M}` between the `M` transmit antennas and the receiver.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexChannel(Vec<Complex64>);

impl ComplexChannel {
    pub fn new(entries: Vec<Complex64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidConfig("channel needs at least one antenna"));
        }
        if let Some(bad) = entries.iter().find(|c| !c.re.is_finite() || !c.im.is_finite()) {
            let v = if bad.re.is_finite() { bad.im } else { bad.re };
            return Err(Error::NonFinite(v));
        }
        Ok(Self(entries))
    }

    pub fn antennas(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.0
    }

    /// `‖h̄‖² = Σ (Re² + Im²)`.
    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(Complex64::norm_sqr).sum()
    }
}

/// `H = [[h̄_Re, -h̄_Im], [h̄_Im, h̄_Re]] ∈ R^{2×2M}`.
///
/// The two rows satisfy `h1ᵀR = -h2ᵀ` and `h2ᵀR = h1ᵀ`, which is what makes
/// the conditional entropy constant over a rotation orbit.
#[derive(Debug, Clone, PartialEq)]
pub struct RealChannel {
    h1: Vec<f64>,
    h2: Vec<f64>,
}

impl RealChannel {
    pub fn antennas(&self) -> usize {
        self.h1.len() / 2
    }

    pub fn dim(&self) -> usize {
        self.h1.len()
    }

    pub fn row1(&self) -> &[f64] {
        &self.h1
    }

    pub fn row2(&self) -> &[f64] {
        &self.h2
    }

    pub fn to_complex(&self) -> ComplexChannel {
        let m = self.antennas();
        ComplexChannel((0..m).map(|i| Complex64::new(self.h1[i], self.h2[i])).collect())
    }

    /// `‖h1‖²`, equal to `‖h̄‖²`.
    pub fn norm_sqr(&self) -> f64 {
        self.h1.iter().map(|v| v * v).sum()
    }

    /// `(h1ᵀx, h2ᵀx)`; `x` must have length `2M`.
    #[inline]
    pub(crate) fn project(&self, x: &[i8]) -> (f64, f64) {
        let mut a = 0.0;
        let mut b = 0.0;
        for ((&xi, &g1), &g2) in x.iter().zip(&self.h1).zip(&self.h2) {
            match xi {
                1 => {
                    a += g1;
                    b += g2;
                }
                -1 => {
                    a -= g1;
                    b -= g2;
                }
                _ => {}
            }
        }
        (a, b)
    }

    /// `Σ_n H_b(Q(scale · h_nᵀx))` with `scale = √(2/σ²)`.
    #[inline]
    pub(crate) fn entropy_scaled(&self, x: &[i8], scale: f64) -> f64 {
        let (a, b) = self.project(x);
        hb_of_q(scale * a) + hb_of_q(scale * b)
    }

    pub(crate) fn check_dim(&self, len: usize) -> Result<()> {
        if len == self.dim() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: self.dim(), found: len })
        }
    }

    /// `H_b^{X_{u,k}}` for every subset of `cons`, indexed like the constellation.
    pub fn entropy_profile(&self, cons: &Constellation, sigma2: f64) -> Result<Vec<f64>> {
        self.check_dim(cons.dim())?;
        let scale = noise_scale(sigma2)?;
        Ok((0..cons.len()).map(|i| self.entropy_scaled(cons.representative(i), scale)).collect())
    }
}

/// `√(2/σ²)`, after validating `σ²`.
pub(crate) fn noise_scale(sigma2: f64) -> Result<f64> {
    if sigma2.is_finite() && sigma2 > 0.0 {
        Ok(libm::sqrt(2.0 / sigma2))
    } else {
        Err(Error::InvalidNoiseVariance(sigma2))
    }
}

pub fn realify(h: &ComplexChannel) -> RealChannel {
    let m = h.antennas();
    let mut h1 = Vec::with_capacity(2 * m);
    let mut h2 = Vec::with_capacity(2 * m);
    h1.extend(h.0.iter().map(|c| c.re));
    h1.extend(h.0.iter().map(|c| -c.im));
    h2.extend(h.0.iter().map(|c| c.im));
    h2.extend(h.0.iter().map(|c| c.re));
    RealChannel { h1, h2 }
}

/// `H_b^{X_{u,k}} = Σ_{n=1,2} H_b(Q(√(2/σ²) h_nᵀx))` for the subset containing `x`.
pub fn subset_entropy(h: &RealChannel, x: &SignalVector, sigma2: f64) -> Result<f64> {
    h.check_dim(x.as_slice().len())?;
    let scale = noise_scale(sigma2)?;
    Ok(h.entropy_scaled(x.as_slice(), scale))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::{binary_entropy, q_function};
    use alloc::vec;

    fn ch(v: &[(f64, f64)]) -> ComplexChannel {
        ComplexChannel::new(v.iter().map(|&(a, b)| Complex64::new(a, b)).collect()).unwrap()
    }

    #[test]
    fn realify_single() {
        let h = realify(&ch(&[(1.0, 2.0)]));
        assert_eq!(h.row1(), &[1.0, -2.0]);
        assert_eq!(h.row2(), &[2.0, 1.0]);
    }

    #[test]
    fn realify_zero() {
        let h = realify(&ch(&[(0.0, 0.0)]));
        assert_eq!(h.row1(), &[0.0, 0.0]);
        assert_eq!(h.row2(), &[0.0, 0.0]);
    }

    #[test]
    fn realify_two_antennas() {
        let h = realify(&ch(&[(1.0, 1.0), (2.0, -1.0)]));
        assert_eq!(h.row1(), &[1.0, 2.0, -1.0, 1.0]);
        assert_eq!(h.row2(), &[1.0, -1.0, 1.0, 2.0]);
    }

    #[test]
    fn rejects_bad_channels() {
        assert!(ComplexChannel::new(vec![]).is_err());
        assert!(ComplexChannel::new(vec![Complex64::new(f64::NAN, 0.0)]).is_err());
    }

    #[test]
    fn zero_channel_entropy_is_two() {
        let h = realify(&ch(&[(0.0, 0.0), (0.0, 0.0)]));
        let x = SignalVector::new(vec![1, 0, -1, 1]).unwrap();
        assert_eq!(subset_entropy(&h, &x, 0.7).unwrap(), 2.0);
    }

    #[test]
    fn qpsk_point_on_diagonal_channel() {
        // h̄ = 1+j, x = [1,1]: h1ᵀx = 1 - 1 = 0, h2ᵀx = 1 + 1 = 2.
        let h = realify(&ch(&[(1.0, 1.0)]));
        let x = SignalVector::new(vec![1, 1]).unwrap();
        let expected = binary_entropy(q_function(2.0 * 2f64.sqrt()).unwrap()).unwrap() + 1.0;
        assert!((subset_entropy(&h, &x, 1.0).unwrap() - expected).abs() < 1e-15);
    }

    #[test]
    fn noiseless_limit() {
        let h = realify(&ch(&[(0.8, -0.3)]));
        let x = SignalVector::new(vec![1, 1]).unwrap();
        assert_eq!(subset_entropy(&h, &x, 1e-6).unwrap(), 0.0);
    }

    #[test]
    fn dimension_and_variance_errors() {
        let h = realify(&ch(&[(1.0, 0.0)]));
        let x = SignalVector::new(vec![1, 0, 0, 0]).unwrap();
        assert!(matches!(subset_entropy(&h, &x, 1.0), Err(Error::DimensionMismatch { .. })));
        let x = SignalVector::new(vec![1, 0]).unwrap();
        assert!(subset_entropy(&h, &x, 0.0).is_err());
        assert!(subset_entropy(&h, &x, -1.0).is_err());
    }
}
