//! Brute-force mutual information of the one-bit channel.
//!
//! Works directly from the transition law
//! `P[y_n = +1 | x] = 1 - Q(√(2/σ²) h_nᵀx)` with independent outputs, and
//! makes no use of the rotation structure, so it can check the closed forms.

use alloc::vec::Vec;

use crate::capacity::MASS_TOLERANCE;
use crate::channel::{noise_scale, RealChannel};
use crate::constellation::SignalVector;
use crate::special::q;
use crate::{Error, Result};

/// Largest antenna count accepted by [`mi_bruteforce`].
pub const MAX_ORACLE_ANTENNAS: usize = 3;

/// Output symbols `(y1, y2)` in the order used by [`output_distribution`].
pub const OUTPUTS: [(i8, i8); 4] = [(1, 1), (1, -1), (-1, 1), (-1, -1)];

fn transition(h: &RealChannel, x: &[i8], scale: f64) -> [f64; 4] {
    let (a, b) = h.project(x);
    let p1 = q(-scale * a);
    let p2 = q(-scale * b);
    let (n1, n2) = (q(scale * a), q(scale * b));
    [p1 * p2, p1 * n2, n1 * p2, n1 * n2]
}

fn validate(h: &RealChannel, dist: &[(SignalVector, f64)]) -> Result<()> {
    let mut total = 0.0;
    for (x, p) in dist {
        h.check_dim(x.as_slice().len())?;
        if !p.is_finite() || *p < 0.0 {
            return Err(Error::InvalidMass(*p));
        }
        total += p;
    }
    if (total - 1.0).abs() > MASS_TOLERANCE {
        return Err(Error::NotNormalized(total));
    }
    Ok(())
}

/// `P[y]` for each output in [`OUTPUTS`] order.
pub fn output_distribution(h: &RealChannel, dist: &[(SignalVector, f64)], sigma2: f64) -> Result<[f64; 4]> {
    validate(h, dist)?;
    let scale = noise_scale(sigma2)?;
    let mut py = [0.0; 4];
    for (x, p) in dist {
        let t = transition(h, x.as_slice(), scale);
        for (acc, ty) in py.iter_mut().zip(t) {
            *acc += p * ty;
        }
    }
    Ok(py)
}

/// `I(x; y) = Σ_x Σ_y P[x] P[y|x] log2(P[y|x] / P[y])` in bits.
///
/// `dist` lists input vectors with their probabilities; any subset of the
/// lattice may be used. Limited to `M ≤ 3`.
pub fn mi_bruteforce(h: &RealChannel, dist: &[(SignalVector, f64)], sigma2: f64) -> Result<f64> {
    if h.antennas() > MAX_ORACLE_ANTENNAS {
        return Err(Error::AntennaCount { m: h.antennas(), min: 1, max: MAX_ORACLE_ANTENNAS });
    }
    validate(h, dist)?;
    let scale = noise_scale(sigma2)?;
    let rows: Vec<[f64; 4]> = dist.iter().map(|(x, _)| transition(h, x.as_slice(), scale)).collect();
    let mut py = [0.0; 4];
    for ((_, p), row) in dist.iter().zip(&rows) {
        for (acc, ty) in py.iter_mut().zip(row) {
            *acc += p * ty;
        }
    }
    let mut mi = 0.0;
    for ((_, p), row) in dist.iter().zip(&rows) {
        if *p == 0.0 {
            continue;
        }
        for (ty, y) in row.iter().zip(py) {
            if *ty > 0.0 {
                mi += p * ty * libm::log2(ty / y);
            }
        }
    }
    Ok(mi.max(0.0))
}
