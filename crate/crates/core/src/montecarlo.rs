//! Ergodic capacity over i.i.d. Rayleigh fading.
//!
//! All variants are evaluated on the same channel draws. Draw `i` uses the
//! random stream `substream(seed, [CHANNEL_STREAM, i])`, so results do not
//! depend on evaluation order. SNR follows the `P_t = 2M` convention:
//! `SNR = 2M/σ²`.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use rand_core::RngCore;

use crate::capacity::{capacity_infinite_dacs_at, PowerBudget};
use crate::channel::{noise_scale, realify, ComplexChannel, RealChannel};
use crate::constellation::{check_antennas, enumerate_constellation, Constellation};
use crate::rng::{standard_normal, substream};
use crate::special::hb_of_q;
use crate::{Error, Result};

pub(crate) const CHANNEL_STREAM: u64 = 0x43_48_41_4E; // "CHAN"

/// Capacity curves a sweep can compute.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    /// One-bit ADCs and DACs with full CSI, `P_t = 2M`.
    OneBitBoth,
    /// One-bit ADCs with infinite-precision DACs (QPSK + MRT at power `2M`).
    OneBitAdcInfDac,
    /// One-bit ADCs and DACs, receiver CSI only (single antenna).
    SisoCsirOnly,
}

impl Variant {
    pub const ALL: [Variant; 3] = [Variant::OneBitBoth, Variant::OneBitAdcInfDac, Variant::SisoCsirOnly];

    pub fn as_str(self) -> &'static str {
        match self {
            Variant::OneBitBoth => "onebit_both_csit",
            Variant::OneBitAdcInfDac => "onebit_adc_inf_dac",
            Variant::SisoCsirOnly => "siso_csir_only",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub antennas: usize,
    pub snr_grid_db: Vec<f64>,
    pub num_channels: usize,
    pub seed: u64,
    pub variants: Vec<Variant>,
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        check_antennas(self.antennas)?;
        check_grid(&self.snr_grid_db)?;
        if self.num_channels == 0 {
            return Err(Error::InvalidConfig("num_channels must be at least 1"));
        }
        if self.variants.is_empty() {
            return Err(Error::InvalidConfig("no variants requested"));
        }
        if self.antennas != 1 && self.variants.contains(&Variant::SisoCsirOnly) {
            return Err(Error::RequiresSiso(self.antennas));
        }
        Ok(())
    }
}

pub(crate) fn check_grid(grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::InvalidConfig("SNR grid is empty"));
    }
    if let Some(v) = grid.iter().find(|v| !v.is_finite()) {
        return Err(Error::NonFinite(*v));
    }
    if grid.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::InvalidConfig("SNR grid must be sorted ascending"));
    }
    Ok(())
}

/// Mean and standard error at one SNR point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointStat {
    pub snr_db: f64,
    pub mean: f64,
    /// Sample standard deviation over `√num_channels`.
    pub stderr: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Curve {
    pub variant: Variant,
    pub points: Vec<PointStat>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub antennas: usize,
    pub num_channels: usize,
    pub seed: u64,
    pub curves: Vec<Curve>,
}

impl SweepResult {
    pub fn curve(&self, variant: Variant) -> Option<&[PointStat]> {
        self.curves.iter().find(|c| c.variant == variant).map(|c| c.points.as_slice())
    }
}

/// Noise variance for a given SNR in dB under `P_t = 2M`.
pub fn noise_variance(antennas: usize, snr_db: f64) -> f64 {
    2.0 * antennas as f64 / libm::pow(10.0, snr_db / 10.0)
}

/// `h̄ ~ CN(0, I_M)`: real and imaginary parts independent `N(0, 1/2)`.
pub fn sample_channel<R: RngCore + ?Sized>(antennas: usize, rng: &mut R) -> ComplexChannel {
    let s = core::f64::consts::FRAC_1_SQRT_2;
    let entries = (0..antennas)
        .map(|_| {
            let re = standard_normal(rng) * s;
            let im = standard_normal(rng) * s;
            Complex64::new(re, im)
        })
        .collect();
    ComplexChannel::new(entries).expect("Gaussian samples are finite")
}

/// Channel for draw `index` of a run seeded with `seed`.
pub fn channel_draw(antennas: usize, seed: u64, index: u64) -> ComplexChannel {
    sample_channel(antennas, &mut substream(seed, &[CHANNEL_STREAM, index]))
}

/// `(h1ᵀx, h2ᵀx)` for every subset representative; reused across SNR points.
pub(crate) fn projections(h: &RealChannel, cons: &Constellation) -> Vec<(f64, f64)> {
    (0..cons.len()).map(|i| h.project(cons.representative(i))).collect()
}

/// `(index, min entropy)` over `proj[range]`, first index on ties.
pub(crate) fn min_entropy(proj: &[(f64, f64)], scale: f64) -> (usize, f64) {
    let mut best = (0, f64::INFINITY);
    for (i, &(a, b)) in proj.iter().enumerate() {
        let e = hb_of_q(scale * a) + hb_of_q(scale * b);
        if e < best.1 {
            best = (i, e);
        }
    }
    best
}

/// Welford accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct Moments {
    n: usize,
    mean: f64,
    m2: f64,
}

impl Moments {
    pub(crate) fn push(&mut self, v: f64) {
        self.n += 1;
        let d = v - self.mean;
        self.mean += d / self.n as f64;
        self.m2 += d * (v - self.mean);
    }

    pub(crate) fn mean(&self) -> f64 {
        self.mean
    }

    pub(crate) fn stderr(&self) -> f64 {
        if self.n < 2 {
            return 0.0;
        }
        libm::sqrt(self.m2 / (self.n - 1) as f64 / self.n as f64)
    }
}

/// Monte Carlo ergodic capacity for every requested variant and SNR point.
pub fn ergodic_sweep(cfg: &SweepConfig) -> Result<SweepResult> {
    cfg.validate()?;
    let m = cfg.antennas;
    let mut variants = cfg.variants.clone();
    variants.sort();
    variants.dedup();

    let cons = if variants.contains(&Variant::OneBitBoth) { Some(enumerate_constellation(m)?) } else { None };
    let scales: Vec<f64> = cfg.snr_grid_db.iter().map(|&s| noise_scale(noise_variance(m, s))).collect::<Result<_>>()?;
    let mut acc = vec![vec![Moments::default(); scales.len()]; variants.len()];

    for draw in 0..cfg.num_channels as u64 {
        let hc = channel_draw(m, cfg.seed, draw);
        let hr = realify(&hc);
        let proj = cons.as_ref().map(|c| projections(&hr, c));
        for (vi, variant) in variants.iter().enumerate() {
            for (si, &scale) in scales.iter().enumerate() {
                let value = match variant {
                    Variant::OneBitBoth => 2.0 - min_entropy(proj.as_deref().expect("constellation built"), scale).1,
                    Variant::OneBitAdcInfDac => {
                        capacity_infinite_dacs_at(&hc, noise_variance(m, cfg.snr_grid_db[si]), PowerBudget::full(m))?
                    }
                    Variant::SisoCsirOnly => 2.0 - hr.entropy_scaled(&[1, 1], scale),
                };
                acc[vi][si].push(value);
            }
        }
    }

    let curves = variants
        .iter()
        .zip(acc)
        .map(|(&variant, moments)| Curve {
            variant,
            points: cfg
                .snr_grid_db
                .iter()
                .zip(moments)
                .map(|(&snr_db, mo)| PointStat { snr_db, mean: mo.mean(), stderr: mo.stderr() })
                .collect(),
        })
        .collect();
    Ok(SweepResult { antennas: m, num_channels: cfg.num_channels, seed: cfg.seed, curves })
}

/// SNR (dB) at which a curve first reaches `level`, by linear interpolation
/// between grid points. `None` if the curve never reaches it.
pub fn crossing_snr_db(points: &[PointStat], level: f64) -> Option<f64> {
    let first = points.first()?;
    if first.mean >= level {
        return Some(first.snr_db);
    }
    points.windows(2).find(|w| w[1].mean >= level).map(|w| {
        let (a, b) = (w[0], w[1]);
        a.snr_db + (level - a.mean) * (b.snr_db - a.snr_db) / (b.mean - a.mean)
    })
}

/// Horizontal distance in dB between two capacity curves at `level`:
/// positive when `lagging` needs more SNR than `leading`.
pub fn horizontal_gap_db(leading: &[PointStat], lagging: &[PointStat], level: f64) -> Option<f64> {
    Some(crossing_snr_db(lagging, level)? - crossing_snr_db(leading, level)?)
}
