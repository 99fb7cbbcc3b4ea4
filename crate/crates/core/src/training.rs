//! Learned subset selection with finite-rate feedback.
//!
//! The transmitter sends each candidate subset's representative `L` times.
//! The receiver never estimates the channel; it counts how often each output
//! bit is `+1`, plugs the empirical frequencies into the binary entropy, picks
//! the subset with the smallest estimate, and feeds its index back over an
//! error-free link. Full training covers every subset; dominant-set training
//! only the full-power subsets `X_{2M,k} ⊂ {-1,+1}^{2M}`.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use rand_core::RngCore;

use crate::capacity::{codebook_size, feedback_bits, FeedbackMode};
use crate::channel::{noise_scale, realify, RealChannel};
use crate::constellation::{check_antennas, enumerate_constellation, Constellation, SignalVector, SubsetId};
use crate::montecarlo::{channel_draw, check_grid, min_entropy, noise_variance, projections, Moments};
use crate::rng::{standard_normal, substream};
use crate::special::{hb, hb_of_q};
use crate::{Error, Result};

const NOISE_STREAM: u64 = 0x4E_4F_49_53; // "NOIS"

#[derive(Debug, Clone, PartialEq)]
pub struct TrainingConfig {
    pub antennas: usize,
    pub sigma2: f64,
    /// Repetitions `L` of each training vector.
    pub repetitions: usize,
    pub mode: FeedbackMode,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrainingOutcome {
    pub selected: SubsetId,
    /// Number of training channel uses.
    pub training_length: u64,
    pub feedback_bits: f64,
    /// Estimated `H_b^{X_{u,k}}` for every trained subset, in training order.
    pub empirical_entropies: Vec<(SubsetId, f64)>,
}

/// Training channel uses: `((9^M - 1)/4) L` for full, `4^{M-1} L` for dominant.
pub fn training_length(antennas: usize, mode: FeedbackMode, repetitions: usize) -> u64 {
    codebook_size(antennas, mode) * repetitions as u64
}

/// One channel use: `y = sign(Hx + z)` with `z_n ~ N(0, σ²/2)`, `sign(0) = +1`.
pub fn simulate_output<R: RngCore + ?Sized>(
    h: &RealChannel,
    x: &SignalVector,
    sigma2: f64,
    rng: &mut R,
) -> Result<[i8; 2]> {
    h.check_dim(x.as_slice().len())?;
    noise_scale(sigma2)?;
    let std = libm::sqrt(sigma2 / 2.0);
    let (a, b) = h.project(x.as_slice());
    let y1 = a + std * standard_normal(rng);
    let y2 = b + std * standard_normal(rng);
    Ok([sign(y1), sign(y2)])
}

#[inline]
fn sign(v: f64) -> i8 {
    if v >= 0.0 {
        1
    } else {
        -1
    }
}

/// Binary entropy of an empirical frequency `count / L`.
///
/// A frequency of exactly 0 or 1 is replaced by `1/(2L)` or `1 - 1/(2L)`, so a
/// handful of agreeing samples cannot make a subset look noiseless.
pub fn empirical_bit_entropy(count: usize, repetitions: usize) -> f64 {
    let l = repetitions as f64;
    let p = if count == 0 {
        0.5 / l
    } else if count >= repetitions {
        1.0 - 0.5 / l
    } else {
        count as f64 / l
    };
    hb(p)
}

fn train_subsets<R: RngCore + ?Sized>(
    h: &RealChannel,
    sigma2: f64,
    cons: &Constellation,
    range: Range<usize>,
    repetitions: usize,
    rng: &mut R,
) -> Result<(usize, Vec<(SubsetId, f64)>)> {
    h.check_dim(cons.dim())?;
    noise_scale(sigma2)?;
    if repetitions == 0 {
        return Err(Error::InvalidConfig("training needs at least one repetition"));
    }
    let std = libm::sqrt(sigma2 / 2.0);
    let mut estimates = Vec::with_capacity(range.len());
    let mut best = (range.start, f64::INFINITY);
    for idx in range {
        let (a, b) = h.project(cons.representative(idx));
        let (mut c1, mut c2) = (0usize, 0usize);
        for _ in 0..repetitions {
            c1 += (a + std * standard_normal(rng) >= 0.0) as usize;
            c2 += (b + std * standard_normal(rng) >= 0.0) as usize;
        }
        let est = empirical_bit_entropy(c1, repetitions) + empirical_bit_entropy(c2, repetitions);
        if est < best.1 {
            best = (idx, est);
        }
        estimates.push((cons.id_at(idx), est));
    }
    Ok((best.0, estimates))
}

/// Trains every subset representative `L` times and picks the smallest
/// empirical entropy (ties: smallest `u`, then `k`).
pub fn full_training<R: RngCore + ?Sized>(
    h: &RealChannel,
    sigma2: f64,
    cons: &Constellation,
    repetitions: usize,
    rng: &mut R,
) -> Result<TrainingOutcome> {
    let m = cons.antennas();
    let (best, empirical_entropies) = train_subsets(h, sigma2, cons, 0..cons.len(), repetitions, rng)?;
    Ok(TrainingOutcome {
        selected: cons.id_at(best),
        training_length: training_length(m, FeedbackMode::Full, repetitions),
        feedback_bits: feedback_bits(m, FeedbackMode::Full),
        empirical_entropies,
    })
}

/// Trains only the full-power subsets `X_{2M,k}` and picks among them.
pub fn dominant_training<R: RngCore + ?Sized>(
    h: &RealChannel,
    sigma2: f64,
    cons: &Constellation,
    repetitions: usize,
    rng: &mut R,
) -> Result<TrainingOutcome> {
    let m = cons.antennas();
    let range = cons.level_range(cons.dim());
    let (best, empirical_entropies) = train_subsets(h, sigma2, cons, range, repetitions, rng)?;
    Ok(TrainingOutcome {
        selected: cons.id_at(best),
        training_length: training_length(m, FeedbackMode::Dominant, repetitions),
        feedback_bits: feedback_bits(m, FeedbackMode::Dominant),
        empirical_entropies,
    })
}

pub fn train<R: RngCore + ?Sized>(
    mode: FeedbackMode,
    h: &RealChannel,
    sigma2: f64,
    cons: &Constellation,
    repetitions: usize,
    rng: &mut R,
) -> Result<TrainingOutcome> {
    match mode {
        FeedbackMode::Full => full_training(h, sigma2, cons, repetitions, rng),
        FeedbackMode::Dominant => dominant_training(h, sigma2, cons, repetitions, rng),
    }
}

/// Runs one training round described by `cfg` on channel `h`.
pub fn run_training(cfg: &TrainingConfig, h: &RealChannel, cons: &Constellation) -> Result<TrainingOutcome> {
    if cfg.antennas != cons.antennas() {
        return Err(Error::DimensionMismatch { expected: cons.antennas(), found: cfg.antennas });
    }
    let mut rng = substream(cfg.seed, &[NOISE_STREAM]);
    train(cfg.mode, h, cfg.sigma2, cons, cfg.repetitions, &mut rng)
}

/// Rate of committing to `selected`: `2 - H_b^{X_{u,k}}` with the true entropy.
pub fn achieved_rate(h: &RealChannel, sigma2: f64, cons: &Constellation, selected: SubsetId) -> Result<f64> {
    h.check_dim(cons.dim())?;
    let scale = noise_scale(sigma2)?;
    let idx = cons.index_of(selected)?;
    Ok(2.0 - h.entropy_scaled(cons.representative(idx), scale))
}

/// Bit-exact mapping between subsets and feedback words.
///
/// Full mode sends the global `(u, k)` position in `⌈log2((9^M-1)/4)⌉` bits;
/// dominant mode sends `k - 1` in `2M - 2` bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FeedbackCodebook {
    pub mode: FeedbackMode,
    pub antennas: usize,
}

impl FeedbackCodebook {
    pub fn new(antennas: usize, mode: FeedbackMode) -> Result<Self> {
        check_antennas(antennas)?;
        Ok(Self { mode, antennas })
    }

    pub fn size(&self) -> u64 {
        codebook_size(self.antennas, self.mode)
    }

    /// Width of a feedback word.
    pub fn bits(&self) -> u32 {
        let n = self.size();
        if n <= 1 {
            0
        } else {
            64 - (n - 1).leading_zeros()
        }
    }

    pub fn encode(&self, cons: &Constellation, id: SubsetId) -> Result<u64> {
        self.check(cons)?;
        let idx = cons.index_of(id)?;
        match self.mode {
            FeedbackMode::Full => Ok(idx as u64),
            FeedbackMode::Dominant if id.u == cons.dim() => Ok((id.k - 1) as u64),
            FeedbackMode::Dominant => Err(Error::UnknownSubset { u: id.u, k: id.k }),
        }
    }

    pub fn decode(&self, cons: &Constellation, word: u64) -> Result<SubsetId> {
        self.check(cons)?;
        if word >= self.size() {
            return Err(Error::UnknownFeedbackWord(word));
        }
        Ok(match self.mode {
            FeedbackMode::Full => cons.id_at(word as usize),
            FeedbackMode::Dominant => SubsetId::new(cons.dim(), word as usize + 1),
        })
    }

    /// Word as `bits()` booleans, most significant first.
    pub fn to_bits(&self, word: u64) -> Vec<bool> {
        (0..self.bits()).rev().map(|b| (word >> b) & 1 == 1).collect()
    }

    pub fn from_bits(&self, bits: &[bool]) -> u64 {
        bits.iter().fold(0, |acc, &b| (acc << 1) | b as u64)
    }

    fn check(&self, cons: &Constellation) -> Result<()> {
        if cons.antennas() == self.antennas {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: self.antennas, found: cons.antennas() })
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrainingSweepConfig {
    pub antennas: usize,
    pub snr_grid_db: Vec<f64>,
    pub num_channels: usize,
    pub seed: u64,
    pub modes: Vec<FeedbackMode>,
    pub repetitions: Vec<usize>,
}

impl TrainingSweepConfig {
    pub fn validate(&self) -> Result<()> {
        check_antennas(self.antennas)?;
        check_grid(&self.snr_grid_db)?;
        if self.num_channels == 0 {
            return Err(Error::InvalidConfig("num_channels must be at least 1"));
        }
        if self.modes.is_empty() || self.repetitions.is_empty() {
            return Err(Error::InvalidConfig("need at least one training mode and one L"));
        }
        if self.repetitions.contains(&0) {
            return Err(Error::InvalidConfig("training needs at least one repetition"));
        }
        Ok(())
    }
}

/// One row of a training sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrainingPoint {
    pub mode: FeedbackMode,
    pub repetitions: usize,
    pub snr_db: f64,
    pub mean_rate: f64,
    pub rate_stderr: f64,
    /// Ergodic capacity on the same draws.
    pub capacity: f64,
    pub gap: f64,
    pub training_length: u64,
    pub feedback_bits: f64,
}

/// Mean achieved rate of each (mode, L) over Rayleigh draws, next to the
/// capacity on the same draws.
///
/// Channel draws match [`crate::montecarlo::ergodic_sweep`] for the same
/// seed. Training noise for draw `i`, SNR index `s` and repetition index `r`
/// comes from `substream(seed, [NOISE_STREAM, i, s, r])` and is shared by all
/// modes.
pub fn ergodic_training_sweep(cfg: &TrainingSweepConfig) -> Result<Vec<TrainingPoint>> {
    cfg.validate()?;
    let m = cfg.antennas;
    let cons = enumerate_constellation(m)?;
    let sigmas: Vec<f64> = cfg.snr_grid_db.iter().map(|&s| noise_variance(m, s)).collect();
    let scales: Vec<f64> = sigmas.iter().map(|&s| noise_scale(s)).collect::<Result<_>>()?;

    let n_snr = sigmas.len();
    let mut capacity = vec![Moments::default(); n_snr];
    // rates[mode][rep][snr]
    let mut rates = vec![vec![vec![Moments::default(); n_snr]; cfg.repetitions.len()]; cfg.modes.len()];

    for draw in 0..cfg.num_channels as u64 {
        let h = realify(&channel_draw(m, cfg.seed, draw));
        let proj = projections(&h, &cons);
        for si in 0..n_snr {
            let cap = 2.0 - min_entropy(&proj, scales[si]).1;
            capacity[si].push(cap);
            for (ri, &l) in cfg.repetitions.iter().enumerate() {
                for (mi, &mode) in cfg.modes.iter().enumerate() {
                    let mut rng = substream(cfg.seed, &[NOISE_STREAM, draw, si as u64, ri as u64]);
                    let outcome = train(mode, &h, sigmas[si], &cons, l, &mut rng)?;
                    let (a, b) = proj[cons.index_of(outcome.selected)?];
                    let rate = 2.0 - hb_of_q(scales[si] * a) - hb_of_q(scales[si] * b);
                    rates[mi][ri][si].push(rate);
                }
            }
        }
    }

    let mut out = Vec::new();
    for (mi, &mode) in cfg.modes.iter().enumerate() {
        for (ri, &l) in cfg.repetitions.iter().enumerate() {
            for si in 0..n_snr {
                let r = rates[mi][ri][si];
                let c = capacity[si].mean();
                out.push(TrainingPoint {
                    mode,
                    repetitions: l,
                    snr_db: cfg.snr_grid_db[si],
                    mean_rate: r.mean(),
                    rate_stderr: r.stderr(),
                    capacity: c,
                    gap: c - r.mean(),
                    training_length: training_length(m, mode, l),
                    feedback_bits: feedback_bits(m, mode),
                });
            }
        }
    }
    Ok(out)
}
