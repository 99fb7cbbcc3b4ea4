//! Closed-form capacities, the capacity LP, and one-bit DAC loss analysis.
//!
//! With inputs drawn uniformly inside each rotational subset, the channel
//! output is uniform over its four values and the mutual information reduces
//! to `2 - Σ p_{u,k} H_b^{X_{u,k}}`. Capacity is therefore a linear program in
//! the subset masses with two non-sign constraints (total mass and average
//! power), whose optimal vertices have at most two nonzero masses.

use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, SQRT_2};

use crate::channel::{noise_scale, realify, ComplexChannel, RealChannel};
use crate::constellation::{Constellation, SignalVector, SubsetId};
use crate::special::hb_of_q;
use crate::{Error, Result};

/// Absolute slack used when checking that masses sum to one and respect the budget.
pub const MASS_TOLERANCE: f64 = 1e-9;
// Slack for comparing a power level against the budget.
const LEVEL_EPS: f64 = 1e-12;

/// Average power constraint `P_t ∈ (0, 2M]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct PowerBudget(f64);

impl PowerBudget {
    pub fn new(pt: f64, antennas: usize) -> Result<Self> {
        let max = 2.0 * antennas as f64;
        if !pt.is_finite() || pt <= 0.0 || pt > max {
            return Err(Error::PowerBudget { pt, min: 0.0, max });
        }
        Ok(Self(pt))
    }

    /// `P_t = 2M`, enough to use any subset on its own.
    pub fn full(antennas: usize) -> Self {
        Self(2.0 * antennas as f64)
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// Probability masses `p_{u,k}` over rotational subsets; the four members of a
/// subset share its mass equally.
#[derive(Debug, Clone, PartialEq)]
pub struct InputDistribution {
    masses: Vec<(SubsetId, f64)>,
}

impl InputDistribution {
    pub fn new(masses: Vec<(SubsetId, f64)>) -> Result<Self> {
        if let Some(&(_, p)) = masses.iter().find(|(_, p)| !p.is_finite() || *p < 0.0) {
            return Err(Error::InvalidMass(p));
        }
        let total: f64 = masses.iter().map(|(_, p)| p).sum();
        if (total - 1.0).abs() > MASS_TOLERANCE {
            return Err(Error::NotNormalized(total));
        }
        Ok(Self { masses })
    }

    /// Like [`InputDistribution::new`], additionally enforcing `E‖x‖² ≤ P_t`.
    pub fn with_budget(masses: Vec<(SubsetId, f64)>, budget: PowerBudget) -> Result<Self> {
        let dist = Self::new(masses)?;
        let power = dist.average_power();
        if power > budget.value() + MASS_TOLERANCE {
            return Err(Error::PowerBudget { pt: power, min: 0.0, max: budget.value() });
        }
        Ok(dist)
    }

    pub fn masses(&self) -> &[(SubsetId, f64)] {
        &self.masses
    }

    pub fn mass(&self, id: SubsetId) -> f64 {
        self.masses.iter().filter(|(i, _)| *i == id).map(|(_, p)| p).sum()
    }

    /// Subsets carrying positive mass.
    pub fn support(&self) -> Vec<SubsetId> {
        self.masses.iter().filter(|(_, p)| *p > 0.0).map(|(i, _)| *i).collect()
    }

    pub fn average_power(&self) -> f64 {
        self.masses.iter().map(|(id, p)| id.u as f64 * p).sum()
    }

    /// Per-vector distribution: each member of `X_{u,k}` gets `p_{u,k}/4`.
    pub fn expand(&self, cons: &Constellation) -> Result<Vec<(SignalVector, f64)>> {
        let mut out = Vec::with_capacity(4 * self.masses.len());
        for &(id, p) in &self.masses {
            let subset = cons.subset(id)?;
            out.extend(subset.members().into_iter().map(|x| (x, p / 4.0)));
        }
        Ok(out)
    }

    /// `Σ p_{u,k} H_b^{X_{u,k}}` given per-subset entropies indexed like `cons`.
    pub fn expected_entropy(&self, cons: &Constellation, entropies: &[f64]) -> Result<f64> {
        let mut acc = 0.0;
        for &(id, p) in &self.masses {
            acc += p * entropies[cons.index_of(id)?];
        }
        Ok(acc)
    }
}

/// Which optimal-input structure produced a [`CapacityResult`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    /// Single antenna, uniform over the unit-power subset (spatial modulation).
    SisoSpatialModulation,
    /// Single antenna, time sharing between the two subsets.
    SisoTimeSharing,
    /// Single antenna, uniform over the power-2 subset (QPSK).
    SisoQpsk,
    /// One rotational subset used on its own.
    SingleSubset,
    /// Two subsets time-shared with the power constraint active.
    TimeSharing,
}

impl Regime {
    pub fn as_str(self) -> &'static str {
        match self {
            Regime::SisoSpatialModulation => "siso-spatial-modulation",
            Regime::SisoTimeSharing => "siso-time-sharing",
            Regime::SisoQpsk => "siso-qpsk",
            Regime::SingleSubset => "single-subset",
            Regime::TimeSharing => "time-sharing",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CapacityResult {
    pub capacity_bits: f64,
    pub distribution: InputDistribution,
    pub regime: Regime,
}

impl CapacityResult {
    pub fn support(&self) -> Vec<SubsetId> {
        self.distribution.support()
    }
}

/// A basic feasible solution of the capacity LP: one or two subsets.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LpVertex {
    /// `(global subset index, mass)`.
    pub first: (usize, f64),
    pub second: Option<(usize, f64)>,
    /// `Σ p H_b`, so capacity is `2 - objective`.
    pub objective: f64,
}

/// Solves `min Σ p_i e_i  s.t. Σ u_i p_i ≤ P_t, Σ p_i = 1, p ≥ 0` over the
/// subsets of `cons` by enumerating basic solutions.
///
/// Only the cheapest subset of each power level can appear in an optimal
/// vertex (the constraints see `k` only through `u`), so candidates are the
/// feasible per-level minimizers as singletons, plus every pair of level
/// minimizers straddling `P_t` mixed to make the power constraint tight.
/// Ties go to the earlier candidate: singletons before pairs, smaller `u`
/// first, smaller `k` within a level.
pub fn solve_lp(cons: &Constellation, entropies: &[f64], pt: f64) -> Result<LpVertex> {
    if entropies.len() != cons.len() {
        return Err(Error::DimensionMismatch { expected: cons.len(), found: entropies.len() });
    }
    let max = cons.dim() as f64;
    if !pt.is_finite() || pt < 1.0 || pt > max {
        return Err(Error::PowerBudget { pt, min: 1.0, max });
    }

    // (level, index, entropy) of each level's minimizer.
    let minimizers: Vec<(usize, usize, f64)> = (1..=cons.dim())
        .filter_map(|u| {
            let mut best: Option<(usize, f64)> = None;
            for i in cons.level_range(u) {
                if best.is_none_or(|(_, e)| entropies[i] < e) {
                    best = Some((i, entropies[i]));
                }
            }
            best.map(|(i, e)| (u, i, e))
        })
        .collect();

    let mut best: Option<LpVertex> = None;
    let mut offer = |v: LpVertex| {
        if best.is_none_or(|b| v.objective < b.objective) {
            best = Some(v);
        }
    };
    for &(u, i, e) in &minimizers {
        if u as f64 <= pt + LEVEL_EPS {
            offer(LpVertex { first: (i, 1.0), second: None, objective: e });
        }
    }
    for &(u1, i1, e1) in minimizers.iter().filter(|m| (m.0 as f64) < pt - LEVEL_EPS) {
        for &(u2, i2, e2) in minimizers.iter().filter(|m| (m.0 as f64) > pt + LEVEL_EPS) {
            let span = (u2 - u1) as f64;
            let p1 = (u2 as f64 - pt) / span;
            let p2 = (pt - u1 as f64) / span;
            offer(LpVertex { first: (i1, p1), second: Some((i2, p2)), objective: p1 * e1 + p2 * e2 });
        }
    }
    // pt >= 1 guarantees the level-1 singleton is feasible.
    Ok(best.expect("level 1 is always feasible"))
}

/// Capacity for a fixed channel, `2 - min Σ p_{u,k} H_b^{X_{u,k}}` over
/// feasible subset masses.
pub fn miso_capacity(
    h: &RealChannel,
    sigma2: f64,
    budget: PowerBudget,
    cons: &Constellation,
) -> Result<CapacityResult> {
    let entropies = h.entropy_profile(cons, sigma2)?;
    let v = solve_lp(cons, &entropies, budget.value())?;
    let mut masses = alloc::vec![(cons.id_at(v.first.0), v.first.1)];
    let regime = match v.second {
        Some((i, p)) => {
            masses.push((cons.id_at(i), p));
            Regime::TimeSharing
        }
        None => Regime::SingleSubset,
    };
    Ok(CapacityResult { capacity_bits: 2.0 - v.objective, distribution: InputDistribution { masses }, regime })
}

/// `(H_b^{X_1}, H_b^{X_2})` of a single-antenna channel.
fn siso_entropies(h: &ComplexChannel, sigma2: f64) -> Result<(f64, f64)> {
    if h.antennas() != 1 {
        return Err(Error::RequiresSiso(h.antennas()));
    }
    let scale = noise_scale(sigma2)?;
    let hr = realify(h);
    Ok((hr.entropy_scaled(&[1, 0], scale), hr.entropy_scaled(&[1, 1], scale)))
}

fn check_siso_budget(budget: PowerBudget) -> Result<f64> {
    let pt = budget.value();
    if (1.0..=2.0).contains(&pt) {
        Ok(pt)
    } else {
        Err(Error::PowerBudget { pt, min: 1.0, max: 2.0 })
    }
}

const X1: SubsetId = SubsetId::new(1, 1);
const X2: SubsetId = SubsetId::new(2, 1);

/// Single-antenna capacity in its three-case closed form.
pub fn siso_capacity(h: &ComplexChannel, sigma2: f64, budget: PowerBudget) -> Result<CapacityResult> {
    let (e1, e2) = siso_entropies(h, sigma2)?;
    let pt = check_siso_budget(budget)?;
    let (p1, p2, regime) = if e1 <= e2 || pt == 1.0 {
        (1.0, 0.0, Regime::SisoSpatialModulation)
    } else if pt < 2.0 {
        (2.0 - pt, pt - 1.0, Regime::SisoTimeSharing)
    } else {
        (0.0, 1.0, Regime::SisoQpsk)
    };
    let capacity_bits = match regime {
        Regime::SisoSpatialModulation => 2.0 - e1,
        Regime::SisoQpsk => 2.0 - e2,
        _ => 2.0 - p1 * e1 - p2 * e2,
    };
    Ok(CapacityResult {
        capacity_bits,
        distribution: InputDistribution { masses: alloc::vec![(X1, p1), (X2, p2)] },
        regime,
    })
}

/// Capacity with `P_t = 2M`: the best single subset, `2 - min_{u,k} H_b^{X_{u,k}}`.
/// Ties go to the smallest `u`, then the smallest `k`.
pub fn capacity_full_power(h: &RealChannel, sigma2: f64, cons: &Constellation) -> Result<(f64, SubsetId)> {
    h.check_dim(cons.dim())?;
    let scale = noise_scale(sigma2)?;
    let (idx, e) = best_subset(h, scale, cons, 0..cons.len());
    Ok((2.0 - e, cons.id_at(idx)))
}

pub(crate) fn best_subset(
    h: &RealChannel,
    scale: f64,
    cons: &Constellation,
    range: core::ops::Range<usize>,
) -> (usize, f64) {
    let mut best = (range.start, f64::INFINITY);
    for i in range {
        let e = h.entropy_scaled(cons.representative(i), scale);
        if e < best.1 {
            best = (i, e);
        }
    }
    best
}

/// Feedback scheme used to report the selected subset to the transmitter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FeedbackMode {
    /// Any of the `(9^M - 1)/4` subsets.
    Full,
    /// Only the `4^{M-1}` full-power subsets `X_{2M,k}`.
    Dominant,
}

impl FeedbackMode {
    pub fn as_str(self) -> &'static str {
        match self {
            FeedbackMode::Full => "full",
            FeedbackMode::Dominant => "dominant",
        }
    }
}

/// Number of subsets the receiver chooses from under `mode`.
pub fn codebook_size(m: usize, mode: FeedbackMode) -> u64 {
    match mode {
        FeedbackMode::Full => (9u64.pow(m as u32) - 1) / 4,
        FeedbackMode::Dominant => 4u64.pow(m as u32 - 1),
    }
}

/// `log2((9^M - 1)/4)` for full feedback, `2M - 2` for dominant-set feedback.
pub fn feedback_bits(m: usize, mode: FeedbackMode) -> f64 {
    match mode {
        FeedbackMode::Full => libm::log2(codebook_size(m, mode) as f64),
        FeedbackMode::Dominant => (2 * m - 2) as f64,
    }
}

/// One-bit ADC, infinite-precision DAC capacity, `2(1 - H_b(Q(√(2‖h‖²/σ²))))`.
/// QPSK with MRT precoding; the single-antenna case is the same formula.
/// Transmit power is 2 (one QPSK symbol of unit-amplitude quadratures).
pub fn capacity_infinite_dacs(h: &ComplexChannel, sigma2: f64) -> Result<f64> {
    let scale = noise_scale(sigma2)?;
    Ok(2.0 * (1.0 - hb_of_q(scale * libm::sqrt(h.norm_sqr()))))
}

/// [`capacity_infinite_dacs`] with QPSK + MRT at transmit power `P_t`:
/// `2(1 - H_b(Q(√(P_t ‖h‖²/σ²))))`. Equal to it when `P_t = 2`; this is the
/// baseline to compare against one-bit DACs running at the same budget.
pub fn capacity_infinite_dacs_at(h: &ComplexChannel, sigma2: f64, budget: PowerBudget) -> Result<f64> {
    let scale = noise_scale(sigma2)?;
    let gain = libm::sqrt(0.5 * budget.value() * h.norm_sqr());
    Ok(2.0 * (1.0 - hb_of_q(scale * gain)))
}

/// Single-antenna capacity without transmitter CSI: use as much of the
/// power-2 subset as the budget allows.
pub fn csir_only_siso_capacity(h: &ComplexChannel, sigma2: f64, budget: PowerBudget) -> Result<f64> {
    let (e1, e2) = siso_entropies(h, sigma2)?;
    let pt = check_siso_budget(budget)?;
    Ok(if pt == 1.0 {
        2.0 - e1
    } else if pt < 2.0 {
        2.0 - (2.0 - pt) * e1 - (pt - 1.0) * e2
    } else {
        2.0 - e2
    })
}

/// Loss from one-bit DACs at `P_t = 2`:
/// `min{H_b^{X_1}, H_b^{X_2}} - 2 H_b(Q(√(2‖h‖²/σ²)))`.
pub fn dac_loss_siso(h: &ComplexChannel, sigma2: f64) -> Result<f64> {
    let (e1, e2) = siso_entropies(h, sigma2)?;
    let scale = noise_scale(sigma2)?;
    Ok(e1.min(e2) - 2.0 * hb_of_q(scale * libm::sqrt(h.norm_sqr())))
}

/// Subset picked by the phase-threshold rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ThresholdChoice {
    /// Unit power, `{±1, ±j}`.
    X1,
    /// Power two, `{±1 ± j}`.
    X2,
}

/// Channel phase folded into `[0, π/4]` using the 90° rotations and the
/// real/imaginary swap that leave both single-antenna subsets invariant.
pub fn folded_phase(re: f64, im: f64) -> f64 {
    let mut theta = libm::fmod(libm::atan2(im, re), FRAC_PI_2);
    if theta < 0.0 {
        theta += FRAC_PI_2;
    }
    if theta > FRAC_PI_4 {
        theta = FRAC_PI_2 - theta;
    }
    theta
}

/// Rate of the suboptimal rule that only looks at the channel phase `θ`:
/// `X_1` if `√2 sin(π/4 - θ) < sin θ`, otherwise `X_2`.
///
/// `h = 0` returns `(0, X2)`.
pub fn phase_threshold_rate(h: &ComplexChannel, sigma2: f64) -> Result<(f64, ThresholdChoice)> {
    if h.antennas() != 1 {
        return Err(Error::RequiresSiso(h.antennas()));
    }
    let scale = noise_scale(sigma2)?;
    let c = h.entries()[0];
    let r = libm::sqrt(h.norm_sqr());
    if r == 0.0 {
        return Ok((0.0, ThresholdChoice::X2));
    }
    let theta = folded_phase(c.re, c.im);
    let (s, co) = libm::sincos(theta);
    if SQRT_2 * libm::sin(FRAC_PI_4 - theta) < s {
        let rate = 2.0 - hb_of_q(scale * r * co) - hb_of_q(scale * r * s);
        Ok((rate, ThresholdChoice::X1))
    } else {
        let (s4, c4) = libm::sincos(FRAC_PI_4 - theta);
        let g = scale * SQRT_2 * r;
        let rate = 2.0 - hb_of_q(g * c4) - hb_of_q(g * s4);
        Ok((rate, ThresholdChoice::X2))
    }
}

/// Power retained by the phase-threshold rule relative to MRT with
/// infinite-precision DACs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerLossBounds {
    /// `-10 log10 min_θ max{sin²θ, 1 - sin 2θ}`.
    pub worst_case_db: f64,
    /// Loss of the phase-averaged retained power for a uniform phase.
    pub ergodic_db: f64,
    /// Switching phase `θ̂` where both choices retain the same power.
    pub threshold_rad: f64,
}

fn retained_power(theta: f64) -> f64 {
    let s = libm::sin(theta);
    (s * s).max(1.0 - libm::sin(2.0 * theta))
}

/// Worst-case and phase-averaged power loss of one-bit DACs with one-bit
/// feedback, computed numerically.
pub fn power_loss_bounds() -> PowerLossBounds {
    // Coarse grid, then golden-section search on the bracketing cell.
    const GRID: usize = 4096;
    let step = FRAC_PI_4 / GRID as f64;
    let i_min = (0..=GRID)
        .min_by(|&a, &b| retained_power(a as f64 * step).total_cmp(&retained_power(b as f64 * step)))
        .unwrap_or(0);
    let lo = i_min.saturating_sub(1) as f64 * step;
    let hi = ((i_min + 1).min(GRID)) as f64 * step;
    let worst = golden_min(retained_power, lo, hi, 1e-15);

    // Threshold where sin θ = √2 sin(π/4 - θ), by bisection.
    let gap = |t: f64| libm::sin(t) - SQRT_2 * libm::sin(FRAC_PI_4 - t);
    let (mut a, mut b) = (0.0, FRAC_PI_4);
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if gap(mid) < 0.0 {
            a = mid;
        } else {
            b = mid;
        }
    }
    let threshold = 0.5 * (a + b);

    let mean = 4.0 / PI
        * (simpson(|t| 1.0 - libm::sin(2.0 * t), 0.0, threshold, 2000)
            + simpson(|t| libm::sin(t) * libm::sin(t), threshold, FRAC_PI_4, 2000));

    PowerLossBounds {
        worst_case_db: -10.0 * libm::log10(worst),
        ergodic_db: -10.0 * libm::log10(mean),
        threshold_rad: threshold,
    }
}

fn golden_min(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let inv_phi = (libm::sqrt(5.0) - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    while (b - a).abs() > tol {
        if f(c) < f(d) {
            b = d;
        } else {
            a = c;
        }
        c = b - inv_phi * (b - a);
        d = a + inv_phi * (b - a);
    }
    f(0.5 * (a + b))
}

/// Composite Simpson rule with `n` (even) intervals.
pub(crate) fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let n = n + n % 2;
    let h = (b - a) / n as f64;
    let mut acc = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(a + i as f64 * h);
    }
    acc * h / 3.0
}
