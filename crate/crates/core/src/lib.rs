//! Exact capacity of MISO channels whose transmitter uses one-bit DACs and
//! whose receiver uses one-bit ADCs.
//!
//! The channel input alphabet is the spatial lattice `{-1,0,+1}^{2M} \ {0}`,
//! partitioned into power levels and 90° rotation orbits ([`constellation`]).
//! For a fixed channel the capacity is `2 - Σ p_{u,k} H_b^{X_{u,k}}` where the
//! masses solve a two-constraint linear program ([`capacity`]); a brute-force
//! mutual-information oracle ([`mutual_info`]) is kept next to it for
//! verification. [`montecarlo`] runs ergodic-capacity sweeps over Rayleigh
//! fading and [`training`] simulates the learned subset-selection and
//! finite-rate feedback protocols.
//!
//! The crate is `no_std` (it needs `alloc`). File formats and the command-line
//! front end live in the `onebit-cli` crate.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod capacity;
pub mod channel;
pub mod constellation;
mod error;
pub mod montecarlo;
pub mod mutual_info;
pub mod rng;
pub mod special;
pub mod training;

pub use capacity::{
    capacity_full_power, capacity_infinite_dacs, capacity_infinite_dacs_at, csir_only_siso_capacity, dac_loss_siso,
    feedback_bits, miso_capacity, phase_threshold_rate, power_loss_bounds, siso_capacity, CapacityResult, FeedbackMode,
    InputDistribution, PowerBudget, PowerLossBounds, Regime, ThresholdChoice,
};
pub use channel::{realify, subset_entropy, ComplexChannel, RealChannel};
pub use constellation::{
    complexify, enumerate_constellation, orbit_of, power_level, rotation_matrix, Constellation, RotationalSubset,
    SignalVector, SubsetId,
};
pub use error::{Error, Result};
pub use mutual_info::{mi_bruteforce, output_distribution};
pub use num_complex::Complex64;
pub use special::{binary_entropy, q_function};
pub use training::{
    achieved_rate, dominant_training, full_training, simulate_output, FeedbackCodebook, TrainingConfig, TrainingOutcome,
};
