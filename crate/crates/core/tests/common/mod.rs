//! Helpers shared by the integration tests: random instances and an
//! independent brute-force LP oracle.
#![allow(dead_code)]

use onebit_core::constellation::Constellation;
use onebit_core::montecarlo::sample_channel;
use onebit_core::rng::{substream, StreamRng};
use onebit_core::{ComplexChannel, SignalVector, SubsetId};
use rand::Rng;

pub fn rng(seed: u64, tag: u64) -> StreamRng {
    substream(seed, &[tag])
}

pub fn channel(m: usize, rng: &mut StreamRng) -> ComplexChannel {
    sample_channel(m, rng)
}

/// σ² log-uniform on [0.1, 10].
pub fn sigma2(rng: &mut StreamRng) -> f64 {
    10f64.powf(rng.gen_range(-1.0..=1.0))
}

/// Random probability vector of length `n` (normalized exponentials).
pub fn simplex(n: usize, rng: &mut StreamRng) -> Vec<f64> {
    let w: Vec<f64> = (0..n).map(|_| -(1.0 - rng.gen::<f64>()).ln()).collect();
    let s: f64 = w.iter().sum();
    w.into_iter().map(|v| v / s).collect()
}

/// Every vector of `{-1,0,1}^{2M} \ {0}`.
pub fn all_vectors(m: usize) -> Vec<SignalVector> {
    let d = 2 * m;
    let mut out = Vec::new();
    for code in 0..3usize.pow(d as u32) {
        let mut c = code;
        let v: Vec<i8> = (0..d)
            .map(|_| {
                let t = (c % 3) as i8 - 1;
                c /= 3;
                t
            })
            .collect();
        if v.iter().any(|&t| t != 0) {
            out.push(SignalVector::new(v).unwrap());
        }
    }
    out
}

/// `min Σ p_i e_i` s.t. `Σ u_i p_i ≤ pt`, `Σ p_i = 1`, `p ≥ 0`, by checking
/// every basic solution over all subsets (no per-level reduction).
pub fn lp_by_vertices(cons: &Constellation, entropies: &[f64], pt: f64) -> f64 {
    let u: Vec<f64> = (0..cons.len()).map(|i| cons.id_at(i).u as f64).collect();
    let mut best = f64::INFINITY;
    for i in 0..cons.len() {
        if u[i] <= pt {
            best = best.min(entropies[i]);
        }
        for j in 0..cons.len() {
            if u[i] < pt && pt < u[j] {
                let a = (u[j] - pt) / (u[j] - u[i]);
                best = best.min(a * entropies[i] + (1.0 - a) * entropies[j]);
            }
        }
    }
    best
}

/// Random subset masses (each spread evenly over its orbit) on `support` subsets.
pub fn random_masses(cons: &Constellation, support: usize, rng: &mut StreamRng) -> Vec<(SubsetId, f64)> {
    let w = simplex(support, rng);
    (0..support).map(|i| (cons.id_at(rng.gen_range(0..cons.len())), w[i])).collect()
}
