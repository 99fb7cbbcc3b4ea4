//! Checks against independently computed references.

mod common;

use minilp::{ComparisonOp, OptimizationDirection, Problem};
use onebit_core::capacity::{
    capacity_infinite_dacs, capacity_infinite_dacs_at, csir_only_siso_capacity, dac_loss_siso, feedback_bits,
    miso_capacity, phase_threshold_rate, siso_capacity, FeedbackMode, ThresholdChoice,
};
use onebit_core::{
    binary_entropy, enumerate_constellation, mi_bruteforce, q_function, realify, subset_entropy, Complex64,
    ComplexChannel, InputDistribution, PowerBudget, SignalVector, SubsetId,
};
use rand::Rng;

/// Q(t) by composite Simpson on the Gaussian density over [t, t + 40].
fn q_quadrature(t: f64) -> f64 {
    let n = 200_000;
    let (a, b) = (t, t + 40.0);
    let h = (b - a) / n as f64;
    let phi = |x: f64| (-x * x / 2.0).exp() / (2.0 * std::f64::consts::PI).sqrt();
    let mut acc = phi(a) + phi(b);
    for i in 1..n {
        acc += if i % 2 == 1 { 4.0 } else { 2.0 } * phi(a + i as f64 * h);
    }
    acc * h / 3.0
}

#[test]
fn q_matches_quadrature() {
    for &t in &[0.0, 0.3, 1.0, 1.7, 2.5, 4.0, 6.0] {
        let q = q_function(t).unwrap();
        assert!((q - q_quadrature(t)).abs() <= 1e-12 * q.max(1e-3), "t={t}");
    }
    assert!((q_function(1.0).unwrap() - 0.158_655_253_931_457_05).abs() < 1e-15);
}

#[test]
fn q_tail_relative_accuracy() {
    // Mills ratio bounds: φ(t) t/(1+t²) < Q(t) < φ(t)/t.
    for &t in &[8.0, 12.0, 20.0, 30.0] {
        let phi = (-t * t / 2.0f64).exp() / (2.0 * std::f64::consts::PI).sqrt();
        let q = q_function(t).unwrap();
        assert!(q > phi * t / (1.0 + t * t) && q < phi / t, "t={t}");
        // Asymptotic series to three terms is accurate to ~15/t^6.
        let series = phi / t * (1.0 - 1.0 / (t * t) + 3.0 / t.powi(4));
        assert!((q / series - 1.0).abs() < 16.0 / t.powi(6), "t={t}");
    }
}

#[test]
fn binary_entropy_reference_values() {
    let direct = |p: f64| -p * p.log2() - (1.0 - p) * (1.0 - p).log2();
    for &p in &[1e-9, 1e-4, 0.01, 0.11, 0.25, 0.5, 0.9, 0.999] {
        assert!((binary_entropy(p).unwrap() - direct(p)).abs() < 1e-14, "p={p}");
    }
    assert!((binary_entropy(0.11).unwrap() - 0.499_915_958_164_528_4).abs() < 1e-13);
}

/// `min cᵀp` over the capacity LP with a general-purpose simplex solver.
fn lp_by_simplex(u: &[f64], e: &[f64], pt: f64) -> f64 {
    let mut pb = Problem::new(OptimizationDirection::Minimize);
    let vars: Vec<_> = e.iter().map(|&c| pb.add_var(c, (0.0, f64::INFINITY))).collect();
    let ones: Vec<_> = vars.iter().map(|&v| (v, 1.0)).collect();
    pb.add_constraint(&ones, ComparisonOp::Eq, 1.0);
    let pow: Vec<_> = vars.iter().zip(u).map(|(&v, &w)| (v, w)).collect();
    pb.add_constraint(&pow, ComparisonOp::Le, pt);
    pb.solve().unwrap().objective()
}

#[test]
fn lp_agrees_with_simplex_solver() {
    let mut rng = common::rng(11, 0);
    for m in 1..=3 {
        let cons = enumerate_constellation(m).unwrap();
        let u: Vec<f64> = (0..cons.len()).map(|i| cons.id_at(i).u as f64).collect();
        for _ in 0..40 {
            let h = realify(&common::channel(m, &mut rng));
            let s2 = common::sigma2(&mut rng);
            let pt = rng.gen_range(1.0..=2.0 * m as f64);
            let c = miso_capacity(&h, s2, PowerBudget::new(pt, m).unwrap(), &cons).unwrap();
            let e = h.entropy_profile(&cons, s2).unwrap();
            let reference = 2.0 - lp_by_simplex(&u, &e, pt);
            assert!((c.capacity_bits - reference).abs() < 1e-8, "m={m} pt={pt}");
            assert!((c.capacity_bits - (2.0 - common::lp_by_vertices(&cons, &e, pt))).abs() < 1e-12);
            // The returned distribution is feasible and attains the value.
            let d = &c.distribution;
            assert!(d.average_power() <= pt + 1e-9);
            assert!((2.0 - d.expected_entropy(&cons, &e).unwrap() - c.capacity_bits).abs() < 1e-12);
        }
    }
}

#[test]
fn capacity_is_attained_by_mutual_information() {
    let mut rng = common::rng(12, 0);
    for m in 1..=2 {
        let cons = enumerate_constellation(m).unwrap();
        for _ in 0..20 {
            let h = realify(&common::channel(m, &mut rng));
            let s2 = common::sigma2(&mut rng);
            let pt = rng.gen_range(1.0..=2.0 * m as f64);
            let c = miso_capacity(&h, s2, PowerBudget::new(pt, m).unwrap(), &cons).unwrap();
            let mi = mi_bruteforce(&h, &c.distribution.expand(&cons).unwrap(), s2).unwrap();
            assert!((mi - c.capacity_bits).abs() < 1e-12);
        }
    }
}

#[test]
fn siso_matches_lp_and_time_sharing_formula() {
    let cons = enumerate_constellation(1).unwrap();
    let mut rng = common::rng(13, 0);
    for _ in 0..200 {
        let hc = common::channel(1, &mut rng);
        let h = realify(&hc);
        let s2 = common::sigma2(&mut rng);
        let pt = rng.gen_range(1.0..=2.0);
        let b = PowerBudget::new(pt, 1).unwrap();
        let siso = siso_capacity(&hc, s2, b).unwrap().capacity_bits;
        let miso = miso_capacity(&h, s2, b, &cons).unwrap().capacity_bits;
        assert!((siso - miso).abs() < 1e-12);
        let x1 = SignalVector::new(vec![1, 0]).unwrap();
        let x2 = SignalVector::new(vec![1, 1]).unwrap();
        let (e1, e2) = (subset_entropy(&h, &x1, s2).unwrap(), subset_entropy(&h, &x2, s2).unwrap());
        let expected = if e1 <= e2 { 2.0 - e1 } else { 2.0 - (2.0 - pt) * e1 - (pt - 1.0) * e2 };
        assert!((siso - expected).abs() < 1e-12);
    }
}

#[test]
fn infinite_dac_forms() {
    let mut rng = common::rng(14, 0);
    for _ in 0..50 {
        let h = common::channel(3, &mut rng);
        let s2 = common::sigma2(&mut rng);
        let n = h.norm_sqr();
        let reference = |pt: f64| {
            let q = q_function((pt * n / s2).sqrt()).unwrap();
            2.0 * (1.0 - binary_entropy(q).unwrap())
        };
        assert!((capacity_infinite_dacs(&h, s2).unwrap() - reference(2.0)).abs() < 1e-12);
        let full = capacity_infinite_dacs_at(&h, s2, PowerBudget::full(3)).unwrap();
        assert!((full - reference(6.0)).abs() < 1e-12);
        // MRT with ideal DACs dominates one-bit DACs at the same budget.
        let cons = enumerate_constellation(3).unwrap();
        let onebit = miso_capacity(&realify(&h), s2, PowerBudget::full(3), &cons).unwrap().capacity_bits;
        assert!(full >= onebit - 1e-12);
    }
}

#[test]
fn siso_side_quantities() {
    let mut rng = common::rng(15, 0);
    let b = PowerBudget::new(2.0, 1).unwrap();
    for _ in 0..100 {
        let h = common::channel(1, &mut rng);
        let s2 = common::sigma2(&mut rng);
        let full_csi = siso_capacity(&h, s2, b).unwrap().capacity_bits;
        let csir = csir_only_siso_capacity(&h, s2, b).unwrap();
        assert!(csir <= full_csi + 1e-12);
        assert!(dac_loss_siso(&h, s2).unwrap() >= -1e-12);
        let (rate, choice) = phase_threshold_rate(&h, s2).unwrap();
        let hr = realify(&h);
        let x = match choice {
            ThresholdChoice::X1 => SubsetId::new(1, 1),
            ThresholdChoice::X2 => SubsetId::new(2, 1),
        };
        let cons = enumerate_constellation(1).unwrap();
        let d = InputDistribution::new(vec![(x, 1.0)]).unwrap();
        let mi = mi_bruteforce(&hr, &d.expand(&cons).unwrap(), s2).unwrap();
        assert!((rate - mi).abs() < 1e-12);
        assert!(rate <= full_csi + 1e-12);
    }
    let zero = ComplexChannel::new(vec![Complex64::new(0.0, 0.0)]).unwrap();
    assert_eq!(csir_only_siso_capacity(&zero, 1.0, b).unwrap(), 0.0);
}

#[test]
fn feedback_bit_counts() {
    assert!((feedback_bits(4, FeedbackMode::Full) - 10.68).abs() < 5e-3);
    assert_eq!(feedback_bits(4, FeedbackMode::Dominant), 6.0);
    assert_eq!(feedback_bits(2, FeedbackMode::Dominant), 2.0);
}
