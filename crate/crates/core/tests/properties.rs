mod common;

use onebit_core::capacity::{capacity_full_power, miso_capacity, FeedbackMode};
use onebit_core::constellation::Constellation;
use onebit_core::{
    binary_entropy, enumerate_constellation, output_distribution, q_function, realify, rotation_matrix, subset_entropy,
    Complex64, ComplexChannel, FeedbackCodebook, InputDistribution, PowerBudget, SignalVector,
};
use proptest::prelude::*;
use std::sync::OnceLock;

fn cons(m: usize) -> &'static Constellation {
    static CACHE: OnceLock<Vec<Constellation>> = OnceLock::new();
    &CACHE.get_or_init(|| (1..=3).map(|m| enumerate_constellation(m).unwrap()).collect())[m - 1]
}

fn channel_strategy(m: usize) -> impl Strategy<Value = ComplexChannel> {
    prop::collection::vec((-3.0..3.0f64, -3.0..3.0f64), m)
        .prop_map(|v| ComplexChannel::new(v.into_iter().map(|(a, b)| Complex64::new(a, b)).collect()).unwrap())
}

fn signal_strategy(m: usize) -> impl Strategy<Value = SignalVector> {
    prop::collection::vec(-1i8..=1, 2 * m)
        .prop_filter("nonzero", |v| v.iter().any(|&t| t != 0))
        .prop_map(|v| SignalVector::new(v).unwrap())
}

fn instance() -> impl Strategy<Value = (usize, ComplexChannel, SignalVector, f64)> {
    (1usize..=3).prop_flat_map(|m| (Just(m), channel_strategy(m), signal_strategy(m), 0.05..20.0f64))
}

proptest! {
    #[test]
    fn q_is_monotone_and_reflective(a in -30.0..30.0f64, d in 0.0..5.0f64) {
        let (qa, qb) = (q_function(a).unwrap(), q_function(a + d).unwrap());
        prop_assert!(qb <= qa);
        prop_assert!((0.0..=1.0).contains(&qa));
        prop_assert!((qa + q_function(-a).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn entropy_is_symmetric_and_bounded(p in 0.0..=1.0f64) {
        let h = binary_entropy(p).unwrap();
        prop_assert!((0.0..=1.0).contains(&h));
        prop_assert!((h - binary_entropy(1.0 - p).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn rotation_orbit_has_four_members((m, _, x, _) in instance()) {
        let r4 = x.rotated(4);
        prop_assert_eq!(&r4, &x);
        let orbit: Vec<_> = (0..4).map(|i| x.rotated(i)).collect();
        for i in 0..4 {
            for j in i + 1..4 {
                prop_assert_ne!(&orbit[i], &orbit[j]);
            }
        }
        // rotated() agrees with the explicit matrix.
        let r = rotation_matrix(m).unwrap();
        let rx: Vec<i8> = r.iter().map(|row| row.iter().zip(x.as_slice()).map(|(a, b)| a * b).sum()).collect();
        prop_assert_eq!(rx, x.rotated(1).as_slice().to_vec());
        let neg: Vec<i8> = x.as_slice().iter().map(|v| -v).collect();
        prop_assert_eq!(x.rotated(2).as_slice().to_vec(), neg);
    }

    #[test]
    fn every_vector_belongs_to_one_listed_subset((m, _, x, _) in instance()) {
        let c = cons(m);
        let s = c.orbit_of(&x).unwrap();
        prop_assert!(s.contains(&x));
        prop_assert_eq!(s.power_level(), x.power_level());
        for i in 1..4 {
            prop_assert_eq!(c.orbit_of(&x.rotated(i)).unwrap().id, s.id);
        }
        prop_assert_eq!(c.index_of(s.id).unwrap(), c.locate(&x).unwrap());
    }

    #[test]
    fn realified_rows_intertwine_rotation((m, h, x, _) in instance()) {
        let hr = realify(&h);
        let dot = |row: &[f64], v: &SignalVector| row.iter().zip(v.as_slice()).map(|(a, &b)| a * b as f64).sum::<f64>();
        let rx = x.rotated(1);
        prop_assert!((dot(hr.row1(), &rx) + dot(hr.row2(), &x)).abs() < 1e-12);
        prop_assert!((dot(hr.row2(), &rx) - dot(hr.row1(), &x)).abs() < 1e-12);
        prop_assert_eq!(hr.dim(), 2 * m);
        prop_assert_eq!(hr.to_complex(), h);
    }

    #[test]
    fn entropy_is_member_invariant((_, h, x, s2) in instance()) {
        let hr = realify(&h);
        let e = subset_entropy(&hr, &x, s2).unwrap();
        prop_assert!((0.0..=2.0).contains(&e));
        for i in 1..4 {
            prop_assert!((subset_entropy(&hr, &x.rotated(i), s2).unwrap() - e).abs() < 1e-12);
        }
    }

    #[test]
    fn capacity_bounds_and_monotonicity(
        (m, h, _, s2) in instance(),
        a in 0.0..=1.0f64,
        b in 0.0..=1.0f64,
    ) {
        let c = cons(m);
        let hr = realify(&h);
        let top = 2.0 * m as f64;
        let (lo, hi) = (1.0 + (top - 1.0) * a.min(b), 1.0 + (top - 1.0) * a.max(b));
        let cap = |pt: f64, s: f64| miso_capacity(&hr, s, PowerBudget::new(pt, m).unwrap(), c).unwrap().capacity_bits;
        let (c_lo, c_hi) = (cap(lo, s2), cap(hi, s2));
        prop_assert!((0.0..=2.0).contains(&c_lo));
        prop_assert!(c_hi >= c_lo - 1e-12);
        prop_assert!(cap(hi, 2.0 * s2) <= c_hi + 1e-12);
        let (full, _) = capacity_full_power(&hr, s2, c).unwrap();
        prop_assert!((cap(top, s2) - full).abs() < 1e-12);
    }

    #[test]
    fn orbit_uniform_inputs_give_uniform_outputs(
        (m, h, _, s2) in instance(),
        seed in any::<u64>(),
        support in 1usize..6,
    ) {
        let c = cons(m);
        let mut rng = common::rng(seed, 0);
        let d = InputDistribution::new(common::random_masses(c, support, &mut rng)).unwrap();
        for p in output_distribution(&realify(&h), &d.expand(c).unwrap(), s2).unwrap() {
            prop_assert!((p - 0.25).abs() < 1e-12);
        }
    }

    #[test]
    fn feedback_round_trip(m in 1usize..=3, full in any::<bool>(), pick in any::<prop::sample::Index>()) {
        let c = cons(m);
        let mode = if full { FeedbackMode::Full } else { FeedbackMode::Dominant };
        let cb = FeedbackCodebook::new(m, mode).unwrap();
        let range = if full { 0..c.len() } else { c.level_range(2 * m) };
        let idx = range.start + pick.index(range.len());
        let id = c.id_at(idx);
        let word = cb.encode(c, id).unwrap();
        let bits = cb.to_bits(word);
        prop_assert_eq!(bits.len() as u32, cb.bits());
        prop_assert_eq!(cb.decode(c, cb.from_bits(&bits)).unwrap(), id);
    }
}
