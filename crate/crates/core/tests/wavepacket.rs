//! Wave-packet invariants: periodicity, time reversal, probability
//! bookkeeping between the two billiards, determinism.

use equitri::config::SQRT3;
use equitri::presets::PAPER_WIDTH;
use equitri::spectrum::Symmetry;
use equitri::wavepacket::{
    autocorrelation, density_integral, expand, linspace, timescales, GaussianPacket, Truncation,
};
use equitri::{BilliardConfig, Variant};
use proptest::prelude::*;

fn packet_in_full() -> impl Strategy<Value = GaussianPacket> {
    (0.2f64..0.72, -1.0f64..1.0, 0.0f64..400.0, 0.0f64..360.0).prop_filter_map(
        "too close to a wall",
        |(y, s, p0, th)| {
            let p = GaussianPacket::from_polar(s * y / SQRT3, y, p0, th, PAPER_WIDTH).ok()?;
            (p.clearance(Variant::Full, 1.0) >= 3.0).then_some(p)
        },
    )
}

/// Packets 3Δx₀ clear of the outer walls and 4Δx₀ right of the bisector. The
/// overlap with the mirror image is `e^{−x₀²/b²}`, so the odd part then
/// carries one half of the probability to within 2e-4.
fn packet_right_of_bisector() -> impl Strategy<Value = GaussianPacket> {
    (0.2f64..0.24, 0.0f64..1.0, 0.0f64..400.0, 0.0f64..360.0).prop_map(|(x, s, p0, th)| {
        let lo = SQRT3 * x + 0.3;
        let y = lo + s * (0.716 - lo);
        GaussianPacket::from_polar(x, y, p0, th, PAPER_WIDTH).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn autocorrelation_is_periodic_and_time_symmetric(p in packet_in_full(), s in 0.0f64..1.0) {
        let cfg = BilliardConfig::default();
        let t_rev = cfg.revival_time();
        let table = expand(&p, &cfg, Truncation::Auto).unwrap();
        let a = autocorrelation(&table, &cfg, &[0.0, s * t_rev, (1.0 + s) * t_rev, (1.0 - s) * t_rev]).abs();
        prop_assert!((a[0] - table.captured_norm).abs() < 1e-12);
        prop_assert!((a[2] - a[1]).abs() < 1e-9);
        prop_assert!((a[3] - a[1]).abs() < 1e-9);
        prop_assert!(a[1] <= a[0] + 1e-12);
    }

    #[test]
    fn half_billiard_carries_the_odd_half(p in packet_right_of_bisector()) {
        let cfg = BilliardConfig::default();
        let full = expand(&p, &cfg, Truncation::Auto).unwrap();
        let half = expand(&p, &cfg.with_variant(Variant::Half), Truncation::Auto).unwrap();
        let odd = full.norm_of(Symmetry::Minus);
        prop_assert!((odd - 0.5 * full.captured_norm).abs() < 1e-3);
        prop_assert!((half.captured_norm - 2.0 * odd).abs() < 1e-12);
    }
}

#[test]
fn rest_packets_on_the_bisector_have_no_odd_part() {
    let cfg = BilliardConfig::default();
    for y in [0.35, 0.5, 0.6] {
        let p = GaussianPacket::new(0.0, y, 0.0, 0.0, PAPER_WIDTH).unwrap();
        let t = expand(&p, &cfg, Truncation::Auto).unwrap();
        let worst = t
            .coefficients
            .iter()
            .filter(|c| c.qn.sym == Symmetry::Minus)
            .map(|c| c.amplitude.norm())
            .fold(0.0, f64::max);
        assert!(worst < 1e-10, "y0={y}: {worst:e}");
    }
}

#[test]
fn evolution_preserves_norm() {
    let cfg = BilliardConfig::default();
    let p = GaussianPacket::from_polar(0.0, 0.5, 150.0, 40.0, PAPER_WIDTH).unwrap();
    let t = expand(&p, &cfg, Truncation::Auto).unwrap();
    for s in [0.0, 0.213, 0.5] {
        let n = density_integral(&t, &cfg, s * cfg.revival_time(), 160);
        assert!((n - t.captured_norm).abs() < 1e-6, "s={s}: {n}");
    }
}

#[test]
fn results_do_not_depend_on_thread_count() {
    let cfg = BilliardConfig::default();
    let p = GaussianPacket::from_polar(0.0, SQRT3 / 3.0, 1500.0, 17.0, PAPER_WIDTH).unwrap();
    let times = linspace(0.0, 0.004, 400);
    let run = |threads: usize| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| {
                let t = expand(&p, &cfg, Truncation::Auto).unwrap();
                (t.captured_norm, autocorrelation(&t, &cfg, &times).a)
            })
    };
    let (n1, a1) = run(1);
    let (n4, a4) = run(4);
    assert_eq!(n1.to_bits(), n4.to_bits());
    assert!(a1
        .iter()
        .zip(&a4)
        .all(|(x, y)| x.re.to_bits() == y.re.to_bits() && x.im.to_bits() == y.im.to_bits()));
}

#[test]
fn paper_timescales() {
    let cfg = BilliardConfig::default();
    let p = GaussianPacket::from_polar(0.0, SQRT3 / 3.0, 1500.0, 0.0, PAPER_WIDTH).unwrap();
    let t = timescales(&p, &cfg, Some((1, 1))).unwrap();
    let o = t.orbit.unwrap();
    assert!((o.t_cl_po - 3.0 / 3000.0).abs() < 1e-15);
    assert!((t.tau.unwrap() - 1.0 / 3000.0).abs() < 1e-18);
}
