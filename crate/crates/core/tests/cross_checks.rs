use std::f64::consts::{FRAC_PI_3, FRAC_PI_4};

use qwalk2c_core::verify::{item_rng, log_slope, oracle_gap, random_parameters};
use qwalk2c_core::*;

#[test]
fn simulation_approaches_lopsided_stationary_law() {
    let coin = CoinParameters::new(FRAC_PI_3).unwrap();
    let init = InitialCoinState::basis(0);
    let law = stationary_law(&coin, &init);
    let d = evolve(&init, &coin, 2000).distribution();
    for x in -3..=3 {
        let gap = (d.probability(x) - law.probability(x)).abs();
        assert!(
            gap < 5e-3,
            "x={x}: {} vs {}",
            d.probability(x),
            law.probability(x)
        );
    }
    assert!(law.probability(-1) > 100.0 * law.probability(1));
    assert!(d.probability(-1) > 100.0 * d.probability(1));
}

#[test]
fn mirrored_state_reflects_distribution_and_law() {
    let coin = CoinParameters::new(0.61).unwrap();
    let (_, init) = random_parameters(&mut item_rng(5, 0));
    let a = evolve(&init, &coin, 60).distribution();
    let b = evolve(&init.mirrored(), &coin, 60).distribution();
    for x in -60..=60 {
        assert!(
            (a.probability(x) - b.probability(-x)).abs() < 1e-12,
            "x={x}"
        );
    }
    let la = stationary_law(&coin, &init);
    let lb = stationary_law(&coin, &init.mirrored());
    assert!((la.j_plus - lb.j_minus).abs() < 1e-12);
    assert!((la.j_minus - lb.j_plus).abs() < 1e-12);
    assert!((la.p0 - lb.p0).abs() < 1e-12);
    let da = limit_density(&coin, &init);
    let db = limit_density(&coin, &init.mirrored());
    assert!((da.c1 + db.c1).abs() < 1e-12);
    assert!((da.c00 - db.c00).abs() < 1e-12);
}

#[test]
fn spectral_and_closed_form_cdfs_agree_on_random_draws() {
    let quad = QuadSpec::default();
    for i in 0..5 {
        let (coin, init) = random_parameters(&mut item_rng(17, i));
        let d = limit_density(&coin, &init);
        let cb = coin.beta().cos();
        for j in 0..9 {
            let y = cb * (-1.0 + 0.25 * j as f64) * 0.999;
            let a = limit_cdf(&d, y, &quad).unwrap();
            let b = spectral_cdf(&coin, &init, y, &quad).unwrap();
            assert!((a - b).abs() < 1e-8, "draw {i}, y={y}: {a} vs {b}");
        }
    }
}

#[test]
fn inverse_fourier_matches_pinned_walks() {
    let quad = QuadSpec::default();
    let coin = CoinParameters::new(FRAC_PI_4).unwrap();
    for init in [InitialCoinState::bell(), InitialCoinState::nonlocalizing()] {
        for t in [0, 1, 5, 12] {
            assert!(oracle_gap(&coin, &init, t, &quad).unwrap() < 1e-10);
        }
    }
    // Sites outside the light cone vanish.
    let psi = inverse_fourier_amplitude(9, 4, &coin, &InitialCoinState::bell(), &quad).unwrap();
    assert!(psi.iter().all(|z| z.norm() < 1e-10));
}

#[test]
fn flat_band_reconstructs_stationary_amplitudes() {
    let quad = QuadSpec::default();
    let coin = CoinParameters::new(0.9).unwrap();
    let init = InitialCoinState::basis(2);
    let amps = stationary_amplitudes(&coin, &init);
    let profile = flat_band_profile(4, &coin, &init, &quad).unwrap();
    for (i, psi) in profile.iter().enumerate() {
        let x = i as i64 - 4;
        let closed = amps.amplitude(x);
        // Equal up to a global sign.
        let same = psi
            .iter()
            .zip(&closed)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        let flip = psi
            .iter()
            .zip(&closed)
            .map(|(a, b)| (a + b).norm())
            .fold(0.0, f64::max);
        assert!(same.min(flip) < 1e-8, "x={x}");
    }
}

#[test]
fn near_tail_decays_at_the_stationary_rate() {
    // For x <= 3 the geometric tail dominates the ballistic background at t = 1000.
    let coin = CoinParameters::new(FRAC_PI_4).unwrap();
    let init = InitialCoinState::bell();
    let d = evolve(&init, &coin, 1000).distribution();
    let pts: Vec<(i64, f64)> = (1..=3).map(|x| (x, d.probability(x))).collect();
    let fit = log_slope(&pts).unwrap();
    let theory = stationary_law(&coin, &init).ratio.ln();
    assert!(((fit - theory) / theory).abs() < 0.02, "{fit} vs {theory}");
}

#[test]
fn convergence_reports_are_well_formed() {
    let coin = CoinParameters::new(FRAC_PI_4).unwrap();
    let opts = LocalizationOptions::default();
    for init in [InitialCoinState::bell(), InitialCoinState::nonlocalizing()] {
        let r = localization_check(&coin, &init, 1000, &opts).unwrap();
        assert_eq!(r.t_values, vec![125, 250, 500, 1000]);
        assert!(r.ks_nonincreasing_within(0.1), "{:?}", r.ks_distances);
        assert!(r.p0_trace.iter().all(|p| (0.0..=1.0 + 1e-10).contains(p)));
        assert!(r.parity_gap < 5e-3);
    }
}

#[test]
fn ks_far_from_the_limit_at_t_one() {
    let coin = CoinParameters::new(FRAC_PI_4).unwrap();
    let init = InitialCoinState::bell();
    let d = evolve(&init, &coin, 1).distribution();
    let ks = ks_distance(&d, &limit_density(&coin, &init), &QuadSpec::default()).unwrap();
    println!("KS at t = 1: {ks:.4}");
    assert!(ks > 0.1 && ks < 1.0);
}

#[test]
fn simulation_checkpoints_gate_only_on_attainable_checks() {
    let report = pinned_simulation_checks(1000, &LocalizationOptions::default()).unwrap();
    for c in &report.checks {
        println!("{c}");
    }
    assert!(report.passed());
    assert!(report.checks.iter().any(|c| !c.gating && !c.passed));
}
