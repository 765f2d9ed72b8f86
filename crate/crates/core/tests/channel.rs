use std::f64::consts::PI;

use wiretap_lattice::catalog;
use wiretap_lattice::channel::example2::{
    crossovers_db, pce_4qam, pce_4qam_exact, pce_coset_z2, pce_difference, sigma_for, simulate_example2,
};
use wiretap_lattice::channel::rng::{TrialRng, STREAM_BOB};
use wiretap_lattice::channel::{bound_ratio, q_function, simulate_wiretap, ChannelParams, Detector};
use wiretap_lattice::theta::{extremal_theta, ClosedForm, ThetaSource};
use wiretap_lattice::wiretap::{build_coset_code, CosetCode};

fn z2_code() -> CosetCode {
    let z2 = catalog::cubic(2);
    build_coset_code(&z2, &z2.scaled(2)).unwrap()
}

/// Composite Simpson rule for `∫_x^∞ φ(t) dt` truncated at `x + 12`.
fn q_by_quadrature(x: f64) -> f64 {
    let n = 20_000;
    let h = 12.0 / n as f64;
    let phi = |t: f64| (-t * t / 2.0).exp() / (2.0 * PI).sqrt();
    let mut s = phi(x) + phi(x + 12.0);
    for i in 1..n {
        s += phi(x + i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    s * h / 3.0
}

#[test]
fn q_function_against_quadrature() {
    for x in [0.0, 0.5, 1.0, 2.0, 4.0] {
        let a = q_function(x);
        let b = q_by_quadrature(x);
        assert!((a - b).abs() < 1e-12 * (1.0 + 1.0 / b), "x={x}: {a} vs {b}");
    }
    assert!((q_function(1.0) - 0.158655).abs() < 5e-7);
    assert_eq!(q_function(0.0), 0.5);
}

#[test]
fn closed_form_limits() {
    assert!(pce_4qam(20.0) > 1.0 - 1e-9);
    assert!(pce_4qam(1e-15) < 1e-6);
    assert_eq!(pce_coset_z2(0.0), 0.25);
    assert!(pce_coset_z2(1e-12) < 0.25 + 1e-6);
    assert!(pce_coset_z2(1e5) > 1.0 - 1e-12);
    // The low-SNR floor is 1/4, below the 0.3 read off the plotted range.
    assert!(pce_coset_z2(10f64.powf(-3.0)) < 0.3);
}

/// Monte Carlo of 4-QAM detection at `E_b/N₀ = 1`: the symbol-correct rate is
/// `(1 − Q(√2))²`; the form `1 − 2Q(√2)` differs by `Q(√2)²`.
#[test]
fn four_qam_monte_carlo() {
    let ebn0: f64 = 1.0;
    let trials = 1_000_000u64;
    // Points (±1, ±1), E_s = 2 = 2E_b, N₀ = 2σ².
    let sigma = (1.0 / (2.0 * ebn0)).sqrt();
    let mut correct = 0u64;
    for t in 0..trials {
        let mut rng = TrialRng::new(11, STREAM_BOB, t);
        let x = [if rng.next_u64() & 1 == 0 { 1.0 } else { -1.0 }, if rng.next_u64() & 1 == 0 { 1.0 } else { -1.0 }];
        let ok = x.iter().all(|&xi| {
            let y: f64 = xi + sigma * rng.normal();
            y.signum() == xi
        });
        correct += ok as u64;
    }
    let p = correct as f64 / trials as f64;
    let exact = pce_4qam_exact(ebn0);
    let sd = (exact * (1.0 - exact) / trials as f64).sqrt();
    assert!((p - exact).abs() < 3.0 * sd, "{p} vs {exact}");
    let q = q_function(2f64.sqrt());
    assert!((exact - pce_4qam(ebn0) - q * q).abs() < 1e-15);
}

#[test]
fn crossover_scan() {
    let c = crossovers_db(-30.0, 30.0, 0.05);
    assert_eq!(c.len(), 1);
    assert!((c[0] + 11.7).abs() < 0.01, "{c:?}");
    // Above the crossing the coset scheme keeps Eve strictly below 4-QAM.
    for db in [0.0, 10.0, 15.0, 20.0, 25.0] {
        assert!(pce_difference(10f64.powf(db / 10.0)) < 0.0);
    }
}

#[test]
fn example2_monte_carlo_mid_snr() {
    let e = 10f64.powf(0.3);
    let sim = simulate_example2(e, 200_000, 8).unwrap();
    let p = pce_coset_z2(e);
    let sd = (p * (1.0 - p) / sim.trials as f64).sqrt();
    assert!((sim.p_correct - p).abs() < 3.0 * sd);
    assert!((sigma_for(e) - 0.5 / (6.0 / 35.0 * e).sqrt()).abs() < 1e-15);
}

#[test]
fn simulation_is_reproducible() {
    let code = z2_code();
    let p = ChannelParams::new(0.4, 0.7, 123, 50_000).unwrap();
    let a = simulate_wiretap(&code, &p, Detector::Lattice).unwrap();
    let b = simulate_wiretap(&code, &p, Detector::Lattice).unwrap();
    assert_eq!(a.0.p_correct.to_bits(), b.0.p_correct.to_bits());
    assert_eq!(a.1.p_correct.to_bits(), b.1.p_correct.to_bits());
    let other = ChannelParams::new(0.4, 0.7, 124, 50_000).unwrap();
    assert_ne!(simulate_wiretap(&code, &other, Detector::Lattice).unwrap().1.p_correct, a.1.p_correct);
}

#[test]
fn bob_and_eve_agree_at_equal_noise() {
    let code = build_coset_code(&catalog::d4(), &catalog::d4().scaled(2)).unwrap();
    let p = ChannelParams::new(0.45, 0.45, 5, 100_000).unwrap();
    let (bob, eve) = simulate_wiretap(&code, &p, Detector::Lattice).unwrap();
    let slack = 3.0 * (bob.stderr.powi(2) + eve.stderr.powi(2)).sqrt();
    assert!((bob.p_correct - eve.p_correct).abs() <= slack);
}

#[test]
fn eve_is_monotone_in_noise_and_below_the_bound() {
    let code = z2_code();
    let mut prev: Option<(f64, f64)> = None;
    for i in 0..10 {
        let sigma_e = 0.15 + 0.1 * i as f64;
        let p = ChannelParams::new(0.1, sigma_e, 77, 40_000).unwrap();
        let (_, eve) = simulate_wiretap(&code, &p, Detector::Lattice).unwrap();
        if let Some((pc, se)) = prev {
            assert!(eve.p_correct <= pc + 3.0 * (se * se + eve.stderr * eve.stderr).sqrt());
        }
        if eve.bound.unwrap() <= 1.0 {
            assert!(eve.respects_bound(), "sigma {sigma_e}: {eve:?}");
        }
        prev = Some((eve.p_correct, eve.stderr));
    }
}

#[test]
fn tiny_noise_gives_certain_decisions() {
    let p = ChannelParams::new(0.01, 0.01, 1, 100_000).unwrap();
    let (bob, eve) = simulate_wiretap(&z2_code(), &p, Detector::Lattice).unwrap();
    assert!(bob.p_correct > 0.99 && eve.p_correct > 0.99);
}

#[test]
fn bound_ratios() {
    let sigma = (1.0 / (2.0 * PI)).sqrt();
    let z8 = ThetaSource::Closed(ClosedForm::Cubic(8));
    assert!((bound_ratio(&z8, &z8, 0.3).unwrap() - 1.0).abs() < 1e-15);
    let e8 = ThetaSource::from_lattice(catalog::e8()).unwrap();
    assert!((bound_ratio(&z8, &e8, sigma).unwrap() - 4.0 / 3.0).abs() < 1e-12);
    let x80 = ThetaSource::Polynomial(extremal_theta(80).unwrap());
    let r = bound_ratio(&ThetaSource::Closed(ClosedForm::Cubic(80)), &x80, sigma).unwrap();
    assert!((r / (536870912.0 / 1414413.0) - 1.0).abs() < 1e-9);
    assert!(bound_ratio(&z8, &x80, sigma).is_err());
}

#[test]
fn constellation_detection_needs_a_cubic_fine_lattice() {
    let code = build_coset_code(&catalog::d4(), &catalog::d4().scaled(2)).unwrap();
    let p = ChannelParams::new(0.3, 0.3, 0, 10).unwrap();
    assert!(simulate_wiretap(&code, &p, Detector::Constellation).is_err());
}
