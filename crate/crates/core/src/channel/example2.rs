//! The two-dimensional example: coset coding with `Z²/2Z²` against 4-QAM.
//!
//! Per real dimension the coset scheme transmits one of six equally likely
//! levels `{−5a, −3a, −a, a, 3a, 5a}` (the points `{−2, …, 3}` of `Z` when
//! `a = ½`), and Eve detects the nearest level. With `N₀ = 2σ²` this gives
//! `E_b/N₀ = (35/6)(a/σ)²`, i.e. `θ = (6/35) E_b/N₀ = (a/σ)²`.

use super::qfunc::q_function;
use super::sim::{simulate_wiretap, ChannelParams, Detector, SimResult};
use crate::catalog;
use crate::error::Result;
use crate::wiretap::build_coset_code;

/// Half the level spacing in the integer frame.
pub const HALF_SPACING: f64 = 0.5;

/// 4-QAM correct-decision probability `1 − 2Q(√(2E_b/N₀))` (linear `E_b/N₀`).
pub fn pce_4qam(ebn0: f64) -> f64 {
    1.0 - qam_deficit(ebn0)
}

fn qam_deficit(ebn0: f64) -> f64 {
    2.0 * q_function((2.0 * ebn0).sqrt())
}

/// Exact symbol-correct probability of 4-QAM with per-dimension detection,
/// `(1 − Q(√(2E_b/N₀)))²`.
pub fn pce_4qam_exact(ebn0: f64) -> f64 {
    (1.0 - q_function((2.0 * ebn0).sqrt())).powi(2)
}

pub fn theta_of(ebn0: f64) -> f64 {
    6.0 / 35.0 * ebn0
}

/// Per-dimension probability of missing the coset.
fn coset_miss(ebn0: f64) -> f64 {
    let s = theta_of(ebn0).sqrt();
    (5.0 * q_function(s) - 4.0 * q_function(3.0 * s) + 3.0 * q_function(5.0 * s) - 2.0 * q_function(7.0 * s)
        + q_function(9.0 * s))
        / 3.0
}

/// Eve's probability of recovering the coset,
/// `[1 − ⅓(5Q(√θ) − 4Q(3√θ) + 3Q(5√θ) − 2Q(7√θ) + Q(9√θ))]²`.
pub fn pce_coset_z2(ebn0: f64) -> f64 {
    (1.0 - coset_miss(ebn0)).powi(2)
}

/// `pce_coset_z2 − pce_4qam`, computed from the complements so that it keeps
/// its sign where both probabilities round to one.
pub fn pce_difference(ebn0: f64) -> f64 {
    let m = coset_miss(ebn0);
    qam_deficit(ebn0) - (2.0 * m - m * m)
}

/// Noise standard deviation in the integer frame for a given `E_b/N₀`.
pub fn sigma_for(ebn0: f64) -> f64 {
    HALF_SPACING / theta_of(ebn0).sqrt()
}

/// Sign changes of [`pce_difference`] over `[lo_db, hi_db]`, located by
/// bisection after a grid scan with the given step.
pub fn crossovers_db(lo_db: f64, hi_db: f64, step_db: f64) -> Vec<f64> {
    let f = |db: f64| pce_difference(10f64.powf(db / 10.0));
    let mut out = Vec::new();
    let steps = ((hi_db - lo_db) / step_db).ceil() as usize;
    let mut a = lo_db;
    let mut fa = f(a);
    for i in 1..=steps {
        let b = (lo_db + i as f64 * step_db).min(hi_db);
        let fb = f(b);
        if (fa < 0.0) != (fb < 0.0) {
            let (mut l, mut r, mut fl) = (a, b, fa);
            for _ in 0..60 {
                let mid = 0.5 * (l + r);
                let fm = f(mid);
                if (fm < 0.0) == (fl < 0.0) {
                    l = mid;
                    fl = fm;
                } else {
                    r = mid;
                }
            }
            out.push(0.5 * (l + r));
        }
        a = b;
        fa = fb;
    }
    out
}

/// Monte Carlo of Eve's coset decisions over the 36-point constellation.
pub fn simulate_example2(ebn0: f64, trials: u64, seed: u64) -> Result<SimResult> {
    let z2 = catalog::cubic(2);
    let code = build_coset_code(&z2, &z2.scaled(2))?.with_offset_range(1);
    let sigma = sigma_for(ebn0);
    let params = ChannelParams::new(sigma, sigma, seed, trials)?;
    let (_, eve) = simulate_wiretap(&code, &params, Detector::Constellation)?;
    Ok(eve)
}
