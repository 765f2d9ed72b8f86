//! Rate bookkeeping and operating points.

use serde::Serialize;

use crate::lattice::Lattice;

/// Split of the total rate into secret and random bits for one codeword of
/// `n` real dimensions (rates in bits per complex channel use).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RatePlan {
    pub n: usize,
    pub total: f64,
    pub secrecy: f64,
    pub random: f64,
    pub k: usize,
    pub r: usize,
}

impl RatePlan {
    /// `k` secret and `r` random bits per codeword: `R_s = 2k/n`, `R_e = 2r/n`.
    pub fn from_bits(n: usize, k: usize, r: usize) -> Self {
        let secrecy = 2.0 * k as f64 / n as f64;
        let random = 2.0 * r as f64 / n as f64;
        RatePlan { n, total: secrecy + random, secrecy, random, k, r }
    }
}

/// `R_e = log₂ γ_e − log₂ 2π`, clamped at zero. The flag reports clamping.
pub fn random_bit_rate(gamma_e_db: f64) -> (f64, bool) {
    let re = gamma_e_db / 10.0 * 10f64.log2() - (2.0 * std::f64::consts::PI).log2();
    if re < 0.0 {
        (0.0, true)
    } else {
        (re, false)
    }
}

/// `y_op = vol^{−2/n}`.
pub fn operating_point(lattice: &Lattice) -> f64 {
    lattice.volume().powf(-2.0 / lattice.dim() as f64)
}

/// Generalized SNR `vol^{2/n} / (2πσ²)`.
pub fn gsnr(lattice: &Lattice, sigma: f64) -> f64 {
    lattice.volume().powf(2.0 / lattice.dim() as f64) / (2.0 * std::f64::consts::PI * sigma * sigma)
}

pub fn to_db(x: f64) -> f64 {
    10.0 * x.log10()
}

pub fn from_db(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn random_bit_rates() {
        assert!((random_bit_rate(10.0).0 - 0.67).abs() < 0.01);
        assert!((random_bit_rate(20.0).0 - 4.0).abs() < 0.01);
        let two_pi_db = to_db(2.0 * std::f64::consts::PI);
        assert!(random_bit_rate(two_pi_db).0.abs() < 1e-12);
        assert_eq!(random_bit_rate(0.0), (0.0, true));
    }

    #[test]
    fn operating_points() {
        let e8 = catalog::e8();
        assert!((operating_point(&e8) - 1.0).abs() < 1e-12);
        assert!((to_db(operating_point(&e8.scaled(2))) + 6.0206).abs() < 1e-3);
        assert!((operating_point(&catalog::d4()) - 0.5f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn gsnr_relation() {
        let two_e8 = catalog::e8().scaled(2);
        let sigma = (1.0 / (2.0 * std::f64::consts::PI)).sqrt();
        assert!((gsnr(&two_e8, sigma) - 4.0).abs() < 1e-12);
        let y = 1.0 / (2.0 * std::f64::consts::PI * sigma * sigma);
        assert!((gsnr(&two_e8, sigma) - y / operating_point(&two_e8)).abs() < 1e-12);
    }

    #[test]
    fn rate_plan_accounting() {
        let p = RatePlan::from_bits(8, 8, 16);
        assert_eq!(p.secrecy, 2.0);
        assert_eq!(p.random, 4.0);
        assert_eq!(p.total, p.secrecy + p.random);
    }
}
