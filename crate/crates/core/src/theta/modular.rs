//! Bernoulli numbers, Eisenstein series and the modular discriminant.
//!
//! Real evaluations use `q = e^{−πy}`; with this convention the theta series
//! of an even unimodular lattice is a series in `q²`, and so are `E_{2k}` and
//! `Δ`. Exact expansions are returned as coefficient vectors in `Q = q²`.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::jacobi;
use crate::error::{Error, Result};
use crate::rational::{self, int, Rational};

pub const MAX_BERNOULLI: usize = 200;

fn bernoulli_table() -> &'static [Rational] {
    static TABLE: OnceLock<Vec<Rational>> = OnceLock::new();
    TABLE.get_or_init(|| {
        // Σ_{j=0}^{m} C(m+1, j) B_j = 0 for m ≥ 1.
        let mut b: Vec<Rational> = vec![Rational::one()];
        for m in 1..=MAX_BERNOULLI {
            let mut binom = BigInt::one();
            let mut acc = Rational::zero();
            for (j, bj) in b.iter().enumerate() {
                if !bj.is_zero() {
                    acc += Rational::from_integer(binom.clone()) * bj;
                }
                binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
            }
            b.push(-acc / Rational::from_integer(BigInt::from(m + 1)));
        }
        b
    })
}

/// Bernoulli number `B_l` (with `B₁ = −1/2`), exact, for `l ≤ 200`.
pub fn bernoulli(l: usize) -> Result<Rational> {
    bernoulli_table()
        .get(l)
        .cloned()
        .ok_or_else(|| Error::InvalidArgument(format!("Bernoulli index {l} exceeds {MAX_BERNOULLI}")))
}

fn check_weight(k2: usize) -> Result<()> {
    if k2 < 4 || k2 % 2 != 0 || k2 > MAX_BERNOULLI {
        return Err(Error::InvalidArgument(format!("Eisenstein weight {k2} must be even, 4..=200")));
    }
    Ok(())
}

/// `E_{2k}(q) = 1 − (4k / B_{2k}) Σ m^{2k−1} q^{2m} / (1 − q^{2m})`, evaluated
/// term by term in log space so that large weights do not overflow.
pub fn eisenstein(k2: usize, q: f64) -> Result<f64> {
    check_weight(k2)?;
    let y = jacobi::y_of_q(q)?;
    Ok(eisenstein_y(k2, y))
}

pub(crate) fn eisenstein_y(k2: usize, y: f64) -> f64 {
    let b = bernoulli(k2).expect("weight checked");
    // −2k2 / B has the sign opposite to B.
    let sign = if b.is_negative() { 1.0 } else { -1.0 };
    let ln_coef = (2.0 * k2 as f64).ln() - rational::ln_abs(&b);
    let ln_q2 = -2.0 * std::f64::consts::PI * y;
    let peak = (k2 as f64 - 1.0) / (-ln_q2);
    let mut sum = 0.0f64;
    let mut m = 1usize;
    loop {
        let mf = m as f64;
        let ln_qm = ln_q2 * mf;
        let ln_term = ln_coef + (k2 as f64 - 1.0) * mf.ln() + ln_qm - (-ln_qm.exp()).ln_1p();
        let term = ln_term.exp();
        sum += term;
        if m >= 50 && mf > peak && term < 1e-18 * (1.0 + sum) {
            break;
        }
        m += 1;
    }
    1.0 + sign * sum
}

/// `Δ(q) = (1/256) ϑ₂⁸ ϑ₃⁸ ϑ₄⁸`.
pub fn discriminant_delta(q: f64) -> Result<f64> {
    let y = jacobi::y_of_q(q)?;
    Ok(ln_delta_theta(y).exp())
}

/// `Δ(q) = (E₄³ − E₆²) / 1728`.
pub fn discriminant_delta_eisenstein(q: f64) -> Result<f64> {
    let e4 = eisenstein(4, q)?;
    let e6 = eisenstein(6, q)?;
    Ok((e4.powi(3) - e6 * e6) / 1728.0)
}

/// `ln Δ(e^{−πy})` from the theta product.
pub fn ln_delta_theta(y: f64) -> f64 {
    8.0 * (jacobi::ln_theta2(y) + jacobi::ln_theta3(y) + jacobi::ln_theta4(y)) - 256f64.ln()
}

/// `ln E₄(e^{−πy})` via `E₄ = ½(ϑ₂⁸ + ϑ₃⁸ + ϑ₄⁸)`, stable for every `y > 0`.
pub fn ln_e4_theta(y: f64) -> f64 {
    let (a, b, c) = (8.0 * jacobi::ln_theta2(y), 8.0 * jacobi::ln_theta3(y), 8.0 * jacobi::ln_theta4(y));
    let m = a.max(b).max(c);
    m + ((a - m).exp() + (b - m).exp() + (c - m).exp()).ln() - std::f64::consts::LN_2
}

fn sigma(power: u32, m: usize) -> BigInt {
    (1..=m).filter(|d| m % d == 0).map(|d| BigInt::from(d).pow(power)).sum()
}

/// Coefficients of `E₄` in `Q = q²` up to `Q^order`.
pub fn e4_expansion(order: usize) -> Vec<Rational> {
    let mut v = vec![Rational::one()];
    v.extend((1..=order).map(|m| Rational::from_integer(sigma(3, m) * 240)));
    v
}

/// Coefficients of `E₆` in `Q = q²` up to `Q^order`.
pub fn e6_expansion(order: usize) -> Vec<Rational> {
    let mut v = vec![Rational::one()];
    v.extend((1..=order).map(|m| Rational::from_integer(sigma(5, m) * -504)));
    v
}

/// Coefficients of `Δ = (E₄³ − E₆²)/1728` in `Q = q²`.
pub fn delta_expansion(order: usize) -> Vec<Rational> {
    let e4 = e4_expansion(order);
    let e6 = e6_expansion(order);
    let e4_3 = series_mul(&series_mul(&e4, &e4, order), &e4, order);
    let e6_2 = series_mul(&e6, &e6, order);
    e4_3.iter().zip(&e6_2).map(|(a, b)| (a - b) / int(1728)).collect()
}

/// Product of two truncated power series.
pub fn series_mul(a: &[Rational], b: &[Rational], order: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); order + 1];
    for (i, ai) in a.iter().enumerate().take(order + 1) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(order + 1 - i) {
            out[i + j] += ai * bj;
        }
    }
    out
}

pub fn series_pow(a: &[Rational], e: usize, order: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); order + 1];
    out[0] = Rational::one();
    for _ in 0..e {
        out = series_mul(&out, a, order);
    }
    out
}
