//! Jacobi theta functions on the real axis, `q = e^{−πy}`.

use crate::error::{Error, Result};

const MIN_TERMS: usize = 50;
const REL_STOP: f64 = 1e-18;

/// Sum `Σ_{n≥1} f(n)` of a positive, eventually decreasing sequence, stopped
/// when a term drops below `REL_STOP` of the accumulated sum (at least
/// `MIN_TERMS` terms).
fn tail_sum(mut term: impl FnMut(usize) -> f64, base: f64) -> f64 {
    let mut acc = base;
    let mut n = 1;
    loop {
        let t = term(n);
        acc += t;
        if n >= MIN_TERMS && t.abs() < REL_STOP * acc.abs() {
            return acc;
        }
        n += 1;
    }
}

// Direct series in y; accurate for y ≥ 1 where q ≤ e^{−π}.
fn theta3_direct(y: f64) -> f64 {
    tail_sum(|n| 2.0 * (-std::f64::consts::PI * y * (n * n) as f64).exp(), 1.0)
}

fn theta4_direct(y: f64) -> f64 {
    tail_sum(
        |n| {
            let s = if n % 2 == 1 { -2.0 } else { 2.0 };
            s * (-std::f64::consts::PI * y * (n * n) as f64).exp()
        },
        1.0,
    )
}

#[cfg(test)]
fn theta2_direct(y: f64) -> f64 {
    let t = |n: usize| {
        let h = n as f64 + 0.5;
        2.0 * (-std::f64::consts::PI * y * h * h).exp()
    };
    tail_sum(|n| t(n), t(0))
}

/// Natural log of `ϑ₂(e^{−πy})`; stays finite where the value underflows.
pub fn ln_theta2(y: f64) -> f64 {
    if y >= 1.0 {
        // ϑ₂ = 2 q^{1/4} (1 + q² + q⁶ + …)
        let rest = tail_sum(|n| (-std::f64::consts::PI * y * (n * n + n) as f64).exp(), 1.0);
        std::f64::consts::LN_2 - std::f64::consts::PI * y / 4.0 + rest.ln()
    } else {
        -0.5 * y.ln() + ln_theta4(1.0 / y)
    }
}

pub fn ln_theta3(y: f64) -> f64 {
    if y >= 1.0 {
        theta3_direct(y).ln()
    } else {
        -0.5 * y.ln() + theta3_direct(1.0 / y).ln()
    }
}

pub fn ln_theta4(y: f64) -> f64 {
    if y >= 1.0 {
        theta4_direct(y).ln()
    } else {
        -0.5 * y.ln() + ln_theta2(1.0 / y)
    }
}

pub fn theta2(y: f64) -> f64 {
    ln_theta2(y).exp()
}

pub fn theta3(y: f64) -> f64 {
    ln_theta3(y).exp()
}

pub fn theta4(y: f64) -> f64 {
    ln_theta4(y).exp()
}

/// `y` with `q = e^{−πy}`.
pub fn y_of_q(q: f64) -> Result<f64> {
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::Domain(q));
    }
    Ok(-q.ln() / std::f64::consts::PI)
}

/// `ϑ_i(q)` for `i ∈ {2, 3, 4}` and `0 < q < 1`.
pub fn jacobi_theta(i: u8, q: f64) -> Result<f64> {
    let y = y_of_q(q)?;
    match i {
        2 => Ok(theta2(y)),
        3 => Ok(theta3(y)),
        4 => Ok(theta4(y)),
        _ => Err(Error::InvalidArgument(format!("no Jacobi theta function with index {i}"))),
    }
}
