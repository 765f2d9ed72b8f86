//! Theta series of explicit lattices: enumeration, closed forms and a
//! combined evaluator valid on the whole positive axis.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::sync::Mutex;

use super::{extremal::ThetaPolynomial, jacobi, modular};
use crate::error::{Error, Result};
use crate::lattice::{EnumerationConfig, Lattice};

/// Relative accuracy targeted by [`theta_enum`].
pub const THETA_REL_TOL: f64 = 1e-12;

/// Truncated theta series: vector counts per squared norm `num / den`.
#[derive(Clone, Debug, PartialEq)]
pub struct QSeries {
    pub coeffs: BTreeMap<i64, u64>,
    pub den: i64,
    /// Every vector with squared norm at most this is counted.
    pub norm_bound: f64,
}

impl QSeries {
    pub fn from_lattice(lattice: &Lattice, norm_bound: f64, config: &EnumerationConfig) -> Result<Self> {
        let coeffs = lattice.norm_counts(norm_bound, config)?;
        Ok(QSeries { coeffs, den: lattice.norm_denominator(), norm_bound })
    }

    /// Count at squared norm `num / den` (zero if absent).
    pub fn count(&self, num: i64) -> u64 {
        self.coeffs.get(&num).copied().unwrap_or(0)
    }

    /// `Σ N(t) e^{−πyt}` over the stored shells.
    pub fn eval(&self, y: f64) -> f64 {
        // Sum from the largest norm down for accuracy.
        self.coeffs
            .iter()
            .rev()
            .map(|(&num, &c)| c as f64 * (-PI * y * num as f64 / self.den as f64).exp())
            .sum()
    }

    /// Shells up to squared norm `bound` as `(norm, count)` pairs.
    pub fn shells(&self, bound: f64) -> Vec<(f64, u64)> {
        self.coeffs
            .iter()
            .map(|(&n, &c)| (n as f64 / self.den as f64, c))
            .filter(|(t, _)| *t <= bound + 1e-12)
            .collect()
    }
}

/// `ln` of the volume of the unit ball in `n` dimensions.
fn ln_unit_ball(n: usize) -> f64 {
    let h = n as f64 / 2.0;
    h * PI.ln() - ln_gamma(h + 1.0)
}

fn ln_gamma(x: f64) -> f64 {
    libm::lgamma(x)
}

/// Upper bound on `Σ_{‖x‖² > r} e^{−πy‖x‖²}`.
///
/// Each vector's Voronoi cell lies within the ball of radius `√t + ρ`, with
/// `ρ` a covering-radius bound, so `N(t) ≤ V_n (√t + ρ)ⁿ / vol`. Integrating
/// by parts, the tail is at most `πy ∫_r^∞ N(t) e^{−πyt} dt`.
pub fn tail_bound(n: usize, volume: f64, rho: f64, y: f64, r: f64) -> f64 {
    let a = PI * y;
    let ln_pref = ln_unit_ball(n) - volume.ln() - a * r;
    // ∫_0^∞ e^{−s} (√(r + s/a) + ρ)ⁿ ds by Simpson's rule on [0, S].
    let s_max = 60.0 + 4.0 * n as f64;
    let steps = 4000;
    let h = s_max / steps as f64;
    let f = |s: f64| (-s + n as f64 * ((r + s / a).sqrt() + rho).ln() + ln_pref).exp();
    let mut acc = f(0.0) + f(s_max);
    for i in 1..steps {
        acc += if i % 2 == 1 { 4.0 } else { 2.0 } * f(i as f64 * h);
    }
    acc * h / 3.0
}

/// Smallest squared-norm radius for which the tail is below `tol` (absolute).
pub fn radius_for_tolerance(lattice: &Lattice, y: f64, tol: f64) -> f64 {
    let n = lattice.rank();
    let vol = lattice.volume();
    let rho = lattice.covering_radius_bound();
    let mut r = 1.0f64;
    while tail_bound(n, vol, rho, y, r) > tol {
        r *= 1.05;
    }
    r
}

/// `Θ_Λ(y) = Σ_{x∈Λ} e^{−πy‖x‖²}` by enumeration, with the truncation radius
/// chosen so the neglected tail is below `10⁻¹²` relative (`Θ ≥ 1`).
pub fn theta_enum(lattice: &Lattice, y: f64) -> Result<f64> {
    theta_enum_with(lattice, y, &EnumerationConfig::default())
}

pub fn theta_enum_with(lattice: &Lattice, y: f64, config: &EnumerationConfig) -> Result<f64> {
    if !(y > 0.0 && y.is_finite()) {
        return Err(Error::Domain(y));
    }
    let r = radius_for_tolerance(lattice, y, THETA_REL_TOL);
    Ok(QSeries::from_lattice(lattice, r, config)?.eval(y))
}

/// Lattices whose theta series has a closed form in Jacobi theta functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClosedForm {
    Cubic(usize),
    Checkerboard(usize),
    E8,
    Leech,
}

impl ClosedForm {
    pub fn parse(name: &str) -> Result<Self> {
        let dim = |s: &str| s.parse::<usize>().ok().filter(|&n| n >= 1);
        if let Some(n) = name.strip_prefix('Z').and_then(dim) {
            return Ok(ClosedForm::Cubic(n));
        }
        if let Some(n) = name.strip_prefix('D').and_then(dim) {
            if n >= 2 {
                return Ok(ClosedForm::Checkerboard(n));
            }
        }
        match name {
            "E8" => Ok(ClosedForm::E8),
            "Leech" | "L24" | "Lambda24" => Ok(ClosedForm::Leech),
            _ => Err(Error::UnknownName(name.to_string())),
        }
    }

    pub fn dim(&self) -> usize {
        match *self {
            ClosedForm::Cubic(n) | ClosedForm::Checkerboard(n) => n,
            ClosedForm::E8 => 8,
            ClosedForm::Leech => 24,
        }
    }

    pub fn volume(&self) -> f64 {
        match self {
            ClosedForm::Checkerboard(_) => 2.0,
            _ => 1.0,
        }
    }

    /// `ln Θ(y)`.
    pub fn ln_eval(&self, y: f64) -> f64 {
        let (l2, l3, l4) = (jacobi::ln_theta2(y), jacobi::ln_theta3(y), jacobi::ln_theta4(y));
        match *self {
            ClosedForm::Cubic(n) => n as f64 * l3,
            ClosedForm::Checkerboard(n) => {
                let n = n as f64;
                n * l3 + (0.5 * (1.0 + (n * (l4 - l3)).exp())).ln()
            }
            ClosedForm::E8 => modular::ln_e4_theta(y),
            ClosedForm::Leech => {
                // (1/8)(ϑ₂⁸+ϑ₃⁸+ϑ₄⁸)³ − (45/16)(ϑ₂ϑ₃ϑ₄)⁸ = E₄³ − 720Δ
                let ln_e4 = modular::ln_e4_theta(y);
                let ln_d = 8.0 * (l2 + l3 + l4);
                3.0 * ln_e4 + (1.0 - 45.0 / 16.0 * (ln_d - 3.0 * ln_e4).exp()).ln()
            }
        }
    }
}

/// Closed forms evaluated at `q = e^{−πy}`.
pub fn theta_closed_form(name: &str, y: f64) -> Result<f64> {
    if !(y > 0.0 && y.is_finite()) {
        return Err(Error::Domain(y));
    }
    Ok(ClosedForm::parse(name)?.ln_eval(y).exp())
}

/// Enumeration-backed theta evaluator valid for every `y > 0`: the primal
/// series is used for `y ≥ vol^{−2/n}` and the dual series through
/// `Θ_Λ(y) = vol⁻¹ y^{−n/2} Θ_{Λ*}(1/y)` below it.
#[derive(Debug)]
pub struct LatticeTheta {
    lattice: Lattice,
    dual: Lattice,
    split: f64,
    primal: Mutex<Option<QSeries>>,
    dual_series: Mutex<Option<QSeries>>,
}

impl LatticeTheta {
    pub fn new(lattice: Lattice) -> Result<Self> {
        let dual = lattice.dual()?;
        let n = lattice.dim() as f64;
        let split = lattice.volume().powf(-2.0 / n);
        Ok(LatticeTheta { lattice, dual, split, primal: Mutex::new(None), dual_series: Mutex::new(None) })
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    /// Evaluate the series cached in `cell`, enumerating it on first use
    /// to a radius accurate for every argument `≥ y_min`.
    fn cached_eval(lattice: &Lattice, cell: &Mutex<Option<QSeries>>, y_min: f64, y: f64) -> Result<f64> {
        let mut guard = cell.lock().expect("theta cache lock");
        if guard.is_none() {
            let r = radius_for_tolerance(lattice, y_min, THETA_REL_TOL);
            *guard = Some(QSeries::from_lattice(lattice, r, &EnumerationConfig::default())?);
        }
        Ok(guard.as_ref().expect("filled above").eval(y))
    }

    pub fn ln_eval(&self, y: f64) -> Result<f64> {
        if !(y > 0.0 && y.is_finite()) {
            return Err(Error::Domain(y));
        }
        let n = self.lattice.dim() as f64;
        if y >= self.split {
            Ok(Self::cached_eval(&self.lattice, &self.primal, self.split, y)?.ln())
        } else {
            let dual_val = Self::cached_eval(&self.dual, &self.dual_series, 1.0 / self.split, 1.0 / y)?;
            Ok(-self.lattice.volume().ln() - n / 2.0 * y.ln() + dual_val.ln())
        }
    }
}

/// A theta series that can be evaluated on the positive real axis.
pub enum ThetaSource {
    Lattice(LatticeTheta),
    Closed(ClosedForm),
    Polynomial(ThetaPolynomial),
}

impl ThetaSource {
    pub fn from_lattice(lattice: Lattice) -> Result<Self> {
        Ok(ThetaSource::Lattice(LatticeTheta::new(lattice)?))
    }

    pub fn dim(&self) -> usize {
        match self {
            ThetaSource::Lattice(l) => l.lattice.dim(),
            ThetaSource::Closed(c) => c.dim(),
            ThetaSource::Polynomial(p) => p.n,
        }
    }

    pub fn volume(&self) -> f64 {
        match self {
            ThetaSource::Lattice(l) => l.lattice.volume(),
            ThetaSource::Closed(c) => c.volume(),
            ThetaSource::Polynomial(_) => 1.0,
        }
    }

    pub fn ln_eval(&self, y: f64) -> Result<f64> {
        if !(y > 0.0 && y.is_finite()) {
            return Err(Error::Domain(y));
        }
        match self {
            ThetaSource::Lattice(l) => l.ln_eval(y),
            ThetaSource::Closed(c) => Ok(c.ln_eval(y)),
            ThetaSource::Polynomial(p) => p.ln_eval(y),
        }
    }

    pub fn eval(&self, y: f64) -> Result<f64> {
        Ok(self.ln_eval(y)?.exp())
    }
}
