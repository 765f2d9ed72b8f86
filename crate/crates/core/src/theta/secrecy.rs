//! Secrecy function, weak and strong secrecy gains and the Siegel–Weil bound.

use num_traits::ToPrimitive;
use serde::Serialize;

use super::extremal::{decompose, ThetaPolynomial};
use super::jacobi;
use super::modular;
use super::series::{ClosedForm, LatticeTheta, ThetaSource};
use crate::error::{Error, Result};
use crate::lattice::{Lattice, Structure};
use crate::rational::{self, int, Rational};

/// `ln Ξ(y) = n ln ϑ₃(e^{−πλ²y}) − ln Θ(y)` with `λ² = vol^{2/n}`.
pub fn ln_secrecy_function(source: &ThetaSource, y: f64) -> Result<f64> {
    let n = source.dim() as f64;
    let lambda2 = source.volume().powf(2.0 / n);
    Ok(n * jacobi::ln_theta3(lambda2 * y) - source.ln_eval(y)?)
}

/// `Ξ_Λ(y) = Θ_{λZⁿ}(y) / Θ_Λ(y)`.
pub fn secrecy_function(source: &ThetaSource, y: f64) -> Result<f64> {
    Ok(ln_secrecy_function(source, y)?.exp())
}

/// Symmetry point `vol^{−2/n}` of a lattice similar to its dual.
pub fn symmetry_point(n: usize, volume: f64) -> f64 {
    volume.powf(-2.0 / n as f64)
}

#[derive(Clone, Debug, PartialEq)]
pub enum WeakGain {
    Exact(Rational),
    Numeric(f64),
}

impl WeakGain {
    pub fn value(&self) -> f64 {
        match self {
            WeakGain::Exact(r) => rational::to_f64(r),
            WeakGain::Numeric(v) => *v,
        }
    }

    pub fn exact(&self) -> Option<&Rational> {
        match self {
            WeakGain::Exact(r) => Some(r),
            WeakGain::Numeric(_) => None,
        }
    }

    pub fn display(&self) -> String {
        match self {
            WeakGain::Exact(r) => rational::format_rational(r),
            WeakGain::Numeric(v) => format!("{v:.12}"),
        }
    }
}

/// Express the theta series of an even unimodular lattice as a polynomial in
/// `E₄` and `Δ` by matching its enumerated coefficients up to norm `2m`.
pub fn theta_polynomial_of(lattice: &Lattice) -> Result<ThetaPolynomial> {
    if !(lattice.is_full_rank() && lattice.is_even() && lattice.is_unimodular()) {
        return Err(Error::RequiresSymmetry(format!("{} is not even unimodular", lattice.display_name())));
    }
    let n = lattice.dim();
    let (m, _) = decompose(n)?;
    let counts = lattice.norm_counts(2.0 * m as f64, &Default::default())?;
    // Δ^j = Q^j + …, so b_j is fixed by the coefficient of Q^j once
    // b_1..b_{j−1} are known.
    let mut b = vec![Rational::from_integer(0.into()); m];
    for j in 1..=m {
        let current = ThetaPolynomial::new(n, b.clone())?.expansion(m);
        let target = int(counts.get(&(2 * j as i64)).copied().unwrap_or(0) as i64);
        b[j - 1] = target - &current[j];
    }
    ThetaPolynomial::new(n, b)
}

/// Weak secrecy gain `Ξ(y₀)` at the symmetry point.
pub fn weak_secrecy_gain(source: &ThetaSource) -> Result<WeakGain> {
    match source {
        ThetaSource::Polynomial(p) => Ok(WeakGain::Exact(p.weak_gain())),
        ThetaSource::Closed(ClosedForm::Cubic(_)) => Ok(WeakGain::Exact(int(1))),
        ThetaSource::Closed(ClosedForm::E8) => Ok(WeakGain::Exact(ThetaPolynomial::e8_power(8)?.weak_gain())),
        ThetaSource::Closed(ClosedForm::Leech) => {
            Ok(WeakGain::Exact(super::extremal::extremal_theta(24)?.weak_gain()))
        }
        ThetaSource::Closed(c @ ClosedForm::Checkerboard(n)) => {
            if *n == 2 || *n == 4 {
                let y0 = symmetry_point(*n, c.volume());
                Ok(WeakGain::Numeric(secrecy_function(source, y0)?))
            } else {
                Err(Error::RequiresSymmetry(format!("D{n} is not similar to its dual")))
            }
        }
        ThetaSource::Lattice(t) => weak_gain_of_lattice(t, source),
    }
}

fn weak_gain_of_lattice(t: &LatticeTheta, source: &ThetaSource) -> Result<WeakGain> {
    let l = t.lattice();
    if matches!(l.structure(), Structure::Cubic) {
        return Ok(WeakGain::Exact(int(1)));
    }
    if l.is_full_rank() && l.is_even() && l.is_unimodular() && l.dim() % 8 == 0 {
        return Ok(WeakGain::Exact(theta_polynomial_of(l)?.weak_gain()));
    }
    if !l.is_dual_equivalent() {
        return Err(Error::RequiresSymmetry(format!(
            "{} has no known symmetry point; use the strong secrecy gain",
            l.display_name()
        )));
    }
    let y0 = symmetry_point(l.dim(), l.volume());
    Ok(WeakGain::Numeric(secrecy_function(source, y0)?))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StrongGain {
    pub chi: f64,
    pub y_star: f64,
    /// Set when the secrecy function was not unimodal on the search range
    /// and the result comes from the grid fallback.
    pub fallback: bool,
}

/// Search range in `log₁₀ y` (±40 dB).
const LOG_Y_MIN: f64 = -4.0;
const LOG_Y_MAX: f64 = 4.0;
const LOG_Y_TOL: f64 = 1e-6;
const GRID: usize = 161;

/// `sup_{y>0} Ξ(y)`, searched over `log y ∈ [−40 dB, 40 dB]`.
pub fn strong_secrecy_gain(source: &ThetaSource) -> Result<StrongGain> {
    // Ξ is identically one for scaled cubic lattices.
    let cubic = match source {
        ThetaSource::Closed(ClosedForm::Cubic(_)) => true,
        ThetaSource::Lattice(t) => matches!(t.lattice().structure(), Structure::Cubic),
        _ => false,
    };
    if cubic {
        return Ok(StrongGain { chi: 1.0, y_star: 1.0, fallback: false });
    }
    let f = |t: f64| ln_secrecy_function(source, 10f64.powf(t));
    let grid: Vec<f64> = (0..GRID)
        .map(|i| LOG_Y_MIN + (LOG_Y_MAX - LOG_Y_MIN) * i as f64 / (GRID - 1) as f64)
        .collect();
    let values = grid.iter().map(|&t| f(t)).collect::<Result<Vec<_>>>()?;
    let best = (0..GRID).max_by(|&a, &b| values[a].total_cmp(&values[b])).expect("nonempty grid");
    let unimodal = is_unimodal(&values);

    if unimodal {
        let (t, v) = golden_section(&f, LOG_Y_MIN, LOG_Y_MAX)?;
        let step = (LOG_Y_MAX - LOG_Y_MIN) / (GRID - 1) as f64;
        if (t - grid[best]).abs() <= step {
            let (t, v) = if values[best] > v { (grid[best], values[best]) } else { (t, v) };
            return Ok(StrongGain { chi: v.exp(), y_star: 10f64.powf(t), fallback: false });
        }
    }
    let lo = grid[best.saturating_sub(1)];
    let hi = grid[(best + 1).min(GRID - 1)];
    let (t, v) = golden_section(&f, lo, hi)?;
    Ok(StrongGain { chi: v.exp(), y_star: 10f64.powf(t), fallback: true })
}

/// Nondecreasing then nonincreasing, up to rounding noise.
fn is_unimodal(v: &[f64]) -> bool {
    let tol = 1e-12;
    let mut descending = false;
    for w in v.windows(2) {
        let d = w[1] - w[0];
        if descending {
            if d > tol * (1.0 + w[0].abs()) {
                return false;
            }
        } else if d < -tol * (1.0 + w[0].abs()) {
            descending = true;
        }
    }
    true
}

fn golden_section(f: &impl Fn(f64) -> Result<f64>, mut a: f64, mut b: f64) -> Result<(f64, f64)> {
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - phi * (b - a);
    let mut d = a + phi * (b - a);
    let mut fc = f(c)?;
    let mut fd = f(d)?;
    while (b - a).abs() > LOG_Y_TOL {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - phi * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + phi * (b - a);
            fd = f(d)?;
        }
    }
    let t = (a + b) / 2.0;
    Ok((t, f(t)?))
}

/// Weak and strong gains of a theta source, with the relative gap between
/// them (zero when the supremum sits at the symmetry point).
#[derive(Clone, Debug)]
pub struct SecrecyGain {
    pub id: String,
    pub weak: Option<WeakGain>,
    pub strong: StrongGain,
    pub symmetry_point: Option<f64>,
    pub conjecture_gap: Option<f64>,
}

pub fn secrecy_gain(id: &str, source: &ThetaSource) -> Result<SecrecyGain> {
    let weak = match weak_secrecy_gain(source) {
        Ok(w) => Some(w),
        Err(Error::RequiresSymmetry(_)) => None,
        Err(e) => return Err(e),
    };
    let strong = strong_secrecy_gain(source)?;
    let symmetry_point = weak.as_ref().map(|_| symmetry_point(source.dim(), source.volume()));
    let conjecture_gap = weak.as_ref().map(|w| (strong.chi - w.value()).abs() / w.value());
    Ok(SecrecyGain { id: id.to_string(), weak, strong, symmetry_point, conjecture_gap })
}

/// Siegel–Weil lower bound `ϑ₃(e^{−π})ⁿ / E_{n/2}(e^{−π})` on the best
/// secrecy gain of an even unimodular lattice in dimension `n`.
pub fn secrecy_gain_lower_bound(n: usize) -> Result<f64> {
    if n < 8 || n % 8 != 0 || n / 2 > modular::MAX_BERNOULLI {
        return Err(Error::InvalidArgument(format!("dimension {n} must be a multiple of 8 in 8..=400")));
    }
    let ln = n as f64 * jacobi::ln_theta3(1.0) - modular::eisenstein_y(n / 2, 1.0).ln();
    Ok(ln.exp())
}

/// `ϑ₃(e^{−π})ⁿ / 2`, the large-`n` form of the bound.
pub fn lower_bound_asymptotic(n: usize) -> f64 {
    (n as f64 * jacobi::ln_theta3(1.0)).exp() / 2.0
}

/// `1.086ⁿ / 2`, the bound with the base rounded to three decimals.
pub fn lower_bound_rounded(n: usize) -> f64 {
    1.086f64.powi(n as i32) / 2.0
}

/// Approximation of the gain at `y = 1` keeping only the first shell of each
/// theta series: `(1 + τ_Z e^{−π d_Z}) / (1 + τ_Λ e^{−π d_Λ})`.
pub fn first_shell_gain(n: usize) -> Result<f64> {
    let (norm, tau) = super::extremal::extremal_kissing(n)?;
    let tau = tau.to_f64().ok_or_else(|| Error::InvalidArgument("kissing number too large".into()))?;
    let cubic = crate::catalog::cubic(n);
    let (dz, tz) = cubic.min_norm_and_kissing()?;
    let dz = rational::to_f64(&dz);
    let num = 1.0 + tz as f64 * (-std::f64::consts::PI * dz).exp();
    let den = 1.0 + tau * (-std::f64::consts::PI * norm as f64).exp();
    Ok(num / den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::rational::rat;

    #[test]
    fn cubic_secrecy_function_is_flat() {
        let s = ThetaSource::Closed(ClosedForm::Cubic(5));
        for y in [0.01, 0.5, 1.0, 7.0] {
            assert!((secrecy_function(&s, y).unwrap() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn e8_weak_gain_from_enumeration() {
        let s = ThetaSource::from_lattice(catalog::e8()).unwrap();
        assert_eq!(weak_secrecy_gain(&s).unwrap(), WeakGain::Exact(rat(4, 3)));
    }

    #[test]
    fn non_symmetric_lattice_requires_strong_gain() {
        let s = ThetaSource::from_lattice(catalog::checkerboard(3)).unwrap();
        assert!(matches!(weak_secrecy_gain(&s), Err(Error::RequiresSymmetry(_))));
    }

    #[test]
    fn first_shell_gain_at_80() {
        let v = first_shell_gain(80).unwrap();
        assert!((v - 7.7957).abs() < 5e-4, "{v}");
    }

    #[test]
    fn unimodality_check() {
        assert!(is_unimodal(&[1.0, 2.0, 3.0, 2.0, 1.0]));
        assert!(!is_unimodal(&[1.0, 3.0, 2.0, 3.0, 1.0]));
    }
}
