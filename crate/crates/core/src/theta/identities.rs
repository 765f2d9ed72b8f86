//! Residuals of the classical identities linking a lattice, its dual and
//! the modular forms, computed from independent evaluations of both sides.

use std::f64::consts::PI;

use super::modular;
use super::series::theta_enum;
use crate::error::{Error, Result};
use crate::lattice::{EnumerationConfig, Lattice};

/// `|Θ_Λ(y) − vol⁻¹ y^{−n/2} Θ_{Λ*}(1/y)| / Θ_Λ(y)`, both sides enumerated.
pub fn jacobi_identity_residual(lattice: &Lattice, y: f64) -> Result<f64> {
    let dual = lattice.dual()?;
    let n = lattice.dim() as f64;
    let lhs = theta_enum(lattice, y)?;
    let rhs = theta_enum(&dual, 1.0 / y)? * y.powf(-n / 2.0) / lattice.volume();
    Ok((lhs - rhs).abs() / lhs)
}

/// Both sides of Poisson summation for `f(x) = e^{−‖x‖²/2σ²}` shifted by `u`:
///
/// `Σ_{x∈Λ} f(x+u) = (2πσ²)^{n/2} vol⁻¹ Σ_{t∈Λ*} e^{−2π²σ²‖t‖²} cos(2π⟨t,u⟩)`.
///
/// Returns `(direct, dual)`.
pub fn poisson_sums(lattice: &Lattice, sigma: f64, u: &[f64]) -> Result<(f64, f64)> {
    if !(sigma > 0.0) {
        return Err(Error::Domain(sigma));
    }
    let n = lattice.dim();
    if u.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: u.len() });
    }
    let cfg = EnumerationConfig::default();
    // Terms beyond e^{−60} are negligible at the tolerances used here.
    let cut = 60.0;
    let s2 = sigma * sigma;
    let center: Vec<f64> = u.iter().map(|v| -v).collect();
    let direct: f64 = lattice
        .points_near(&center, 2.0 * s2 * cut, &cfg)?
        .iter()
        .map(|(_, d)| (-d / (2.0 * s2)).exp())
        .sum();
    let dual = lattice.dual()?;
    let radius = cut / (2.0 * PI * PI * s2);
    let mut dual_sum = 0.0;
    for p in dual.enumerate_points_with(radius, &cfg)? {
        let t2 = p.norm2();
        let phase: f64 = p.ambient.iter().zip(u).map(|(a, b)| a * b).sum();
        dual_sum += (-2.0 * PI * PI * s2 * t2).exp() * (2.0 * PI * phase).cos();
    }
    let dual_side = (2.0 * PI * s2).powf(n as f64 / 2.0) / lattice.volume() * dual_sum;
    Ok((direct, dual_side))
}

pub fn poisson_residual(lattice: &Lattice, sigma: f64, u: &[f64]) -> Result<f64> {
    let (a, b) = poisson_sums(lattice, sigma, u)?;
    Ok((a - b).abs() / a.abs())
}

/// Relative gap between `Δ = (E₄³ − E₆²)/1728` and `Δ = ϑ₂⁸ϑ₃⁸ϑ₄⁸/256`.
pub fn delta_residual(q: f64) -> Result<f64> {
    let a = modular::discriminant_delta(q)?;
    let b = modular::discriminant_delta_eisenstein(q)?;
    Ok((a - b).abs() / a.abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn self_dual_cubic_residual() {
        assert!(jacobi_identity_residual(&catalog::cubic(4), 1.0).unwrap() < 1e-10);
    }

    #[test]
    fn poisson_on_the_line() {
        let z1 = catalog::cubic(1);
        for sigma in [0.5, 1.0, 2.0] {
            for u in [0.0, 0.3] {
                assert!(poisson_residual(&z1, sigma, &[u]).unwrap() < 1e-9);
            }
        }
    }
}
