//! Theta series of even unimodular lattices as polynomials in `E₄` and `Δ`,
//! and the extremal series.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::modular::{self, delta_expansion, e4_expansion, series_mul, series_pow};
use crate::error::{Error, Result};
use crate::rational::{self, rat, Rational};

/// Largest dimension accepted for exact computations.
pub const MAX_DIM: usize = 200;

/// `E₄^{3m+k} + Σ_{j=1}^{m} b_j E₄^{3(m−j)+k} Δ^j` in dimension `n = 24m + 8k`.
#[derive(Clone, Debug, PartialEq)]
pub struct ThetaPolynomial {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub b: Vec<Rational>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ThetaPolynomialSpec {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub b: Vec<String>,
}

/// `(m, k)` with `n = 24m + 8k`, `k ∈ {0, 1, 2}`.
pub fn decompose(n: usize) -> Result<(usize, usize)> {
    if n == 0 || n % 8 != 0 {
        return Err(Error::InvalidArgument(format!("dimension {n} is not a positive multiple of 8")));
    }
    if n > MAX_DIM {
        return Err(Error::InvalidArgument(format!("dimension {n} exceeds {MAX_DIM}")));
    }
    Ok((n / 24, (n % 24) / 8))
}

impl ThetaPolynomial {
    pub fn new(n: usize, b: Vec<Rational>) -> Result<Self> {
        let (m, k) = decompose(n)?;
        if b.len() != m {
            return Err(Error::DimensionMismatch { expected: m, got: b.len() });
        }
        Ok(ThetaPolynomial { n, m, k, b })
    }

    /// `E₄^{n/8}`, the theta series of `E₈^{n/8}`.
    pub fn e8_power(n: usize) -> Result<Self> {
        let (m, _) = decompose(n)?;
        Self::new(n, vec![Rational::zero(); m])
    }

    fn basis_expansions(n: usize, order: usize) -> Result<Vec<Vec<Rational>>> {
        let (m, k) = decompose(n)?;
        let e4 = e4_expansion(order);
        let delta = delta_expansion(order);
        Ok((0..=m)
            .map(|j| series_mul(&series_pow(&e4, 3 * (m - j) + k, order), &series_pow(&delta, j, order), order))
            .collect())
    }

    /// Coefficients in `Q = q²` up to `Q^order`; index `j` counts vectors of
    /// squared norm `2j`.
    pub fn expansion(&self, order: usize) -> Vec<Rational> {
        let basis = Self::basis_expansions(self.n, order).expect("validated dimension");
        let mut out = basis[0].clone();
        for (bj, col) in self.b.iter().zip(&basis[1..]) {
            for (o, c) in out.iter_mut().zip(col) {
                *o += bj * c;
            }
        }
        out
    }

    /// Weak secrecy gain `χ = 1 / Σ b_j ρ_{E₄}^{3(m−j)+k} ρ_Δ^j` with
    /// `ρ_{E₄} = 3/4`, `ρ_Δ = 2⁻¹²`, `b₀ = 1`.
    pub fn weak_gain(&self) -> Rational {
        let rho_e4 = rat(3, 4);
        let rho_d = rational::pow2(-12);
        let pow = |r: &Rational, e: usize| (0..e).fold(Rational::one(), |acc, _| acc * r);
        let mut inv = pow(&rho_e4, 3 * self.m + self.k);
        for (j, bj) in self.b.iter().enumerate() {
            let j = j + 1;
            inv += bj * pow(&rho_e4, 3 * (self.m - j) + self.k) * pow(&rho_d, j);
        }
        Rational::one() / inv
    }

    /// `ln Θ(e^{−πy})` computed as `(3m+k) ln E₄ + ln Σ b_j (Δ/E₄³)^j`.
    pub fn ln_eval(&self, y: f64) -> Result<f64> {
        if !(y > 0.0 && y.is_finite()) {
            return Err(Error::Domain(y));
        }
        let ln_e4 = modular::ln_e4_theta(y);
        let ratio = (modular::ln_delta_theta(y) - 3.0 * ln_e4).exp();
        let mut poly = 1.0;
        let mut p = 1.0;
        for bj in &self.b {
            p *= ratio;
            poly += rational::to_f64(bj) * p;
        }
        if poly <= 0.0 {
            return Err(Error::Domain(y));
        }
        Ok((3 * self.m + self.k) as f64 * ln_e4 + poly.ln())
    }

    pub fn eval(&self, y: f64) -> Result<f64> {
        Ok(self.ln_eval(y)?.exp())
    }

    /// Human-readable form, e.g. `E4^3 - 720*Delta`.
    pub fn formula(&self) -> String {
        let mut s = power_term(3 * self.m + self.k, 0);
        for (j, bj) in self.b.iter().enumerate() {
            if bj.is_zero() {
                continue;
            }
            let j = j + 1;
            s.push_str(if bj.is_negative() { " - " } else { " + " });
            let mag = rational::format_rational(&bj.abs());
            let term = power_term(3 * (self.m - j) + self.k, j);
            if mag == "1" {
                s.push_str(&term);
            } else {
                s.push_str(&format!("{mag}*{term}"));
            }
        }
        s
    }

    pub fn to_spec(&self) -> ThetaPolynomialSpec {
        ThetaPolynomialSpec {
            n: self.n,
            m: self.m,
            k: self.k,
            b: self.b.iter().map(rational::format_rational).collect(),
        }
    }

    pub fn from_spec(spec: &ThetaPolynomialSpec) -> Result<Self> {
        let b = spec.b.iter().map(|s| rational::parse_rational(s)).collect::<Result<Vec<_>>>()?;
        let p = Self::new(spec.n, b)?;
        if p.m != spec.m || p.k != spec.k {
            return Err(Error::InvalidArgument(format!(
                "m = {}, k = {} do not match n = {}",
                spec.m, spec.k, spec.n
            )));
        }
        Ok(p)
    }
}

fn power_term(e4: usize, delta: usize) -> String {
    let part = |name: &str, e: usize| match e {
        0 => None,
        1 => Some(name.to_string()),
        _ => Some(format!("{name}^{e}")),
    };
    let parts: Vec<String> = [part("E4", e4), part("Delta", delta)].into_iter().flatten().collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// The extremal theta series in dimension `n`: the `b_j` are fixed by
/// requiring no vectors of squared norm `2, 4, …, 2m`.
pub fn extremal_theta(n: usize) -> Result<ThetaPolynomial> {
    let (m, _) = decompose(n)?;
    if m == 0 {
        return ThetaPolynomial::new(n, Vec::new());
    }
    let basis = ThetaPolynomial::basis_expansions(n, m)?;
    // Row i: coefficient of Q^{i+1}; column j: basis element j+1.
    let a: Vec<Vec<Rational>> = (1..=m).map(|i| (1..=m).map(|j| basis[j][i].clone()).collect()).collect();
    let rhs: Vec<Vec<Rational>> = (1..=m).map(|i| vec![-basis[0][i].clone()]).collect();
    let inv = rational::inverse(&a).expect("extremal system is nonsingular for valid dimensions");
    let sol = rational::mul(&inv, &rhs);
    ThetaPolynomial::new(n, sol.into_iter().map(|mut r| r.remove(0)).collect())
}

/// Squared norm and count of the first nonzero shell of an extremal series.
pub fn extremal_kissing(n: usize) -> Result<(usize, Rational)> {
    let p = extremal_theta(n)?;
    let order = p.m + 1;
    let e = p.expansion(order);
    Ok((2 * order, e[order].clone()))
}
