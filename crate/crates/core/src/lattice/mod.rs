//! Exact lattice representation.
//!
//! A lattice is stored as a rational basis `M` (rows are basis vectors) plus an
//! integer `scale2 = p`; the true generator matrix is `M · 2^{p/2}`. This keeps
//! every squared norm rational even for lattices such as `√2·E₈`.

mod construction;
mod coset;
mod decode;
mod enumerate;

pub use construction::{construction_a, construction_a_scaled};
pub use coset::{coset_label, Quotient};
pub use enumerate::{EnumerationConfig, DEFAULT_POINT_CAP};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::code::BinaryCode;
use crate::error::{Error, Result};
use crate::rational::{self, RatMatrix, Rational};

/// Known structure used to select a fast exact decoder.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Structure {
    Generic,
    /// `2^{p/2} · Zⁿ` with the identity basis.
    Cubic,
    /// `2^{p/2} · (2Zⁿ + C)` with a Hermite-normal-form integer basis.
    ConstructionA(BinaryCode),
}

#[derive(Clone, Debug)]
pub struct Lattice {
    basis: RatMatrix,
    scale2: i32,
    name: Option<String>,
    structure: Structure,
    dual_equivalent: bool,
    // Derived data.
    gram_int: Vec<Vec<i64>>,
    norm_den: i64,
    ambient_basis: Vec<Vec<f64>>,
    // Construction A only: integer HNF basis and the codeword list.
    ca_cache: Option<std::sync::Arc<CaCache>>,
}

#[derive(Debug)]
pub(crate) struct CaCache {
    pub(crate) hnf: Vec<Vec<i64>>,
    pub(crate) codewords: Vec<Vec<u8>>,
}

/// A lattice vector in basis coordinates together with its ambient
/// coordinates `u · M · 2^{p/2}`.
#[derive(Clone, Debug, PartialEq)]
pub struct LatticePoint {
    pub coords: Vec<i64>,
    pub ambient: Vec<f64>,
}

/// JSON form of a lattice: `{name, basis: [["p/q", ...], ...], scale2}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LatticeSpec {
    pub name: String,
    pub basis: Vec<Vec<String>>,
    #[serde(default)]
    pub scale2: i32,
}

impl Lattice {
    pub fn new(basis: RatMatrix, scale2: i32, name: Option<String>) -> Result<Self> {
        Self::with_structure(basis, scale2, name, Structure::Generic)
    }

    pub(crate) fn with_structure(
        basis: RatMatrix,
        scale2: i32,
        name: Option<String>,
        structure: Structure,
    ) -> Result<Self> {
        if basis.is_empty() {
            return Err(Error::InvalidArgument("basis must have at least one row".into()));
        }
        let n = basis[0].len();
        if let Some(row) = basis.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, got: row.len() });
        }
        let rank = rational::rank(&basis);
        if rank != basis.len() {
            return Err(Error::RankDeficient { rank, rows: basis.len() });
        }
        let gram = rational::gram(&basis);
        let factor = rational::pow2(scale2);
        let true_gram: RatMatrix =
            gram.iter().map(|row| row.iter().map(|g| g * &factor).collect()).collect();
        let den = rational::lcm_denominators(true_gram.iter().flatten());
        let norm_den = den
            .to_i64()
            .ok_or_else(|| Error::InvalidArgument("Gram denominator too large".into()))?;
        let den_r = Rational::from_integer(den);
        let gram_int = true_gram
            .iter()
            .map(|row| {
                row.iter()
                    .map(|g| {
                        rational::as_integer(&(g * &den_r))
                            .ok_or_else(|| Error::InvalidArgument("Gram entry too large".into()))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let s = 2f64.powf(scale2 as f64 / 2.0);
        let ambient_basis = basis
            .iter()
            .map(|row| row.iter().map(|x| rational::to_f64(x) * s).collect())
            .collect();
        let ca_cache = match &structure {
            Structure::ConstructionA(code) => Some(std::sync::Arc::new(CaCache {
                hnf: basis
                    .iter()
                    .map(|r| r.iter().map(|x| rational::as_integer(x).unwrap_or(0)).collect())
                    .collect(),
                codewords: code.codewords(),
            })),
            _ => None,
        };
        Ok(Lattice {
            basis,
            scale2,
            name,
            structure,
            dual_equivalent: false,
            gram_int,
            norm_den,
            ambient_basis,
            ca_cache,
        })
    }

    pub fn from_integer_rows(rows: &[Vec<i64>], scale2: i32, name: &str) -> Result<Self> {
        let basis = rows.iter().map(|r| r.iter().map(|&x| rational::int(x)).collect()).collect();
        Self::new(basis, scale2, Some(name.to_string()))
    }

    pub fn from_spec(spec: &LatticeSpec) -> Result<Self> {
        let basis = spec
            .basis
            .iter()
            .map(|row| row.iter().map(|s| rational::parse_rational(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::new(basis, spec.scale2, Some(spec.name.clone()))
    }

    pub fn to_spec(&self) -> LatticeSpec {
        LatticeSpec {
            name: self.display_name(),
            basis: self
                .basis
                .iter()
                .map(|row| row.iter().map(rational::format_rational).collect())
                .collect(),
            scale2: self.scale2,
        }
    }

    pub fn basis(&self) -> &RatMatrix {
        &self.basis
    }

    pub fn scale2(&self) -> i32 {
        self.scale2
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn display_name(&self) -> String {
        self.name.clone().unwrap_or_else(|| format!("lattice{}", self.dim()))
    }

    pub fn structure(&self) -> &Structure {
        &self.structure
    }

    /// Ambient dimension `n`.
    pub fn dim(&self) -> usize {
        self.basis[0].len()
    }

    /// Number of basis vectors `m`.
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn is_full_rank(&self) -> bool {
        self.rank() == self.dim()
    }

    /// Whether the lattice is known to be similar to its dual (so its secrecy
    /// function has a multiplicative symmetry point).
    pub fn is_dual_equivalent(&self) -> bool {
        self.dual_equivalent
    }

    pub fn mark_dual_equivalent(mut self) -> Self {
        self.dual_equivalent = true;
        self
    }

    pub fn renamed(mut self, name: &str) -> Self {
        self.name = Some(name.to_string());
        self
    }

    /// True Gram matrix `M Mᵀ 2^p` in exact arithmetic.
    pub fn gram(&self) -> RatMatrix {
        let den = Rational::from_integer(BigInt::from(self.norm_den));
        self.gram_int
            .iter()
            .map(|row| row.iter().map(|&g| rational::int(g) / &den).collect())
            .collect()
    }

    /// Integer Gram matrix and its common denominator: `gram = gram_int / den`.
    pub fn integer_gram(&self) -> (&[Vec<i64>], i64) {
        (&self.gram_int, self.norm_den)
    }

    pub fn norm_denominator(&self) -> i64 {
        self.norm_den
    }

    pub fn is_integral(&self) -> bool {
        self.norm_den == 1
    }

    /// Numerator of `‖uM‖²` over [`Lattice::norm_denominator`].
    pub fn norm_numerator(&self, coords: &[i64]) -> i64 {
        let mut acc: i128 = 0;
        for (i, &ui) in coords.iter().enumerate() {
            if ui == 0 {
                continue;
            }
            let row = &self.gram_int[i];
            let dot: i128 = coords.iter().zip(row).map(|(&uj, &g)| uj as i128 * g as i128).sum();
            acc += ui as i128 * dot;
        }
        acc as i64
    }

    pub fn norm_exact(&self, coords: &[i64]) -> Rational {
        rational::rat(self.norm_numerator(coords), self.norm_den)
    }

    /// `det(M Mᵀ) · 2^{mp}`.
    pub fn volume_squared(&self) -> Rational {
        rational::det(&rational::gram(&self.basis)) * rational::pow2(self.rank() as i32 * self.scale2)
    }

    /// Fundamental volume `det(M Mᵀ)^{1/2} · 2^{mp/2}`.
    pub fn volume(&self) -> f64 {
        let v2 = self.volume_squared();
        (rational::ln_abs(&v2) / 2.0).exp()
    }

    /// The volume as an exact rational, when it is one.
    pub fn volume_exact(&self) -> Option<Rational> {
        rational::sqrt_exact(&self.volume_squared())
    }

    /// Dual lattice with basis `(M⁻¹)ᵀ` and scale `−p`.
    pub fn dual(&self) -> Result<Lattice> {
        if !self.is_full_rank() {
            return Err(Error::UnsupportedRank { rows: self.rank(), cols: self.dim() });
        }
        let inv = rational::inverse(&self.basis).expect("full-rank basis is invertible");
        let name = self.name.as_ref().map(|n| format!("{n}*"));
        let mut dual = Lattice::new(rational::transpose(&inv), -self.scale2, name)?;
        dual.dual_equivalent = self.dual_equivalent;
        Ok(dual)
    }

    /// `2^{k/2} · Λ`, keeping the basis and decoder structure.
    pub fn scaled(&self, extra_scale2: i32) -> Lattice {
        let mut out = Lattice::with_structure(
            self.basis.clone(),
            self.scale2 + extra_scale2,
            self.name.clone(),
            self.structure.clone(),
        )
        .expect("scaling preserves validity");
        out.dual_equivalent = self.dual_equivalent;
        out
    }

    /// Orthogonal direct sum `Λ ⊕ Λ'`. Both summands must share `scale2`.
    pub fn direct_sum(&self, other: &Lattice) -> Result<Lattice> {
        if self.scale2 != other.scale2 {
            return Err(Error::IncompatibleScale);
        }
        let (n1, n2) = (self.dim(), other.dim());
        let zero = Rational::from_integer(BigInt::from(0));
        let mut rows = Vec::new();
        for r in &self.basis {
            let mut row = r.clone();
            row.extend(std::iter::repeat_n(zero.clone(), n2));
            rows.push(row);
        }
        for r in &other.basis {
            let mut row = vec![zero.clone(); n1];
            row.extend(r.iter().cloned());
            rows.push(row);
        }
        let name = match (&self.name, &other.name) {
            (Some(a), Some(b)) if a == b => Some(format!("{a}^2")),
            (Some(a), Some(b)) => Some(format!("{a}+{b}")),
            _ => None,
        };
        Lattice::new(rows, self.scale2, name)
    }

    pub fn point(&self, coords: Vec<i64>) -> LatticePoint {
        let ambient = self.ambient_of(&coords);
        LatticePoint { coords, ambient }
    }

    pub fn ambient_of(&self, coords: &[i64]) -> Vec<f64> {
        let n = self.dim();
        let mut out = vec![0.0; n];
        for (&u, row) in coords.iter().zip(&self.ambient_basis) {
            if u != 0 {
                out.iter_mut().zip(row).for_each(|(o, b)| *o += u as f64 * b);
            }
        }
        out
    }

    pub fn ambient_basis(&self) -> &[Vec<f64>] {
        &self.ambient_basis
    }

    /// Exact coordinates of a rational ambient vector (given before the
    /// `2^{p/2}` factor), if it lies in the lattice.
    pub fn coords_of_unscaled(&self, v: &[Rational]) -> Option<Vec<i64>> {
        if !self.is_full_rank() || v.len() != self.dim() {
            return None;
        }
        let inv = rational::inverse(&self.basis)?;
        let row = vec![v.to_vec()];
        rational::mul(&row, &inv)[0].iter().map(rational::as_integer).collect()
    }

    /// Whether the lattice has the integer entries its Gram matrix suggests
    /// (integral) and every norm is even.
    pub fn is_even(&self) -> bool {
        self.is_integral() && self.gram_int.iter().enumerate().all(|(i, r)| r[i] % 2 == 0)
    }

    /// Unimodular: integral with volume 1.
    pub fn is_unimodular(&self) -> bool {
        self.is_integral() && self.volume_squared().is_one()
    }

    pub(crate) fn gram_f64(&self) -> Vec<Vec<f64>> {
        let d = self.norm_den as f64;
        self.gram_int.iter().map(|r| r.iter().map(|&g| g as f64 / d).collect()).collect()
    }

    /// Upper bound `½ (Σ ‖b*_i‖²)^{1/2}` on the covering radius, from the
    /// Gram–Schmidt lengths of the basis (nearest-plane argument).
    pub fn covering_radius_bound(&self) -> f64 {
        let g = self.gram_f64();
        let m = g.len();
        // Squared Gram–Schmidt lengths are the pivots of the LDLᵀ factorization.
        let mut l = vec![vec![0.0; m]; m];
        let mut d = vec![0.0; m];
        for i in 0..m {
            for j in 0..i {
                let s: f64 = (0..j).map(|k| l[i][k] * l[j][k] * d[k]).sum();
                l[i][j] = (g[i][j] - s) / d[j];
            }
            d[i] = g[i][i] - (0..i).map(|k| l[i][k] * l[i][k] * d[k]).sum::<f64>();
        }
        0.5 * d.iter().sum::<f64>().sqrt()
    }
}

impl LatticePoint {
    pub fn norm2(&self) -> f64 {
        self.ambient.iter().map(|x| x * x).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::rational::{int, rat};

    #[test]
    fn volumes_of_catalog_lattices() {
        assert_eq!(catalog::cubic(5).volume_exact(), Some(int(1)));
        assert_eq!(catalog::checkerboard(4).volume_exact(), Some(int(2)));
        assert_eq!(catalog::e8().volume_exact(), Some(int(1)));
        assert_eq!(catalog::e8_standard().volume_exact(), Some(int(1)));
    }

    #[test]
    fn dual_requires_square_basis() {
        let l = Lattice::from_integer_rows(&[vec![1, 0, 0]], 0, "line").unwrap();
        assert!(matches!(l.dual(), Err(Error::UnsupportedRank { rows: 1, cols: 3 })));
    }

    #[test]
    fn dual_volume_is_reciprocal() {
        let d4 = catalog::checkerboard(4);
        let dual = d4.dual().unwrap();
        assert_eq!(dual.volume_exact(), Some(rat(1, 2)));
        assert_eq!(dual.scale2(), 0);
    }

    #[test]
    fn double_dual_has_same_gram() {
        for l in [catalog::checkerboard(4), catalog::e8(), catalog::e8_standard(), catalog::chain_lattice(5)] {
            assert_eq!(l.dual().unwrap().dual().unwrap().gram(), l.gram());
        }
    }

    #[test]
    fn rank_deficient_basis_rejected() {
        let err = Lattice::from_integer_rows(&[vec![1, 2], vec![2, 4]], 0, "bad").unwrap_err();
        assert!(matches!(err, Error::RankDeficient { rank: 1, rows: 2 }));
    }

    #[test]
    fn sqrt2_scale_keeps_norms_rational() {
        let e8 = catalog::e8();
        assert_eq!(e8.scale2(), -1);
        assert!(e8.is_integral());
        assert!(e8.is_even());
        assert!(e8.is_unimodular());
        let z = catalog::cubic(2).scaled(1);
        assert_eq!(z.norm_exact(&[1, 1]), int(4));
    }

    #[test]
    fn spec_round_trip_preserves_gram() {
        let d4 = catalog::checkerboard(4).dual().unwrap();
        let back = Lattice::from_spec(&d4.to_spec()).unwrap();
        assert_eq!(back.gram(), d4.gram());
    }
}
