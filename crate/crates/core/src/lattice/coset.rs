//! Labels of the finite quotient `Λb / Λe`.

use super::{Lattice, LatticePoint};
use crate::error::{Error, Result};
use crate::intmat::{mat_vec_left, smith_normal_form, IntMatrix};
use crate::rational::{self, Rational};

/// The quotient of a fine lattice by a sublattice, described through the
/// Smith form of the coordinate-change matrix `T` with `Me = T · Mb`.
#[derive(Clone, Debug)]
pub struct Quotient {
    transform: IntMatrix,
    /// Invariant factors `d_i > 1`, with their column index in `Q`.
    moduli: Vec<(usize, i64)>,
    q: IntMatrix,
    q_inv: IntMatrix,
    index: u64,
}

impl Quotient {
    pub fn new(fine: &Lattice, coarse: &Lattice) -> Result<Self> {
        if !fine.is_full_rank() {
            return Err(Error::UnsupportedRank { rows: fine.rank(), cols: fine.dim() });
        }
        if !coarse.is_full_rank() || coarse.dim() != fine.dim() {
            return Err(Error::DimensionMismatch { expected: fine.dim(), got: coarse.dim() });
        }
        let diff = coarse.scale2() - fine.scale2();
        if diff % 2 != 0 {
            return Err(Error::IncompatibleScale);
        }
        let factor = rational::pow2(diff / 2);
        let inv = rational::inverse(fine.basis()).expect("full rank");
        let scaled: Vec<Vec<Rational>> =
            coarse.basis().iter().map(|r| r.iter().map(|x| x * &factor).collect()).collect();
        let t = rational::mul(&scaled, &inv);
        let transform: IntMatrix = t
            .iter()
            .map(|row| row.iter().map(rational::as_integer).collect::<Option<Vec<_>>>())
            .collect::<Option<Vec<_>>>()
            .ok_or(Error::NotSublattice)?;
        let smith = smith_normal_form(&transform);
        let mut index: u64 = 1;
        for &d in &smith.diag {
            index = index
                .checked_mul(d.unsigned_abs())
                .ok_or_else(|| Error::UnsupportedQuotient("index overflows 64 bits".into()))?;
        }
        if !index.is_power_of_two() {
            return Err(Error::UnsupportedQuotient(format!("index {index} is not a power of two")));
        }
        let moduli = smith.diag.iter().enumerate().filter(|(_, &d)| d > 1).map(|(i, &d)| (i, d)).collect();
        Ok(Quotient { transform, moduli, q: smith.q, q_inv: smith.q_inv, index })
    }

    /// Number of cosets `2^k`.
    pub fn index(&self) -> u64 {
        self.index
    }

    /// `k = log₂ |Λb/Λe|`.
    pub fn bits(&self) -> u32 {
        self.index.trailing_zeros()
    }

    /// Rows of the coarse basis expressed in fine coordinates.
    pub fn transform(&self) -> &IntMatrix {
        &self.transform
    }

    /// Invariant factors larger than one, in order.
    pub fn moduli(&self) -> Vec<i64> {
        self.moduli.iter().map(|&(_, d)| d).collect()
    }

    /// Label of the coset containing the fine-lattice point with coordinates `u`.
    pub fn label(&self, u: &[i64]) -> u64 {
        let v = mat_vec_left(u, &self.q);
        let mut label: u64 = 0;
        for &(i, d) in &self.moduli {
            label = label * d as u64 + v[i].rem_euclid(d) as u64;
        }
        label
    }

    /// Fine coordinates of a canonical representative of coset `label`.
    pub fn representative(&self, label: u64) -> Result<Vec<i64>> {
        if label >= self.index {
            return Err(Error::InvalidArgument(format!("label {label} out of range 0..{}", self.index)));
        }
        let n = self.q.len();
        let mut digits = vec![0i64; n];
        let mut rest = label;
        for &(i, d) in self.moduli.iter().rev() {
            digits[i] = (rest % d as u64) as i64;
            rest /= d as u64;
        }
        Ok(mat_vec_left(&digits, &self.q_inv))
    }

    /// Label as `k` bits, most significant first.
    pub fn label_bits(&self, label: u64) -> Vec<u8> {
        let k = self.bits();
        (0..k).rev().map(|i| ((label >> i) & 1) as u8).collect()
    }

    pub fn label_from_bits(&self, bits: &[u8]) -> Result<u64> {
        let k = self.bits() as usize;
        if bits.len() != k {
            return Err(Error::BitLength { expected: k, got: bits.len() });
        }
        Ok(bits.iter().fold(0u64, |acc, &b| (acc << 1) | (b & 1) as u64))
    }
}

/// Coset label of a point of `fine` in the quotient `fine / coarse`.
pub fn coset_label(fine: &Lattice, coarse: &Lattice, x: &LatticePoint) -> Result<u64> {
    let q = Quotient::new(fine, coarse)?;
    if x.coords.len() != fine.rank() {
        return Err(Error::DimensionMismatch { expected: fine.rank(), got: x.coords.len() });
    }
    Ok(q.label(&x.coords))
}
