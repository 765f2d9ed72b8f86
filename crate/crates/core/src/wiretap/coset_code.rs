//! Wyner coset coding over a nested pair `Λe ⊂ Λb`.

use rand::Rng;

use crate::error::{Error, Result};
use crate::intmat::mat_vec_left;
use crate::lattice::{Lattice, LatticePoint, Quotient};

/// Default half-width `B` of the coordinate box for the random coarse point.
pub const DEFAULT_OFFSET_RANGE: i64 = 4;

/// Largest quotient whose leaders are tabulated.
const MAX_LEADERS: u64 = 1 << 20;

#[derive(Clone, Debug)]
pub struct CosetCode {
    fine: Lattice,
    coarse: Lattice,
    quotient: Quotient,
    leaders: Vec<LatticePoint>,
    offset_range: i64,
}

impl CosetCode {
    /// Build the code and its minimum-energy coset leaders: each canonical
    /// representative is reduced by its closest coarse-lattice point.
    pub fn new(fine: Lattice, coarse: Lattice) -> Result<Self> {
        let quotient = Quotient::new(&fine, &coarse)?;
        if quotient.index() > MAX_LEADERS {
            return Err(Error::UnsupportedQuotient(format!(
                "{} cosets exceed the tabulation limit {MAX_LEADERS}",
                quotient.index()
            )));
        }
        let mut leaders = Vec::with_capacity(quotient.index() as usize);
        for label in 0..quotient.index() {
            let rep = quotient.representative(label)?;
            let x = fine.point(rep.clone());
            let c = coarse.closest_point(&x.ambient)?;
            let shift = mat_vec_left(&c.coords, quotient.transform());
            let coords: Vec<i64> = rep.iter().zip(&shift).map(|(a, b)| a - b).collect();
            leaders.push(fine.point(coords));
        }
        Ok(CosetCode { fine, coarse, quotient, leaders, offset_range: DEFAULT_OFFSET_RANGE })
    }

    pub fn with_offset_range(mut self, b: i64) -> Self {
        self.offset_range = b.max(0);
        self
    }

    /// Half-width `B` of the coordinate box for the random coarse point.
    pub fn offset_range(&self) -> i64 {
        self.offset_range
    }

    pub fn fine(&self) -> &Lattice {
        &self.fine
    }

    pub fn coarse(&self) -> &Lattice {
        &self.coarse
    }

    pub fn quotient(&self) -> &Quotient {
        &self.quotient
    }

    /// Number of secret bits `k` with `2^k = |Λb/Λe|`.
    pub fn k(&self) -> usize {
        self.quotient.bits() as usize
    }

    pub fn leaders(&self) -> &[LatticePoint] {
        &self.leaders
    }

    pub fn leader(&self, label: u64) -> &LatticePoint {
        &self.leaders[label as usize]
    }

    pub fn label_of(&self, x: &LatticePoint) -> u64 {
        self.quotient.label(&x.coords)
    }

    pub fn bits_of(&self, x: &LatticePoint) -> Vec<u8> {
        self.quotient.label_bits(self.label_of(x))
    }

    /// `leader(s) + r` with `r` the coarse point of coordinates `offset`.
    pub fn encode_with_offset(&self, bits: &[u8], offset: &[i64]) -> Result<LatticePoint> {
        let label = self.quotient.label_from_bits(bits)?;
        if offset.len() != self.coarse.rank() {
            return Err(Error::DimensionMismatch { expected: self.coarse.rank(), got: offset.len() });
        }
        let shift = mat_vec_left(offset, self.quotient.transform());
        let coords = self.leader(label).coords.iter().zip(&shift).map(|(a, b)| a + b).collect();
        Ok(self.fine.point(coords))
    }

    /// Encode with a coarse point drawn uniformly from coordinates in `[−B, B]ⁿ`.
    pub fn encode<R: Rng + ?Sized>(&self, bits: &[u8], rng: &mut R) -> Result<LatticePoint> {
        let b = self.offset_range;
        let offset: Vec<i64> = (0..self.coarse.rank()).map(|_| rng.random_range(-b..=b)).collect();
        self.encode_with_offset(bits, &offset)
    }

    /// Closest point in `Λb`, then its coset label.
    pub fn decode(&self, y: &[f64]) -> Result<Vec<u8>> {
        let x = self.fine.closest_point(y)?;
        Ok(self.bits_of(&x))
    }
}

pub fn build_coset_code(fine: &Lattice, coarse: &Lattice) -> Result<CosetCode> {
    CosetCode::new(fine.clone(), coarse.clone())
}
