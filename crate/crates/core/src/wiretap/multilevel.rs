//! Multilevel encoding over the nested 8-dimensional Construction-A chain.
//!
//! Bits are grouped in blocks of eight; block `m` is mapped to the codeword
//! `c_m = s_m G` over F₂, lifted to `{0,1}⁸`, and the transmitted integer
//! vector is `Σ 2^m c_m`. The `E₈` variant prepends four zero bits so that
//! the first codeword lies in the Reed–Müller code, and reads the result in
//! the frame scaled by `1/√2`.

use serde::Serialize;

use crate::catalog::{generator_matrix, chain_code};
use crate::error::{Error, Result};
use crate::lattice::{construction_a_scaled, Lattice, Quotient};
use crate::rational::int;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Chain {
    Z8,
    E8,
}

impl Chain {
    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "z8" => Ok(Chain::Z8),
            "e8" => Ok(Chain::E8),
            _ => Err(Error::UnknownName(s.to_string())),
        }
    }

    /// Known zero bits in front of the data.
    pub fn prefix(self) -> usize {
        match self {
            Chain::Z8 => 0,
            Chain::E8 => 4,
        }
    }

    /// The integer vector is scaled by `2^{frame_scale2/2}`.
    pub fn frame_scale2(self) -> i32 {
        match self {
            Chain::Z8 => 0,
            Chain::E8 => -1,
        }
    }

    /// Lattice at depth `i` of the periodic chain in the integer frame:
    /// `2^t (2Z⁸ + C_{8−j})` with `i + prefix = 8t + j`, where `C_k` is spanned
    /// by the last `k` rows of `G`. Level `i` contains level `i + 1` with
    /// index 2, and data bit `i` selects the coset.
    pub fn level_lattice(self, i: usize) -> Lattice {
        let d = i + self.prefix();
        let (t, j) = (d / 8, d % 8);
        construction_a_scaled(&chain_code(8 - j), 2 * t as i32)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct MultilevelConfig {
    /// Subtract the midpoint of the encoder's image box.
    pub centering: bool,
    /// Replace the output by its minimum-norm representative modulo the
    /// shaping lattice `2^q Z⁸`.
    pub voronoi_reduce: bool,
}

/// Encoder output: an integer vector in a frame scaled by `2^{frame_scale2/2}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MultilevelPoint {
    pub point: Vec<i64>,
    pub frame_scale2: i32,
}

impl MultilevelPoint {
    pub fn ambient(&self) -> Vec<f64> {
        let s = 2f64.powf(self.frame_scale2 as f64 / 2.0);
        self.point.iter().map(|&x| x as f64 * s).collect()
    }
}

/// A multilevel code carrying `bits` data bits per 8-dimensional symbol.
#[derive(Clone, Debug)]
pub struct MultilevelCode {
    chain: Chain,
    bits: usize,
    config: MultilevelConfig,
    generator: Vec<Vec<u8>>,
    /// `2Z⁸ + ⟨g_{j+1}, …, g₇⟩` for `j = 0..8`, used by the decoder.
    sublattices: Vec<Lattice>,
}

impl MultilevelCode {
    pub fn new(chain: Chain, bits: usize, config: MultilevelConfig) -> Result<Self> {
        if bits == 0 {
            return Err(Error::InvalidArgument("at least one data bit is required".into()));
        }
        let sublattices = (0..8).map(|j| construction_a_scaled(&chain_code(7 - j), 0)).collect();
        Ok(MultilevelCode { chain, bits, config, generator: generator_matrix(), sublattices })
    }

    pub fn chain(&self) -> Chain {
        self.chain
    }

    pub fn bits(&self) -> usize {
        self.bits
    }

    pub fn config(&self) -> MultilevelConfig {
        self.config
    }

    /// Number of 8-bit blocks after padding.
    pub fn blocks(&self) -> usize {
        (self.bits + self.chain.prefix()).div_ceil(8)
    }

    /// Shaping lattice `2^q Z⁸` in the integer frame, `q` the block count.
    pub fn shaping_lattice(&self) -> Lattice {
        crate::catalog::cubic(8).scaled(2 * self.blocks() as i32)
    }

    /// Midpoint of the box `[0, 2^q − 1]⁸` in ambient coordinates.
    pub fn center(&self) -> Vec<f64> {
        let mid = ((1u64 << self.blocks()) - 1) as f64 / 2.0;
        let s = 2f64.powf(self.chain.frame_scale2() as f64 / 2.0);
        vec![mid * s; 8]
    }

    fn padded(&self, s: &[u8]) -> Vec<u8> {
        let mut full = vec![0u8; self.chain.prefix()];
        full.extend_from_slice(s);
        full.resize(8 * self.blocks(), 0);
        full
    }

    fn codeword(&self, block: &[u8]) -> Vec<u8> {
        let mut c = vec![0u8; 8];
        for (bit, row) in block.iter().zip(&self.generator) {
            if *bit & 1 == 1 {
                c.iter_mut().zip(row).for_each(|(ci, g)| *ci ^= g);
            }
        }
        c
    }

    /// `Σ 2^m c_m` (before centering).
    pub fn encode(&self, s: &[u8]) -> Result<MultilevelPoint> {
        if s.len() != self.bits {
            return Err(Error::BitLength { expected: self.bits, got: s.len() });
        }
        if s.iter().any(|&b| b > 1) {
            return Err(Error::InvalidArgument("bits must be 0 or 1".into()));
        }
        let full = self.padded(s);
        let mut x = vec![0i64; 8];
        for (m, block) in full.chunks(8).enumerate() {
            let c = self.codeword(block);
            x.iter_mut().zip(&c).for_each(|(xi, &ci)| *xi += (ci as i64) << m);
        }
        if self.config.voronoi_reduce {
            let shaping = self.shaping_lattice();
            let near = shaping.closest_point(&x.iter().map(|&v| v as f64).collect::<Vec<_>>())?;
            let period = 1i64 << self.blocks();
            x.iter_mut().zip(&near.coords).for_each(|(xi, c)| *xi -= c * period);
        }
        Ok(MultilevelPoint { point: x, frame_scale2: self.chain.frame_scale2() })
    }

    /// Transmitted real vector: ambient point, minus the center if enabled.
    pub fn transmit(&self, s: &[u8]) -> Result<Vec<f64>> {
        let p = self.encode(s)?.ambient();
        Ok(if self.config.centering {
            p.iter().zip(self.center()).map(|(a, c)| a - c).collect()
        } else {
            p
        })
    }

    /// Hard-decision multistage decoding. Bit `j` of a block is decided by
    /// comparing the distance from the residual to the two cosets
    /// `p + b·g_j + (2Z⁸ + ⟨g_{j+1}, …, g₇⟩)`, with `p` the integer sum of the
    /// rows already decided; after a block its codeword is removed and the
    /// residual halved.
    pub fn decode(&self, y: &[f64]) -> Result<Vec<u8>> {
        if y.len() != 8 {
            return Err(Error::DimensionMismatch { expected: 8, got: y.len() });
        }
        let center = self.center();
        let inv = 2f64.powf(-self.chain.frame_scale2() as f64 / 2.0);
        let mut w: Vec<f64> = y
            .iter()
            .zip(&center)
            .map(|(v, c)| (if self.config.centering { v + c } else { *v }) * inv)
            .collect();
        let total = self.chain.prefix() + self.bits;
        let mut out = Vec::with_capacity(self.bits);
        for m in 0..self.blocks() {
            let mut partial = vec![0i64; 8];
            let mut block = vec![0u8; 8];
            for j in 0..8 {
                let pos = 8 * m + j;
                if pos < self.chain.prefix() || pos >= total {
                    continue;
                }
                let dist = |b: i64| -> Result<f64> {
                    let t: Vec<f64> = w
                        .iter()
                        .zip(&partial)
                        .zip(&self.generator[j])
                        .map(|((wi, pi), &g)| wi - (*pi + b * g as i64) as f64)
                        .collect();
                    let c = self.sublattices[j].closest_point(&t)?;
                    Ok(c.ambient.iter().zip(&t).map(|(a, b)| (a - b) * (a - b)).sum())
                };
                let bit = if dist(1)? < dist(0)? { 1u8 } else { 0u8 };
                if bit == 1 {
                    partial.iter_mut().zip(&self.generator[j]).for_each(|(p, &g)| *p += g as i64);
                }
                block[j] = bit;
                out.push(bit);
            }
            let c = self.codeword(&block);
            w.iter_mut().zip(&c).for_each(|(wi, &ci)| *wi = (*wi - ci as f64) / 2.0);
        }
        Ok(out)
    }

    /// For each data bit `i`, the label of `x` in `Λ₀ / Λ_{i+1}` of the chain;
    /// equal prefixes give equal labels. Levels whose quotient exceeds 63 bits
    /// are omitted.
    pub fn coset_labels_per_level(&self, x: &MultilevelPoint) -> Result<Vec<u64>> {
        let top = self.chain.level_lattice(0);
        let v: Vec<_> = x.point.iter().map(|&a| int(a)).collect();
        let coords = top.coords_of_unscaled(&v).ok_or(Error::NotSublattice)?;
        let levels = self.bits.min(63);
        (1..=levels)
            .map(|i| Ok(Quotient::new(&top, &self.chain.level_lattice(i))?.label(&coords)))
            .collect()
    }
}

pub fn multilevel_encode_z8(s: &[u8]) -> Result<MultilevelPoint> {
    MultilevelCode::new(Chain::Z8, s.len(), MultilevelConfig::default())?.encode(s)
}

pub fn multilevel_encode_e8(s: &[u8]) -> Result<MultilevelPoint> {
    MultilevelCode::new(Chain::E8, s.len(), MultilevelConfig::default())?.encode(s)
}

pub fn multilevel_decode(chain: Chain, y: &[f64], bits: usize) -> Result<Vec<u8>> {
    MultilevelCode::new(chain, bits, MultilevelConfig::default())?.decode(y)
}
