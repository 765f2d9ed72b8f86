//! Binary linear codes over F₂.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An `(n, κ, d)` binary linear code given by a full-rank generator matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryCode {
    length: usize,
    generator: Vec<Vec<u8>>,
    min_distance: Option<usize>,
}

/// JSON form: `{n, kappa, generator_rows: ["0101...", ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BinaryCodeSpec {
    pub n: usize,
    pub kappa: usize,
    pub generator_rows: Vec<String>,
}

impl BinaryCode {
    pub fn new(length: usize, generator: Vec<Vec<u8>>) -> Result<Self> {
        if length == 0 {
            return Err(Error::InvalidArgument("code length must be positive".into()));
        }
        for row in &generator {
            if row.len() != length {
                return Err(Error::DimensionMismatch { expected: length, got: row.len() });
            }
            if row.iter().any(|&b| b > 1) {
                return Err(Error::InvalidArgument("generator entries must be 0 or 1".into()));
            }
        }
        let rank = f2_rank(&generator);
        if rank != generator.len() {
            return Err(Error::RankDeficient { rank, rows: generator.len() });
        }
        let mut code = BinaryCode { length, generator, min_distance: None };
        if code.dimension() <= 20 {
            code.min_distance = code.compute_min_distance();
        }
        Ok(code)
    }

    pub fn from_bitstrings(length: usize, rows: &[&str]) -> Result<Self> {
        let generator = rows
            .iter()
            .map(|r| parse_bits(r))
            .collect::<Result<Vec<_>>>()?;
        Self::new(length, generator)
    }

    /// The universe code `(n, n, 1)`.
    pub fn universe(n: usize) -> Self {
        let g = (0..n).map(|i| (0..n).map(|j| u8::from(i == j)).collect()).collect();
        Self::new(n, g).expect("identity has full rank")
    }

    /// The zero code `(n, 0, ∞)`.
    pub fn zero(n: usize) -> Self {
        Self::new(n, Vec::new()).expect("empty generator")
    }

    pub fn repetition(n: usize) -> Self {
        Self::new(n, vec![vec![1; n]]).expect("single nonzero row")
    }

    /// Even-weight code `(n, n-1, 2)`.
    pub fn parity_check(n: usize) -> Self {
        let g = (1..n)
            .map(|i| {
                let mut row = vec![0u8; n];
                row[0] = 1;
                row[i] = 1;
                row
            })
            .collect();
        Self::new(n, g).expect("parity rows are independent")
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn dimension(&self) -> usize {
        self.generator.len()
    }

    pub fn generator(&self) -> &[Vec<u8>] {
        &self.generator
    }

    /// Minimum Hamming weight of a nonzero codeword; `None` for the zero code
    /// or when the code is too large to search exhaustively.
    pub fn min_distance(&self) -> Option<usize> {
        self.min_distance
    }

    fn compute_min_distance(&self) -> Option<usize> {
        let k = self.dimension();
        (1u64..(1u64 << k)).map(|m| self.encode_index(m).iter().filter(|&&b| b == 1).count()).min()
    }

    /// `msg · G` over F₂.
    pub fn encode(&self, msg: &[u8]) -> Result<Vec<u8>> {
        if msg.len() != self.dimension() {
            return Err(Error::BitLength { expected: self.dimension(), got: msg.len() });
        }
        let mut c = vec![0u8; self.length];
        for (bit, row) in msg.iter().zip(&self.generator) {
            if bit & 1 == 1 {
                c.iter_mut().zip(row).for_each(|(a, b)| *a ^= b);
            }
        }
        Ok(c)
    }

    /// Codeword for the message whose bit `i` is bit `i` of `index`.
    pub fn encode_index(&self, index: u64) -> Vec<u8> {
        let mut c = vec![0u8; self.length];
        for (i, row) in self.generator.iter().enumerate() {
            if (index >> i) & 1 == 1 {
                c.iter_mut().zip(row).for_each(|(a, b)| *a ^= b);
            }
        }
        c
    }

    /// All `2^κ` codewords.
    pub fn codewords(&self) -> Vec<Vec<u8>> {
        (0..(1u64 << self.dimension())).map(|m| self.encode_index(m)).collect()
    }

    pub fn contains(&self, word: &[u8]) -> bool {
        let mut rows = self.generator.clone();
        rows.push(word.to_vec());
        f2_rank(&rows) == self.dimension()
    }

    /// Dual code `C^⊥`, via a systematic-form kernel computation.
    pub fn dual(&self) -> BinaryCode {
        let n = self.length;
        let k = self.dimension();
        // Reduced row echelon form and pivot columns.
        let mut m = self.generator.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..n {
            let Some(p) = (r..k).find(|&i| m[i][c] == 1) else { continue };
            m.swap(r, p);
            for i in 0..k {
                if i != r && m[i][c] == 1 {
                    let pr = m[r].clone();
                    m[i].iter_mut().zip(&pr).for_each(|(a, b)| *a ^= b);
                }
            }
            pivots.push(c);
            r += 1;
        }
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        let rows = free
            .iter()
            .map(|&f| {
                let mut v = vec![0u8; n];
                v[f] = 1;
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = m[i][f];
                }
                v
            })
            .collect();
        BinaryCode::new(n, rows).expect("kernel basis is independent")
    }

    pub fn to_spec(&self) -> BinaryCodeSpec {
        BinaryCodeSpec {
            n: self.length,
            kappa: self.dimension(),
            generator_rows: self
                .generator
                .iter()
                .map(|r| r.iter().map(|b| if *b == 1 { '1' } else { '0' }).collect())
                .collect(),
        }
    }

    pub fn from_spec(spec: &BinaryCodeSpec) -> Result<Self> {
        let rows: Vec<&str> = spec.generator_rows.iter().map(String::as_str).collect();
        let code = Self::from_bitstrings(spec.n, &rows)?;
        if code.dimension() != spec.kappa {
            return Err(Error::InvalidArgument(format!(
                "kappa {} does not match {} generator rows",
                spec.kappa,
                code.dimension()
            )));
        }
        Ok(code)
    }
}

pub fn parse_bits(s: &str) -> Result<Vec<u8>> {
    s.chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| match c {
            '0' => Ok(0),
            '1' => Ok(1),
            _ => Err(Error::Parse(format!("not a bitstring: {s:?}"))),
        })
        .collect()
}

pub fn f2_rank(rows: &[Vec<u8>]) -> usize {
    let mut m: Vec<Vec<u8>> = rows.to_vec();
    if m.is_empty() {
        return 0;
    }
    let cols = m[0].len();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] == 1) else { continue };
        m.swap(r, p);
        for i in r + 1..m.len() {
            if m[i][c] == 1 {
                let pr = m[r].clone();
                m[i].iter_mut().zip(&pr).for_each(|(a, b)| *a ^= b);
            }
        }
        r += 1;
    }
    r
}
