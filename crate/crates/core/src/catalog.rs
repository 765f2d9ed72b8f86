//! Named lattices and the nested chain of 8-dimensional Construction-A lattices.

use std::sync::OnceLock;

use serde::Deserialize;

use crate::code::{parse_bits, BinaryCode};
use crate::error::{Error, Result};
use crate::lattice::{construction_a, construction_a_scaled, Lattice, Structure};
use crate::rational::{self, rat};

const CHAIN_JSON: &str = include_str!("../assets/nested_chain.json");

#[derive(Debug, Deserialize)]
pub struct ChainEntry {
    pub rows_from: usize,
    pub code: String,
    pub lattice: String,
}

#[derive(Debug, Deserialize)]
pub struct ChainTable {
    pub version: u32,
    pub generator_rows: Vec<String>,
    pub chain: Vec<ChainEntry>,
}

/// The shipped generator matrix `G` and code chain.
pub fn chain_table() -> &'static ChainTable {
    static TABLE: OnceLock<ChainTable> = OnceLock::new();
    TABLE.get_or_init(|| serde_json::from_str(CHAIN_JSON).expect("bundled table is valid"))
}

/// Rows `g₀..g₇` of the 8×8 generator matrix.
pub fn generator_matrix() -> Vec<Vec<u8>> {
    chain_table().generator_rows.iter().map(|r| parse_bits(r).expect("bundled rows are bits")).collect()
}

/// Code spanned by rows `g_j..g₇` (`8 − j` rows).
pub fn chain_code_from(j: usize) -> BinaryCode {
    assert!(j <= 8, "row index out of range");
    BinaryCode::new(8, generator_matrix()[j..].to_vec()).expect("rows of G are independent")
}

/// Code spanned by the last `k` rows of `G`.
pub fn chain_code(k: usize) -> BinaryCode {
    chain_code_from(8 - k)
}

/// `2Z⁸ + C` for the code of the last `k` rows of `G` (unscaled).
pub fn chain_lattice(k: usize) -> Lattice {
    let entry = &chain_table().chain[8 - k];
    let l = construction_a(&chain_code(k)).renamed(&entry.lattice);
    if matches!(k, 8 | 6 | 4 | 2 | 0) {
        l.mark_dual_equivalent()
    } else {
        l
    }
}

pub fn cubic(n: usize) -> Lattice {
    Lattice::with_structure(rational::identity(n), 0, Some(format!("Z{n}")), Structure::Cubic)
        .expect("identity basis")
        .mark_dual_equivalent()
}

/// Checkerboard lattice `Dₙ` (n ≥ 2): integer vectors with even coordinate sum.
pub fn checkerboard(n: usize) -> Lattice {
    assert!(n >= 2, "Dn needs n >= 2");
    let mut rows = vec![vec![0i64; n]; n];
    rows[0][0] = -1;
    rows[0][1] = -1;
    for i in 1..n {
        rows[i][i - 1] = 1;
        rows[i][i] = -1;
    }
    let l = Lattice::from_integer_rows(&rows, 0, &format!("D{n}")).expect("Dn basis");
    if n == 2 || n == 4 {
        l.mark_dual_equivalent()
    } else {
        l
    }
}

pub fn d4() -> Lattice {
    checkerboard(4)
}

pub fn d8() -> Lattice {
    checkerboard(8)
}

/// Gosset lattice `E₈` in the half-integer coordinates of Conway and Sloane.
pub fn e8_standard() -> Lattice {
    let mut basis = Vec::new();
    let mut first = vec![rational::int(0); 8];
    first[0] = rational::int(2);
    basis.push(first);
    for i in 0..6 {
        let mut row = vec![rational::int(0); 8];
        row[i] = rational::int(-1);
        row[i + 1] = rational::int(1);
        basis.push(row);
    }
    basis.push(vec![rat(1, 2); 8]);
    Lattice::new(basis, 0, Some("E8std".into())).expect("E8 basis").mark_dual_equivalent()
}

/// `E₈ = (1/√2)(2Z⁸ + RM(8,4,4))`, the frame used by the coset codes.
pub fn e8() -> Lattice {
    construction_a_scaled(&chain_code(4), -1).renamed("E8").mark_dual_equivalent()
}

/// `L₈ = 2Z⁸ + (8,5,2)` with the code spanned by `g₃..g₇`.
pub fn l8() -> Lattice {
    chain_lattice(5)
}

/// Independent realizations of the chain lattices from classical
/// constructions (duals, direct sums, the Gosset basis), indexed by `k`.
pub fn chain_lattice_classical(k: usize) -> Result<Lattice> {
    let d4sq = || d4().direct_sum(&d4());
    let l = match k {
        8 => cubic(8),
        7 => d8(),
        6 => d4sq()?,
        5 => l8(),
        4 => e8_standard().scaled(1),
        3 => l8().dual()?.scaled(2),
        2 => d4sq()?.dual()?.scaled(2),
        1 => d8().dual()?.scaled(2),
        0 => cubic(8).scaled(2),
        _ => return Err(Error::InvalidArgument(format!("chain index {k} out of range 0..=8"))),
    };
    Ok(l.renamed(&chain_table().chain[8 - k].lattice))
}

/// The shifted chain `(1/√2)E₈ ⊃ L₈* ⊃ (D₄²)* ⊃ D₈* ⊃ Z⁸ ⊃ D₈ ⊃ D₄² ⊃ L₈ ⊃ √2E₈`,
/// each step of index 2. The first four members are `½(2Z⁸ + C)`.
pub fn e8_chain() -> Vec<Lattice> {
    const NAMES: [&str; 4] = ["E8/sqrt2", "L8*", "(D4^2)*", "D8*"];
    let mut out = Vec::with_capacity(9);
    for (i, name) in NAMES.iter().enumerate() {
        out.push(construction_a_scaled(&chain_code(4 - i), -2).renamed(name));
    }
    for k in (4..=8).rev() {
        out.push(chain_lattice(k));
    }
    out
}

/// The nested chain `Z⁸ ⊃ D₈ ⊃ … ⊃ 2Z⁸`.
pub fn z8_chain() -> Vec<Lattice> {
    (0..=8).rev().map(chain_lattice).collect()
}

/// Every name accepted by [`lookup`].
pub fn names() -> Vec<String> {
    let mut v: Vec<String> = (1..=8).map(|n| format!("Z{n}")).collect();
    v.extend((2..=8).map(|n| format!("D{n}")));
    v.extend(["E8", "E8std", "L8", "D4^2", "sqrt2E8", "2L8*", "2(D4*)^2", "2D8*", "2Z8", "2Z2"].map(String::from));
    v
}

/// Look up a lattice by name. A trailing `*` takes the dual; a leading `2`
/// on any other name doubles the lattice.
pub fn lookup(name: &str) -> Result<Lattice> {
    if let Some(base) = name.strip_suffix('*') {
        if !name.starts_with('2') {
            return lookup(base)?.dual();
        }
    }
    let parse_n = |s: &str| s.parse::<usize>().ok().filter(|&n| (1..=64).contains(&n));
    if let Some(n) = name.strip_prefix('Z').and_then(parse_n) {
        return Ok(cubic(n));
    }
    if let Some(n) = name.strip_prefix('D').and_then(parse_n) {
        if n >= 2 {
            return Ok(checkerboard(n));
        }
    }
    match name {
        "E8" => Ok(e8()),
        "E8std" => Ok(e8_standard()),
        "L8" => Ok(l8()),
        "D4^2" => Ok(chain_lattice(6)),
        "sqrt2E8" => Ok(chain_lattice(4)),
        "2L8*" => Ok(chain_lattice(3)),
        "2(D4*)^2" => Ok(chain_lattice(2)),
        "2D8*" => Ok(chain_lattice(1)),
        "2Z8" => Ok(chain_lattice(0)),
        _ => match name.strip_prefix('2') {
            // `2X` is the lattice X scaled by two.
            Some(base) if !base.is_empty() => lookup(base)
                .map(|l| l.scaled(2).renamed(name))
                .map_err(|_| Error::UnknownName(name.to_string())),
            _ => Err(Error::UnknownName(name.to_string())),
        },
    }
}
