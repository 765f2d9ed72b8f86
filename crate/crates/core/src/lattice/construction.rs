use super::{Lattice, Structure};
use crate::code::BinaryCode;
use crate::intmat::hermite_normal_form;
use crate::rational;

/// Construction A: the lattice `2Zⁿ + C`, with `C` lifted to `{0,1}ⁿ`.
pub fn construction_a(code: &BinaryCode) -> Lattice {
    construction_a_scaled(code, 0)
}

/// `2^{p/2} · (2Zⁿ + C)`.
pub fn construction_a_scaled(code: &BinaryCode, scale2: i32) -> Lattice {
    let n = code.length();
    let mut gens: Vec<Vec<i64>> =
        code.generator().iter().map(|row| row.iter().map(|&b| b as i64).collect()).collect();
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 2;
        gens.push(e);
    }
    let hnf = hermite_normal_form(&gens);
    let basis = hnf.iter().map(|r| r.iter().map(|&x| rational::int(x)).collect()).collect();
    let name = format!("A({},{})", n, code.dimension());
    Lattice::with_structure(basis, scale2, Some(name), Structure::ConstructionA(code.clone()))
        .expect("construction A always has full rank")
}
