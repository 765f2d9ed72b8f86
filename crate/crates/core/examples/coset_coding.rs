//! Coset coding over E8/2E8: every 8-bit message picks a coset, a random
//! offset picks the point inside it.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use wiretap_lattice::catalog;
use wiretap_lattice::wiretap::build_coset_code;

fn main() -> wiretap_lattice::Result<()> {
    let fine = catalog::e8();
    let coarse = fine.scaled(2);
    let code = build_coset_code(&fine, &coarse)?.with_offset_range(2);
    println!("k = {} secret bits per lattice point", code.k());

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for msg in [[1, 0, 1, 1, 0, 0, 1, 0], [0; 8], [1; 8]] {
        let x = code.encode(&msg, &mut rng)?;
        let noisy: Vec<f64> = x.ambient.iter().map(|v| v + 0.05).collect();
        let back = code.decode(&noisy)?;
        println!("{msg:?} -> {:?} -> {back:?}", x.ambient);
        assert_eq!(back, msg);
    }
    Ok(())
}
