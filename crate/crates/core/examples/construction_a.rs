//! Construction A from the (8,4,4) Reed-Muller code gives a scaled copy of E8.

use wiretap_lattice::lattice::construction_a;
use wiretap_lattice::BinaryCode;

fn main() -> wiretap_lattice::Result<()> {
    let rm = BinaryCode::from_bitstrings(8, &["11111111", "00001111", "00110011", "01010101"])?;
    let lattice = construction_a(&rm);
    let (min, kissing) = lattice.min_norm_and_kissing()?;
    println!("{}: volume {}, min norm {min}, kissing {kissing}", lattice.display_name(), lattice.volume());
    println!("even: {}, unimodular: {}", lattice.is_even(), lattice.is_unimodular());

    let y = [0.9, 1.2, -0.1, 1.1, 0.2, -0.8, 0.1, 0.95];
    let p = lattice.closest_point(&y)?;
    println!("closest to {y:?}: {:?}", p.ambient);
    Ok(())
}
