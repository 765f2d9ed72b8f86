//! Extremal theta series as polynomials in E4 and Delta, with the first
//! nonzero shell and the exact weak secrecy gain.

use wiretap_lattice::rational::format_rational;
use wiretap_lattice::theta::extremal::extremal_kissing;
use wiretap_lattice::theta::extremal_theta;

fn main() -> wiretap_lattice::Result<()> {
    for n in [8, 24, 32, 48, 72, 80] {
        let p = extremal_theta(n)?;
        let (norm, kissing) = extremal_kissing(n)?;
        println!("n = {n}");
        println!("  theta  = {}", p.formula());
        println!("  shell  = {} vectors of norm {norm}", format_rational(&kissing));
        println!("  gain   = {}", format_rational(&p.weak_gain()));
    }
    Ok(())
}
