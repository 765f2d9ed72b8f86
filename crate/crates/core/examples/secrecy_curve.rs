//! Secrecy function of E8 and D4 over a dB grid. D4 peaks at its symmetry
//! point 2^(-1/2), E8 at y = 1.

use wiretap_lattice::catalog;
use wiretap_lattice::theta::{secrecy_function, ClosedForm, ThetaSource};

fn main() -> wiretap_lattice::Result<()> {
    let e8 = ThetaSource::Closed(ClosedForm::E8);
    let d4 = ThetaSource::from_lattice(catalog::d4())?;
    println!("y_db,xi_e8,xi_d4");
    for i in 0..=40 {
        let db = -10.0 + 0.5 * i as f64;
        let y = 10f64.powf(db / 10.0);
        println!("{db:.1},{:.9},{:.9}", secrecy_function(&e8, y)?, secrecy_function(&d4, y)?);
    }
    Ok(())
}
