//! Monte Carlo wiretap simulation for D4/2D4 with Eve's theta bound.

use wiretap_lattice::catalog;
use wiretap_lattice::channel::{simulate_wiretap, ChannelParams, Detector};
use wiretap_lattice::wiretap::build_coset_code;

fn main() -> wiretap_lattice::Result<()> {
    let fine = catalog::d4();
    let code = build_coset_code(&fine, &fine.scaled(2))?;
    for sigma_e in [0.3, 0.6, 1.2] {
        let params = ChannelParams::new(0.1, sigma_e, 42, 50_000)?;
        let (bob, eve) = simulate_wiretap(&code, &params, Detector::Lattice)?;
        println!(
            "sigma_e {sigma_e}: bob {:.4}, eve {:.4} +- {:.4}, bound {:.4}",
            bob.p_correct,
            eve.p_correct,
            eve.stderr,
            eve.bound.unwrap_or(f64::NAN)
        );
    }
    Ok(())
}
