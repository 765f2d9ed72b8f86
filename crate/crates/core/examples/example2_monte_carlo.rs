//! Eve's correct-decision probability for Z2/2Z2 coset coding next to
//! uncoded 4-QAM, with a Monte Carlo check of the closed form.

use wiretap_lattice::channel::example2::{crossovers_db, pce_4qam, pce_coset_z2, simulate_example2};

fn main() -> wiretap_lattice::Result<()> {
    println!("snr_db,pce_4qam,pce_coset,mc,mc_stderr");
    for db in [-10.0, -5.0, 0.0, 5.0, 10.0, 15.0] {
        let ebn0 = 10f64.powf(db / 10.0);
        let mc = simulate_example2(ebn0, 200_000, 1)?;
        println!("{db},{:.6},{:.6},{:.6},{:.6}", pce_4qam(ebn0), pce_coset_z2(ebn0), mc.p_correct, mc.stderr);
    }
    println!("crossovers (dB): {:?}", crossovers_db(-30.0, 30.0, 0.1));
    Ok(())
}
