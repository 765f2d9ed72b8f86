//! Lower bound on the best secrecy gain of an even unimodular lattice,
//! compared with its asymptotic forms and with the extremal gains.

use wiretap_lattice::rational::to_f64;
use wiretap_lattice::theta::extremal_theta;
use wiretap_lattice::theta::secrecy::{lower_bound_asymptotic, lower_bound_rounded, secrecy_gain_lower_bound};

fn main() -> wiretap_lattice::Result<()> {
    println!("{:>4} {:>14} {:>14} {:>14} {:>14}", "n", "bound", "theta3^n/2", "1.086^n/2", "extremal");
    for n in (8..=160).step_by(8) {
        let extremal = match n {
            8 | 24 | 32 | 48 | 72 | 80 => format!("{:.6}", to_f64(&extremal_theta(n)?.weak_gain())),
            _ => String::new(),
        };
        println!(
            "{n:>4} {:>14.6} {:>14.6} {:>14.6} {extremal:>14}",
            secrecy_gain_lower_bound(n)?,
            lower_bound_asymptotic(n),
            lower_bound_rounded(n)
        );
    }
    Ok(())
}
