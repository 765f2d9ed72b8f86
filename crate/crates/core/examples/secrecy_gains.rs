//! Weak and strong secrecy gains of a few unimodular lattices.

use wiretap_lattice::catalog;
use wiretap_lattice::theta::secrecy::secrecy_gain;
use wiretap_lattice::theta::{extremal_theta, ClosedForm, ThetaSource};

fn main() -> wiretap_lattice::Result<()> {
    let sources = [
        ("Z8", ThetaSource::from_lattice(catalog::cubic(8))?),
        ("D4", ThetaSource::from_lattice(catalog::d4())?),
        ("E8", ThetaSource::Closed(ClosedForm::E8)),
        ("Leech", ThetaSource::Closed(ClosedForm::Leech)),
        ("BW32", ThetaSource::Polynomial(extremal_theta(32)?)),
    ];
    println!("{:<6} {:>14} {:>12} {:>10}", "", "weak", "strong", "y* (dB)");
    for (name, src) in &sources {
        let g = secrecy_gain(name, src)?;
        let weak = g.weak.map(|w| w.display()).unwrap_or_else(|| "n/a".into());
        let db = 10.0 * g.strong.y_star.log10();
        println!("{name:<6} {weak:>14} {:>12.6} {db:>10.4}", g.strong.chi);
    }
    Ok(())
}
