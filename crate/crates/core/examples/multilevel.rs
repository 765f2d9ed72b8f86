//! Multilevel encoding along the Z8 and E8 chains, with multistage decoding
//! of a noisy observation.

use wiretap_lattice::wiretap::{Chain, MultilevelCode, MultilevelConfig};

fn main() -> wiretap_lattice::Result<()> {
    let bits: Vec<u8> = "110100101110001011010011".bytes().map(|b| b - b'0').collect();
    for chain in [Chain::Z8, Chain::E8] {
        let code = MultilevelCode::new(chain, bits.len(), MultilevelConfig::default())?;
        let x = code.encode(&bits)?;
        let labels = code.coset_labels_per_level(&x)?;
        let y: Vec<f64> = x.ambient().iter().enumerate().map(|(i, v)| v + if i % 2 == 0 { 0.2 } else { -0.15 }).collect();
        let back = code.decode(&y)?;
        println!("{chain:?}: point {:?} (frame 2^({}/2)), labels {labels:?}", x.point, x.frame_scale2);
        println!("  decoded correctly: {}", back == bits);
    }
    Ok(())
}
