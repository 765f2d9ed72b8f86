use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wiretap_lattice::catalog;
use wiretap_lattice::channel::rng::TrialRng;
use wiretap_lattice::code::BinaryCode;
use wiretap_lattice::lattice::{construction_a, EnumerationConfig};
use wiretap_lattice::rational::{int, Rational};
use wiretap_lattice::wiretap::rate::{from_db, to_db};
use wiretap_lattice::wiretap::{
    build_coset_code, gsnr, multilevel_encode_e8, multilevel_encode_z8, operating_point, random_bit_rate, Chain,
    MultilevelCode, MultilevelConfig, RatePlan,
};
use wiretap_lattice::Lattice;

fn contains(l: &Lattice, v: &[i64]) -> bool {
    let v: Vec<Rational> = v.iter().map(|&a| int(a)).collect();
    l.coords_of_unscaled(&v).is_some()
}

fn norm2(v: &[i64]) -> i64 {
    v.iter().map(|a| a * a).sum()
}

#[test]
fn z2_leaders() {
    let z2 = catalog::cubic(2);
    let code = build_coset_code(&z2, &z2.scaled(2)).unwrap();
    let leaders: BTreeSet<Vec<i64>> = code.leaders().iter().map(|p| p.coords.clone()).collect();
    let want: BTreeSet<Vec<i64>> = [[0, 0], [0, 1], [1, 0], [1, 1]].iter().map(|v| v.to_vec()).collect();
    assert_eq!(leaders, want);
    assert_eq!(code.k(), 2);
}

#[test]
fn trivial_quotient_has_the_zero_leader() {
    let d4 = catalog::d4();
    let code = build_coset_code(&d4, &d4).unwrap();
    assert_eq!(code.k(), 0);
    assert_eq!(code.leaders().len(), 1);
    assert!(code.leader(0).coords.iter().all(|&c| c == 0));
}

/// `E₈ = 2E₈ + (1/√2)(RM + 2C†)`: in the unscaled frame every leader is
/// congruent modulo `2·(2Z⁸ + RM)` to exactly one `c + 2c'` with `c ∈ RM` and
/// `c'` running over a complement `C†` of `RM` in `F₂⁸`.
#[test]
fn e8_leaders_are_reed_muller_plus_twice_a_complement() {
    let rm = catalog::chain_code(4);
    let mut complement: Vec<Vec<u8>> = Vec::new();
    let mut rows = rm.generator().to_vec();
    for i in 0..8 {
        let mut e = vec![0u8; 8];
        e[i] = 1;
        rows.push(e.clone());
        if wiretap_lattice::code::f2_rank(&rows) == rows.len() {
            complement.push(e);
        } else {
            rows.pop();
        }
    }
    assert_eq!(complement.len(), 4);
    let c_dagger = BinaryCode::new(8, complement).unwrap();
    let reps: Vec<Vec<i64>> = rm
        .codewords()
        .iter()
        .flat_map(|c| {
            c_dagger.codewords().into_iter().map(move |d| c.iter().zip(&d).map(|(&a, &b)| a as i64 + 2 * b as i64).collect())
        })
        .collect();
    assert_eq!(reps.len(), 256);

    let e8 = catalog::e8();
    let code = build_coset_code(&e8, &e8.scaled(2)).unwrap();
    assert_eq!(code.leaders().len(), 256);
    let scale = 2f64.sqrt();
    let mut hit = BTreeSet::new();
    for leader in code.leaders() {
        let v: Vec<i64> = leader.ambient.iter().map(|a| (a * scale).round() as i64).collect();
        let matches: Vec<usize> = reps
            .iter()
            .enumerate()
            .filter(|(_, r)| {
                let diff: Vec<i64> = v.iter().zip(r.iter()).map(|(a, b)| a - b).collect();
                diff.iter().all(|d| d % 2 == 0) && {
                    let half: Vec<i64> = diff.iter().map(|d| d / 2).collect();
                    let word: Vec<u8> = half.iter().map(|h| h.rem_euclid(2) as u8).collect();
                    rm.contains(&word)
                }
            })
            .map(|(i, _)| i)
            .collect();
        assert_eq!(matches.len(), 1);
        hit.insert(matches[0]);
    }
    assert_eq!(hit.len(), 256);
}

#[test]
fn leaders_have_minimum_energy_in_their_coset() {
    let cfg = EnumerationConfig::default();
    for (fine, coarse) in [
        (catalog::cubic(2), catalog::cubic(2).scaled(2)),
        (catalog::d4(), catalog::d4().scaled(2)),
        (catalog::e8(), catalog::e8().scaled(2)),
    ] {
        let code = build_coset_code(&fine, &coarse).unwrap();
        for leader in code.leaders() {
            let e = leader.norm2();
            // Other members are leader − c, c ∈ coarse; none may be closer to 0.
            for (_, d) in coarse.points_near(&leader.ambient, e + 1e-9, &cfg).unwrap() {
                assert!(d >= e - 1e-9);
            }
        }
    }
}

#[test]
fn encode_examples() {
    let z2 = catalog::cubic(2);
    let code = build_coset_code(&z2, &z2.scaled(2)).unwrap();
    // r = (2, 2) is coarse coordinate vector (1, 1).
    assert_eq!(code.encode_with_offset(&[0, 1], &[1, 1]).unwrap().coords, vec![2, 3]);
    assert_eq!(code.encode_with_offset(&[0, 0], &[0, 0]).unwrap().coords, vec![0, 0]);
    assert_eq!(code.decode(&[1.9, 3.2]).unwrap(), vec![0, 1]);
    let rep = z2.point(vec![0, 1]);
    assert_eq!(code.bits_of(&z2.point(vec![2, 3])), code.bits_of(&rep));
}

#[test]
fn k_is_log_of_volume_ratio() {
    for (fine, coarse) in [
        (catalog::cubic(2), catalog::cubic(2).scaled(2)),
        (catalog::e8(), catalog::e8().scaled(2)),
        (catalog::chain_lattice(8), catalog::chain_lattice(3)),
    ] {
        let code = build_coset_code(&fine, &coarse).unwrap();
        let ratio = coarse.volume_squared() / fine.volume_squared();
        assert_eq!(ratio, Rational::from_integer((1u64 << (2 * code.k())).into()));
    }
}

fn coset_pairs() -> Vec<(Lattice, Lattice)> {
    vec![
        (catalog::cubic(2), catalog::cubic(2).scaled(2)),
        (catalog::d4(), catalog::d4().scaled(2)),
        (catalog::e8(), catalog::e8().scaled(2)),
        (catalog::chain_lattice(7), catalog::chain_lattice(2)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn coset_round_trip(which in 0usize..4, seed in any::<u64>(), msg in any::<u64>()) {
        let (fine, coarse) = coset_pairs().swap_remove(which);
        let code = build_coset_code(&fine, &coarse).unwrap();
        let label = msg % code.quotient().index();
        let bits = code.quotient().label_bits(label);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = code.encode(&bits, &mut rng).unwrap();
        prop_assert_eq!(code.label_of(&x), label);
        prop_assert_eq!(code.bits_of(&x), bits);
    }

    #[test]
    fn decoding_within_packing_radius(which in 0usize..4, seed in any::<u64>(), msg in any::<u64>(), dir in prop::collection::vec(-1.0f64..1.0, 8)) {
        let (fine, coarse) = coset_pairs().swap_remove(which);
        let code = build_coset_code(&fine, &coarse).unwrap();
        let bits = code.quotient().label_bits(msg % code.quotient().index());
        let x = code.encode(&bits, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        let n = fine.dim();
        let d = &dir[..n];
        let len = d.iter().map(|v| v * v).sum::<f64>().sqrt().max(1e-12);
        let packing = wiretap_lattice::rational::to_f64(&fine.min_norm_and_kissing().unwrap().0).sqrt() / 2.0;
        let y: Vec<f64> = x.ambient.iter().zip(d).map(|(a, v)| a + 0.99 * packing * v / len).collect();
        prop_assert_eq!(code.decode(&y).unwrap(), bits);
    }

    #[test]
    fn multilevel_prefix_labels(e8 in any::<bool>(), len in 1usize..=24, seed in any::<u64>()) {
        let chain = if e8 { Chain::E8 } else { Chain::Z8 };
        let code = MultilevelCode::new(chain, len, MultilevelConfig::default()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s: Vec<u8> = (0..len).map(|_| rng.random_range(0..2u8)).collect();
        let labels = code.coset_labels_per_level(&code.encode(&s).unwrap()).unwrap();
        for i in 0..len {
            let mut prefix = s.clone();
            prefix[i + 1..].iter_mut().for_each(|b| *b = 0);
            let x = code.encode(&prefix).unwrap();
            // x and the encoding of the prefix share the coset of level i + 1.
            let diff: Vec<i64> = code.encode(&s).unwrap().point.iter().zip(&x.point).map(|(a, b)| a - b).collect();
            prop_assert!(contains(&chain.level_lattice(i + 1), &diff));
            prop_assert_eq!(code.coset_labels_per_level(&x).unwrap()[i], labels[i]);
        }
    }

    #[test]
    fn e8_chain_output_lies_in_e8(len in 1usize..=24, seed in any::<u64>()) {
        let code = MultilevelCode::new(Chain::E8, len, MultilevelConfig::default()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s: Vec<u8> = (0..len).map(|_| rng.random_range(0..2u8)).collect();
        let x = code.encode(&s).unwrap();
        prop_assert!(contains(&construction_a(&catalog::chain_code(4)), &x.point));
    }

    #[test]
    fn voronoi_reduced_output_is_shortest_in_its_shaping_coset(e8 in any::<bool>(), seed in any::<u64>()) {
        let chain = if e8 { Chain::E8 } else { Chain::Z8 };
        let len = 16 - chain.prefix();
        let config = MultilevelConfig { centering: false, voronoi_reduce: true };
        let code = MultilevelCode::new(chain, len, config).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s: Vec<u8> = (0..len).map(|_| rng.random_range(0..2u8)).collect();
        let x = code.encode(&s).unwrap();
        prop_assert_eq!(code.decode(&x.ambient()).unwrap(), s);
        prop_assert!(is_shortest_mod(&x.point, 1 << code.blocks()));
    }

    #[test]
    fn centered_output_lies_in_the_shaping_cube(e8 in any::<bool>(), len in 1usize..=24, seed in any::<u64>()) {
        let chain = if e8 { Chain::E8 } else { Chain::Z8 };
        let config = MultilevelConfig { centering: true, voronoi_reduce: false };
        let code = MultilevelCode::new(chain, len, config).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s: Vec<u8> = (0..len).map(|_| rng.random_range(0..2u8)).collect();
        let t = code.transmit(&s).unwrap();
        let half = (1u64 << code.blocks()) as f64 / 2.0 * 2f64.powf(chain.frame_scale2() as f64 / 2.0);
        prop_assert!(t.iter().all(|v| v.abs() < half));
        prop_assert_eq!(code.decode(&t).unwrap(), s);
    }
}

/// Brute force over the neighbours `x + period·v`, `v ∈ {−1, 0, 1}⁸`.
fn is_shortest_mod(x: &[i64], period: i64) -> bool {
    let base = norm2(x);
    (0..3usize.pow(8)).all(|mut idx| {
        let shifted: Vec<i64> = x
            .iter()
            .map(|&a| {
                let v = (idx % 3) as i64 - 1;
                idx /= 3;
                a + period * v
            })
            .collect();
        norm2(&shifted) >= base
    })
}

#[test]
fn raw_lift_is_not_voronoi_reduced() {
    // Without reduction the image is the box [0, 2^q − 1]⁸, so vectors with a
    // coordinate above 2^{q−1} have a shorter shaping-coset member.
    let code = MultilevelCode::new(Chain::Z8, 16, MultilevelConfig::default()).unwrap();
    let s: Vec<u8> = (0..16).map(|i| (i % 3 == 0) as u8).collect();
    let x = code.encode(&s).unwrap();
    assert!(x.point.iter().any(|&v| v > 2));
    assert!(!is_shortest_mod(&x.point, 4));
}

#[test]
fn multilevel_examples() {
    assert_eq!(multilevel_encode_z8(&[0; 8]).unwrap().point, vec![0; 8]);
    assert_eq!(multilevel_encode_e8(&[0; 12]).unwrap().point, vec![0; 8]);
    let mut s = [0u8; 8];
    s[0] = 1;
    let g0 = multilevel_encode_z8(&s).unwrap().point;
    assert_eq!(g0, vec![0, 0, 0, 0, 0, 0, 0, 1]);
    s[1] = 1;
    let x = multilevel_encode_z8(&s).unwrap().point;
    assert_eq!(x, vec![0, 0, 0, 1, 0, 0, 0, 0]);
    // The integer row sum g₀ + g₁ = (0,0,0,1,0,0,0,2) lies in the same coset
    // of 2Z⁸, and x lies in g₀ + D₈.
    let row_sum = [0i64, 0, 0, 1, 0, 0, 0, 2];
    assert!(x.iter().zip(row_sum).all(|(a, b)| (a - b) % 2 == 0));
    let diff: Vec<i64> = x.iter().zip(&g0).map(|(a, b)| a - b).collect();
    assert!(contains(&catalog::d8(), &diff));

    // The first four data bits of the E8 chain select a Reed–Muller codeword.
    let x = multilevel_encode_e8(&[1, 1, 1, 1]).unwrap();
    let word: Vec<u8> = x.point.iter().map(|&v| v as u8).collect();
    assert!(catalog::chain_code(4).contains(&word));
    assert!(contains(&construction_a(&catalog::chain_code(4)), &x.point));
    assert_eq!(x.frame_scale2, -1);
}

#[test]
fn noisy_multilevel_decoding() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for chain in [Chain::Z8, Chain::E8] {
        let code = MultilevelCode::new(chain, 20, MultilevelConfig::default()).unwrap();
        let scale = 2f64.powf(chain.frame_scale2() as f64 / 2.0);
        for _ in 0..500 {
            let s: Vec<u8> = (0..20).map(|_| rng.random_range(0..2u8)).collect();
            let x = code.encode(&s).unwrap().ambient();
            let e: Vec<f64> = (0..8).map(|_| rng.random_range(-1.0..1.0)).collect();
            let len = e.iter().map(|v| v * v).sum::<f64>().sqrt();
            let y: Vec<f64> = x.iter().zip(&e).map(|(a, v)| a + 0.49 * scale * v / len).collect();
            assert_eq!(code.decode(&y).unwrap(), s);
        }
    }
}

/// Per-position bit error rates under AWGN are non-increasing within each
/// 8-bit block, up to Monte Carlo error. Across a block boundary the coset
/// distance drops (squared distance 8 for the last bit of a block, 4 for the
/// first bit of the next), and so does the error rate ordering.
#[test]
fn bit_error_rates_decrease_along_the_chain() {
    let len = 16;
    let trials = 40_000u64;
    let sigma = 0.3;
    let code = MultilevelCode::new(Chain::Z8, len, MultilevelConfig::default()).unwrap();
    let mut errors = vec![0u64; len];
    for t in 0..trials {
        let mut rng = TrialRng::new(3, 0, t);
        let s: Vec<u8> = (0..len).map(|_| (rng.next_u64() & 1) as u8).collect();
        let x = code.encode(&s).unwrap().ambient();
        let y: Vec<f64> = x.iter().map(|v| v + sigma * rng.normal()).collect();
        for (e, (a, b)) in errors.iter_mut().zip(code.decode(&y).unwrap().iter().zip(&s)) {
            *e += (a != b) as u64;
        }
    }
    let ber: Vec<f64> = errors.iter().map(|&e| e as f64 / trials as f64).collect();
    let se = |p: f64| (p * (1.0 - p) / trials as f64).sqrt();
    for i in (0..len - 1).filter(|i| i % 8 != 7) {
        let slack = 3.0 * (se(ber[i]).powi(2) + se(ber[i + 1]).powi(2)).sqrt();
        assert!(ber[i + 1] <= ber[i] + slack, "position {i}: {:?}", ber);
    }
    assert!(ber[0] > ber[len - 1]);
    assert!(ber[8] > ber[7]);
}

#[test]
fn rates_and_operating_points() {
    for m in 0..3 {
        let l = catalog::e8().scaled(2 * m);
        let y = operating_point(&l);
        assert!((y - 2f64.powi(-2 * m)).abs() < 1e-12);
        assert!((to_db(y) + 6.0206 * m as f64).abs() < 1e-3);
    }
    assert!((operating_point(&catalog::d4()) - 0.5f64.sqrt()).abs() < 1e-12);
    assert!((operating_point(&catalog::cubic(3)) - 1.0).abs() < 1e-15);
    let (r, _) = random_bit_rate(to_db(2.0 * std::f64::consts::PI));
    assert!(r.abs() < 1e-12);
    assert_eq!(random_bit_rate(0.0), (0.0, true));
    let sigma = (1.0 / (2.0 * std::f64::consts::PI)).sqrt();
    assert!((gsnr(&catalog::e8(), sigma) - 1.0).abs() < 1e-12);
    assert!((gsnr(&catalog::e8().scaled(2), sigma) - 4.0).abs() < 1e-12);
    for (l, s) in [(catalog::d4(), 0.3), (catalog::l8(), 0.8)] {
        let y = 1.0 / (2.0 * std::f64::consts::PI * s * s);
        assert!((gsnr(&l, s) - y / operating_point(&l)).abs() < 1e-12 * gsnr(&l, s));
    }
    assert!((from_db(to_db(3.7)) - 3.7).abs() < 1e-12);
    let plan = RatePlan::from_bits(8, 1, 3);
    assert_eq!((plan.secrecy, plan.random, plan.total), (0.25, 0.75, 1.0));
}
