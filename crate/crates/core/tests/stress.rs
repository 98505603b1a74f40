//! Wider randomized soak of the decomposition oracle. Ignored by default;
//! run with `cargo test -p linkednet --test stress -- --ignored --nocapture`.

use std::collections::BTreeSet;

use linkednet::analysis::{decompose, AnalysisOptions, DecompositionResult};
use linkednet::gen::{random_semisimple_net, GenSpec};
use linkednet::quiver::{enlarged_hull, hull, window_admits_path, Vertex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
#[ignore = "slow soak; run on demand"]
fn decomposition_soak() {
    let mut rng = ChaCha8Rng::seed_from_u64(777);
    let mut ran = 0;
    let mut skipped = 0;
    for i in 0..300u64 {
        let n = 1 + (i % 3) as usize;
        let k = 1 + ((i / 3) % 4) as usize;
        let spread = 1 + (i % 3) as i64;
        let seeds: Vec<Vertex> = (0..k)
            .map(|_| {
                let raw: Vec<i64> = (0..=n).map(|_| rng.random_range(0..=spread)).collect();
                Vertex::normalize(&raw).unwrap()
            })
            .collect();
        let seed_set: BTreeSet<Vertex> = seeds.iter().cloned().collect();
        let window = enlarged_hull(&seed_set, n + 1).unwrap();
        let h = hull(&seed_set).unwrap();
        let sufficient = h
            .iter()
            .all(|s| window.iter().all(|u| window_admits_path(&window, s, u)));
        if !sufficient {
            skipped += 1;
            continue;
        }
        let spec = GenSpec {
            n,
            window_radius: n + 1,
            seeds,
            rng_seed: 77_000 + i,
            conjugate: i % 2 == 0,
        };
        let (p, expected) = random_semisimple_net(&spec).unwrap();
        match decompose(&p, AnalysisOptions::default()).unwrap() {
            DecompositionResult::Summands(s) => assert_eq!(s.len(), expected),
            DecompositionResult::Violation(cert) => {
                panic!("config {i}: unexpected violation at {}", cert.vertex)
            }
        }
        ran += 1;
    }
    println!("soak: {ran} decomposed, {skipped} skipped for window limits");
    assert!(ran >= 250, "too few runnable configurations: {ran}");
}
