//! Noiseless end-to-end loopback: with sigma = 0 every receiver must decode
//! every stream's symbol exactly, for random symbol tuples over random
//! channel realizations, across all runnable schemes.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use realign::channel::{sample_realization, DEFAULT_GAIN_DIST};
use realign::scheme::{
    build_all_layouts, build_scheme, max_received_directions, tx_direction_values, SchemeConfig,
};
use realign::signaling::{
    build_received_constellation, derive_params, encode, hard_decode, transmit_and_receive,
    DEFAULT_POINT_CAP,
};
use realign::Error;

/// Acquires a non-degenerate realization for the scheme, retrying seeds.
fn loopback_scheme(name: &str, cfg: &SchemeConfig, channels: usize, tuples_per_channel: usize) {
    let scheme = build_scheme(name, cfg).unwrap();
    let (k, m) = scheme.dims();
    let streams = scheme.streams().unwrap();
    for (idx, s) in streams.iter().enumerate() {
        assert_eq!(s.id, idx, "stream ids must be dense");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x4C4F4F50);

    let mut seed = 1u64;
    let mut done = 0;
    while done < channels {
        seed += 1;
        let raw = sample_realization(scheme.kind(), k, m, DEFAULT_GAIN_DIST, seed).unwrap();
        let h = match scheme.prepare_channel(raw) {
            Ok(h) => h,
            Err(Error::Degenerate(_) | Error::DivisionDegenerate(_)) => continue,
            Err(e) => panic!("unexpected: {e}"),
        };
        let layouts = match build_all_layouts(&streams, &h) {
            Ok(l) => l,
            Err(Error::Degenerate(_)) => continue,
            Err(e) => panic!("unexpected: {e}"),
        };
        let m_dirs = max_received_directions(&layouts);
        let tx_dirs = tx_direction_values(&streams, &h).unwrap();
        // Moderate power so Q stays small and the constellations stay exact.
        let spec = derive_params(1e6, 1.0, 0.0, m_dirs, &tx_dirs).unwrap();
        let constellations: Vec<_> = match layouts
            .iter()
            .map(|l| build_received_constellation(l, &spec, DEFAULT_POINT_CAP))
            .collect::<realign::Result<Vec<_>>>()
        {
            Ok(c) => c,
            Err(Error::Degenerate(_)) => continue,
            Err(e) => panic!("unexpected: {e}"),
        };

        let q = spec.q as i64;
        let mut tx_streams: Vec<Vec<usize>> = vec![Vec::new(); h.n_tx()];
        for (idx, s) in streams.iter().enumerate() {
            tx_streams[s.tx].push(idx);
        }
        for _ in 0..tuples_per_channel {
            let symbols: Vec<i64> = (0..streams.len()).map(|_| rng.gen_range(-q..=q)).collect();
            let x: Vec<f64> = tx_streams
                .iter()
                .enumerate()
                .map(|(tx, ids)| {
                    let syms: Vec<i64> = ids.iter().map(|&s| symbols[s]).collect();
                    encode(&syms, &tx_dirs[tx], &spec).unwrap()
                })
                .collect();
            let y = transmit_and_receive(&h, &x, 0.0, &mut rng).unwrap();
            for (layout, rc) in layouts.iter().zip(&constellations) {
                let decoded = hard_decode(rc, y[layout.rx]);
                for (pos, dir) in layout.intended.iter().enumerate() {
                    assert_eq!(
                        decoded[pos], symbols[dir.stream],
                        "{name}: stream {} misdecoded at rx {} (seed {seed})",
                        dir.stream, layout.rx
                    );
                }
            }
        }
        done += 1;
    }
}

#[test]
fn mac_noiseless_loopback() {
    let cfg = SchemeConfig {
        m: 3,
        ..SchemeConfig::default()
    };
    loopback_scheme("mac", &cfg, 10, 40);
}

#[test]
fn two_user_x_noiseless_loopback() {
    loopback_scheme("two-user-x", &SchemeConfig::default(), 10, 40);
}

#[test]
fn three_user_noiseless_loopback() {
    let cfg = SchemeConfig {
        k: 3,
        n: 2,
        ..SchemeConfig::default()
    };
    loopback_scheme("three-user", &cfg, 5, 40);
}
