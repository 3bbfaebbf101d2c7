//! Shared setup for the benchmarks: fixture loading and noisy frames.

use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use mdpc::channel::{llr, modulate, transmit};
use mdpc::{ChannelConfig, CodeSpec, CyclicCode};

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

/// Loads a code spec from the repository fixtures.
///
/// # Panics
///
/// If the fixture is missing or invalid.
pub fn load_fixture(name: &str) -> CyclicCode {
    let text = std::fs::read_to_string(fixture_path(name)).expect("fixture exists");
    CodeSpec::parse(&text)
        .and_then(CodeSpec::build)
        .expect("fixture is a valid code")
}

/// A received frame: transmitted codeword, channel output and channel LLRs.
pub struct Frame {
    pub codeword: Vec<u8>,
    pub y: Vec<f64>,
    pub llr: Vec<f64>,
}

/// `count` random codewords sent through AWGN at `ebno_db`.
pub fn noisy_frames(code: &CyclicCode, ebno_db: f64, count: usize, seed: u64) -> Vec<Frame> {
    let channel = ChannelConfig::new(ebno_db, code.rate()).expect("valid channel");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let info: Vec<u8> = (0..code.k()).map(|_| rng.random_range(0..2)).collect();
            let codeword = code.encode(&info).expect("k information bits");
            let y = transmit(&modulate(&codeword), &channel, &mut rng);
            let llr = llr(&y, &channel).expect("noisy channel");
            Frame { codeword, y, llr }
        })
        .collect()
}
