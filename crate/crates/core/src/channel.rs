//! BPSK over AWGN with unit symbol energy, and the channel LLR front end.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

/// Noise parameters for one Eb/N0 point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChannelConfig {
    ebno_db: f64,
    rate: f64,
    sigma: f64,
}

impl ChannelConfig {
    /// `sigma = sqrt(1 / (2 R 10^(EbN0/10)))`.
    pub fn new(ebno_db: f64, rate: f64) -> Result<Self> {
        if !(rate > 0.0 && rate <= 1.0) {
            return Err(Error::invalid(format!("code rate {rate} outside (0, 1]")));
        }
        if ebno_db.is_nan() {
            return Err(Error::invalid("Eb/N0 is NaN"));
        }
        let ebno = 10f64.powf(ebno_db / 10.0);
        Ok(Self {
            ebno_db,
            rate,
            sigma: (1.0 / (2.0 * rate * ebno)).sqrt(),
        })
    }

    pub fn ebno_db(&self) -> f64 {
        self.ebno_db
    }

    pub fn rate(&self) -> f64 {
        self.rate
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    /// `2 / sigma^2`, the LLR scale.
    pub fn llr_scale(&self) -> Result<f64> {
        if self.sigma <= 0.0 {
            return Err(Error::invalid("LLRs are undefined for a noiseless channel"));
        }
        Ok(2.0 / (self.sigma * self.sigma))
    }
}

/// `0 -> +1`, `1 -> -1`.
pub fn modulate(bits: &[u8]) -> Vec<f64> {
    bits.iter().map(|&b| 1.0 - 2.0 * f64::from(b & 1)).collect()
}

/// Bit 1 where the symbol is negative; zero decides 0.
pub fn hard_decision(symbols: &[f64]) -> Vec<u8> {
    symbols.iter().map(|&y| u8::from(y < 0.0)).collect()
}

/// `y_i = x_i + n_i`, `n_i ~ N(0, sigma^2)` independently.
pub fn transmit<R: Rng + ?Sized>(x: &[f64], cfg: &ChannelConfig, rng: &mut R) -> Vec<f64> {
    x.iter()
        .map(|&s| {
            let z: f64 = rng.sample(StandardNormal);
            s + cfg.sigma * z
        })
        .collect()
}

/// `L = (2 / sigma^2) y`.
pub fn llr(y: &[f64], cfg: &ChannelConfig) -> Result<Vec<f64>> {
    let scale = cfg.llr_scale()?;
    Ok(y.iter().map(|&v| scale * v).collect())
}

/// Independent random stream for one frame, derived from the master seed,
/// the grid index and the frame index. Identical inputs reproduce the same
/// stream no matter which worker draws it.
pub fn frame_stream(seed: u64, grid_index: usize, frame_index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((grid_index as u64) << 44) ^ frame_index);
    rng
}
