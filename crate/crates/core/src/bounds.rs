//! Union bounds on ML bit and frame error rates over BPSK/AWGN:
//!
//! ```text
//! BER <= (1/n) sum_d A_d d Q(sqrt(2 (k/n) d Eb/N0))
//! FER <=       sum_d A_d   Q(sqrt(2 (k/n) d Eb/N0))
//! ```

use crate::codes::{count_as_f64, WeightDistribution};

/// Gaussian tail probability `Q(x) = erfc(x / sqrt 2) / 2`.
pub fn q_function(x: f64) -> f64 {
    0.5 * libm::erfc(x / std::f64::consts::SQRT_2)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundPoint {
    pub ebno_db: f64,
    pub ber_bound: f64,
    pub fer_bound: f64,
}

/// Bound values over an Eb/N0 grid.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundCurve {
    pub points: Vec<BoundPoint>,
    /// Highest weight included when the distribution does not account for
    /// all `2^k` codewords; the sums then understate the true bound.
    pub truncated_at: Option<usize>,
}

/// Evaluates both bounds from every nonzero weight class of `dist`.
pub fn union_bound(dist: &WeightDistribution, n: usize, k: usize, ebno_db: &[f64]) -> BoundCurve {
    let rate = k as f64 / n as f64;
    let terms: Vec<(f64, f64)> = dist
        .nonzero_terms()
        .map(|(d, a)| (d as f64, count_as_f64(a)))
        .collect();
    let points = ebno_db
        .iter()
        .map(|&db| {
            let ebno = 10f64.powf(db / 10.0);
            let (mut ber, mut fer) = (0.0, 0.0);
            for &(d, a) in &terms {
                let pairwise = a * q_function((2.0 * rate * d * ebno).sqrt());
                fer += pairwise;
                ber += d * pairwise;
            }
            BoundPoint {
                ebno_db: db,
                ber_bound: ber / n as f64,
                fer_bound: fer,
            }
        })
        .collect();
    let truncated_at = if dist.is_complete(k) {
        None
    } else {
        dist.max_weight()
    };
    BoundCurve {
        points,
        truncated_at,
    }
}
