//! Exhaustive weight enumeration and the binary MacWilliams identity.
//!
//! Enumeration walks a linear span in Gray-code order, so each step is a
//! single row XOR and popcount. The top information bits are fixed per task
//! and the partial histograms are summed, which keeps the walk parallel and
//! its result independent of scheduling.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::codes::CyclicCode;
use crate::error::{Error, Result};
use crate::gf2poly::{words_for, BinaryPolynomial};

/// Default enumeration budget: 2^30 words.
pub const DEFAULT_BUDGET: u64 = 1 << 30;

/// Codeword counts `A_0 ..= A_n` indexed by Hamming weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightDistribution {
    counts: Vec<BigUint>,
}

impl WeightDistribution {
    /// `counts[w]` is the number of codewords of weight `w`; the vector is
    /// padded to length `n + 1`.
    pub fn new(n: usize, mut counts: Vec<BigUint>) -> Result<Self> {
        if counts.len() > n + 1 {
            return Err(Error::invalid(format!(
                "{} weight classes for length {n}",
                counts.len()
            )));
        }
        counts.resize(n + 1, BigUint::zero());
        Ok(Self { counts })
    }

    pub fn from_histogram(hist: &[u64]) -> Self {
        Self {
            counts: hist.iter().map(|&c| BigUint::from(c)).collect(),
        }
    }

    /// Block length.
    pub fn n(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn count(&self, weight: usize) -> &BigUint {
        &self.counts[weight]
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    pub fn total(&self) -> BigUint {
        self.counts.iter().sum()
    }

    /// Smallest nonzero weight with a nonzero count.
    pub fn min_nonzero_weight(&self) -> Option<usize> {
        (1..self.counts.len()).find(|&w| !self.counts[w].is_zero())
    }

    /// Largest weight with a nonzero count.
    pub fn max_weight(&self) -> Option<usize> {
        self.counts.iter().rposition(|c| !c.is_zero())
    }

    /// `(weight, count)` for every nonzero weight class with a nonzero count.
    pub fn nonzero_terms(&self) -> impl Iterator<Item = (usize, &BigUint)> + '_ {
        self.counts
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, c)| !c.is_zero())
    }

    /// True when the counts account for all `2^k` codewords.
    pub fn is_complete(&self, k: usize) -> bool {
        self.total() == BigUint::one() << k
    }
}

/// Outcome of an enumeration-backed computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Enumeration<T> {
    Exact(T),
    /// The cheaper side still needs `2^dimension` words, above the budget.
    Infeasible { dimension: usize, budget: u64 },
}

impl<T> Enumeration<T> {
    pub fn exact(self) -> Option<T> {
        match self {
            Enumeration::Exact(t) => Some(t),
            Enumeration::Infeasible { .. } => None,
        }
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Enumeration<U> {
        match self {
            Enumeration::Exact(t) => Enumeration::Exact(f(t)),
            Enumeration::Infeasible { dimension, budget } => {
                Enumeration::Infeasible { dimension, budget }
            }
        }
    }
}

fn within_budget(dimension: usize, budget: u64) -> bool {
    dimension < 64 && (1u64 << dimension) <= budget
}

const SPLIT_BITS: usize = 8;

fn gray_walk<const W: usize>(basis: &[[u64; W]], start: [u64; W], hist: &mut [u64]) {
    let mut word = start;
    let weight = |w: &[u64; W]| w.iter().map(|x| x.count_ones() as usize).sum::<usize>();
    hist[weight(&word)] += 1;
    for i in 1u64..(1u64 << basis.len()) {
        let row = &basis[i.trailing_zeros() as usize];
        for (w, r) in word.iter_mut().zip(row) {
            *w ^= r;
        }
        hist[weight(&word)] += 1;
    }
}

fn enumerate_fixed<const W: usize>(basis: &[BinaryPolynomial], n: usize) -> Vec<u64> {
    let rows: Vec<[u64; W]> = basis
        .iter()
        .map(|p| {
            let mut a = [0u64; W];
            a[..p.words().len()].copy_from_slice(p.words());
            a
        })
        .collect();
    let split = SPLIT_BITS.min(rows.len());
    let (low, high) = rows.split_at(rows.len() - split);
    (0u64..1 << split)
        .into_par_iter()
        .map(|prefix| {
            let mut start = [0u64; W];
            for (j, row) in high.iter().enumerate() {
                if (prefix >> j) & 1 == 1 {
                    for (s, r) in start.iter_mut().zip(row) {
                        *s ^= r;
                    }
                }
            }
            let mut hist = vec![0u64; n + 1];
            gray_walk(low, start, &mut hist);
            hist
        })
        .reduce(
            || vec![0u64; n + 1],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        )
}

/// Weight histogram of the span of `basis` (rows assumed linearly
/// independent), indexed `0..=n`.
pub fn enumerate_span(basis: &[BinaryPolynomial], n: usize) -> Result<Vec<u64>> {
    if basis.len() >= 64 {
        return Err(Error::invalid("span dimension too large to enumerate"));
    }
    match words_for(n) {
        0 | 1 => Ok(enumerate_fixed::<1>(basis, n)),
        2 => Ok(enumerate_fixed::<2>(basis, n)),
        3 => Ok(enumerate_fixed::<3>(basis, n)),
        4 => Ok(enumerate_fixed::<4>(basis, n)),
        5..=8 => Ok(enumerate_fixed::<8>(basis, n)),
        _ => Err(Error::invalid(format!("length {n} exceeds enumeration support"))),
    }
}

fn binomials(n: usize) -> Vec<Vec<BigInt>> {
    let mut table = vec![vec![BigInt::zero(); n + 1]; n + 1];
    for a in 0..=n {
        table[a][0] = BigInt::one();
        for b in 1..=a {
            table[a][b] = &table[a - 1][b - 1] + &table[a - 1][b];
        }
    }
    table
}

/// Weight distribution of an `(n, k)` code from the complete distribution of
/// its `(n, n-k)` dual:
/// `A_d = 2^-(n-k) * sum_j B_j K_d(j)`, with Krawtchouk polynomials
/// `K_d(j) = sum_s (-1)^s C(j, s) C(n-j, d-s)`.
pub fn macwilliams_transform(
    dual: &WeightDistribution,
    n: usize,
    k: usize,
) -> Result<WeightDistribution> {
    if dual.n() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            actual: dual.n(),
        });
    }
    if k > n {
        return Err(Error::invalid(format!("dimension {k} exceeds length {n}")));
    }
    let dual_dimension = n - k;
    let total = dual.total();
    if total != BigUint::one() << dual_dimension {
        return Err(Error::IncompleteDistribution {
            actual: total.to_string(),
            dual_dimension,
        });
    }
    let c = binomials(n);
    let terms: Vec<(usize, BigInt)> = dual
        .counts()
        .iter()
        .enumerate()
        .filter(|(_, b)| !b.is_zero())
        .map(|(j, b)| (j, BigInt::from(b.clone())))
        .collect();
    let divisor = BigInt::one() << dual_dimension;
    let counts = (0..=n)
        .into_par_iter()
        .map(|d| {
            let mut acc = BigInt::zero();
            for (j, b) in &terms {
                let j = *j;
                let mut kraw = BigInt::zero();
                for s in d.saturating_sub(n - j)..=d.min(j) {
                    let term = &c[j][s] * &c[n - j][d - s];
                    if s % 2 == 0 {
                        kraw += term;
                    } else {
                        kraw -= term;
                    }
                }
                acc += b * kraw;
            }
            let (q, r) = (&acc / &divisor, &acc % &divisor);
            if !r.is_zero() || q.is_negative() {
                return Err(Error::invalid(format!(
                    "MacWilliams sum for weight {d} is not a nonnegative multiple of 2^{dual_dimension}"
                )));
            }
            Ok(q.to_biguint().expect("nonnegative"))
        })
        .collect::<Result<Vec<_>>>()?;
    WeightDistribution::new(n, counts)
}

impl CyclicCode {
    /// Basis `x^t g(x)`, `t < k`.
    pub fn code_basis(&self) -> Vec<BinaryPolynomial> {
        (0..self.k()).map(|t| self.generator().shl(t)).collect()
    }

    /// Basis `x^t g_dual(x)`, `t < n - k`.
    pub fn dual_basis(&self) -> Vec<BinaryPolynomial> {
        let g = self.dual_generator();
        (0..self.n() - self.k()).map(|t| g.shl(t)).collect()
    }

    /// Weight distribution of the dual code, enumerating the dual directly
    /// when `2^(n-k)` fits the budget and otherwise enumerating the code and
    /// transforming.
    pub fn dual_weight_distribution(&self, budget: u64) -> Result<Enumeration<WeightDistribution>> {
        let (n, k) = (self.n(), self.k());
        if within_budget(n - k, budget) {
            let hist = enumerate_span(&self.dual_basis(), n)?;
            return Ok(Enumeration::Exact(WeightDistribution::from_histogram(&hist)));
        }
        if within_budget(k, budget) {
            let code = WeightDistribution::from_histogram(&enumerate_span(&self.code_basis(), n)?);
            return macwilliams_transform(&code, n, n - k).map(Enumeration::Exact);
        }
        Ok(Enumeration::Infeasible {
            dimension: k.min(n - k),
            budget,
        })
    }

    /// Weight distribution of the code, enumerating whichever of the code and
    /// its dual is smaller.
    pub fn weight_distribution(&self, budget: u64) -> Result<Enumeration<WeightDistribution>> {
        let (n, k) = (self.n(), self.k());
        if k <= n - k && within_budget(k, budget) {
            let hist = enumerate_span(&self.code_basis(), n)?;
            return Ok(Enumeration::Exact(WeightDistribution::from_histogram(&hist)));
        }
        match self.dual_weight_distribution(budget)? {
            Enumeration::Exact(dual) => macwilliams_transform(&dual, n, k).map(Enumeration::Exact),
            Enumeration::Infeasible { dimension, budget } => {
                Ok(Enumeration::Infeasible { dimension, budget })
            }
        }
    }

    /// Exact minimum distance by enumeration, never approximated.
    pub fn min_distance_bruteforce(&self, budget: u64) -> Result<Enumeration<usize>> {
        Ok(self
            .weight_distribution(budget)?
            .map(|d| d.min_nonzero_weight().unwrap_or(0)))
    }
}

/// Converts a count to floating point for bound evaluation.
pub(crate) fn count_as_f64(c: &BigUint) -> f64 {
    c.to_f64().unwrap_or(f64::INFINITY)
}
