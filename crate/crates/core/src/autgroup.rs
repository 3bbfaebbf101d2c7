//! Coordinate permutations in the automorphism group of a cyclic code of odd
//! length: cyclic shifts `i -> i + a` and Frobenius maps `i -> 2^j i`.
//!
//! Coordinates are zero-indexed throughout.

use rand::Rng;

use crate::error::{Error, Result};

/// Shift and Frobenius power a permutation was built from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AutParams {
    pub shift: usize,
    pub frobenius_power: usize,
}

/// A permutation of `{0, .., n-1}`; `mapping[i]` is the image of coordinate `i`.
#[derive(Clone, Debug)]
pub struct Permutation {
    mapping: Vec<usize>,
    params: Option<AutParams>,
}

impl PartialEq for Permutation {
    fn eq(&self, other: &Self) -> bool {
        self.mapping == other.mapping
    }
}

impl Eq for Permutation {}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self {
            mapping: (0..n).collect(),
            params: Some(AutParams {
                shift: 0,
                frobenius_power: 0,
            }),
        }
    }

    /// Validates that `mapping` is a bijection.
    pub fn from_mapping(mapping: Vec<usize>) -> Result<Self> {
        let n = mapping.len();
        let mut seen = vec![false; n];
        for &t in &mapping {
            if t >= n || seen[t] {
                return Err(Error::invalid("mapping is not a permutation"));
            }
            seen[t] = true;
        }
        Ok(Self {
            mapping,
            params: None,
        })
    }

    /// `i -> (i + a) mod n`.
    pub fn cyclic_shift(n: usize, a: usize) -> Self {
        Self {
            mapping: (0..n).map(|i| (i + a) % n).collect(),
            params: Some(AutParams {
                shift: a % n,
                frobenius_power: 0,
            }),
        }
    }

    /// `i -> 2^j i mod n`.
    pub fn frobenius(n: usize, j: usize) -> Self {
        let mut mult = 1 % n;
        for _ in 0..j {
            mult = (2 * mult) % n;
        }
        Self {
            mapping: (0..n).map(|i| (i * mult) % n).collect(),
            params: Some(AutParams {
                shift: 0,
                frobenius_power: j,
            }),
        }
    }

    /// `i -> 2^j i + a mod n`: the Frobenius map followed by the shift, with
    /// `a` uniform in `[0, n)` and `j` uniform in `[0, coset1_size)`.
    pub fn sample_random<R: Rng + ?Sized>(n: usize, coset1_size: usize, rng: &mut R) -> Self {
        let a = rng.random_range(0..n);
        let j = rng.random_range(0..coset1_size.max(1));
        let mut p = Self::cyclic_shift(n, a).compose(&Self::frobenius(n, j));
        p.params = Some(AutParams {
            shift: a,
            frobenius_power: j,
        });
        p
    }

    pub fn n(&self) -> usize {
        self.mapping.len()
    }

    pub fn mapping(&self) -> &[usize] {
        &self.mapping
    }

    pub fn params(&self) -> Option<AutParams> {
        self.params
    }

    pub fn image(&self, i: usize) -> usize {
        self.mapping[i]
    }

    pub fn is_identity(&self) -> bool {
        self.mapping.iter().enumerate().all(|(i, &t)| i == t)
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    ///
    /// # Panics
    ///
    /// If the lengths differ; see [`Permutation::try_compose`].
    pub fn compose(&self, other: &Self) -> Self {
        self.try_compose(other).expect("permutation lengths differ")
    }

    pub fn try_compose(&self, other: &Self) -> Result<Self> {
        if self.n() != other.n() {
            return Err(Error::LengthMismatch {
                expected: self.n(),
                actual: other.n(),
            });
        }
        Ok(Self {
            mapping: other.mapping.iter().map(|&i| self.mapping[i]).collect(),
            params: None,
        })
    }

    pub fn inverse(&self) -> Self {
        let mut mapping = vec![0; self.n()];
        for (i, &t) in self.mapping.iter().enumerate() {
            mapping[t] = i;
        }
        Self {
            mapping,
            params: None,
        }
    }

    /// Output position `p(i)` receives input element `i`.
    pub fn apply<T: Clone>(&self, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.n() {
            return Err(Error::LengthMismatch {
                expected: self.n(),
                actual: v.len(),
            });
        }
        let mut out = v.to_vec();
        for (x, &t) in v.iter().zip(&self.mapping) {
            out[t] = x.clone();
        }
        Ok(out)
    }

    /// `apply(inverse(p), v)` without materializing the inverse:
    /// `out[i] = v[p(i)]`.
    pub fn apply_inverse_into<T: Copy>(&self, v: &[T], out: &mut [T]) {
        for (o, &t) in out.iter_mut().zip(&self.mapping) {
            *o = v[t];
        }
    }

    /// In-buffer form of [`Permutation::apply`].
    pub fn apply_into<T: Copy>(&self, v: &[T], out: &mut [T]) {
        for (x, &t) in v.iter().zip(&self.mapping) {
            out[t] = *x;
        }
    }
}
