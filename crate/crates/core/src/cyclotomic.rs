//! 2-cyclotomic cosets modulo an odd block length, and the idempotents
//! assembled from them.

use crate::error::{Error, Result};
use crate::gf2poly::{check_block_length, BinaryPolynomial};

/// Partition of `{0, .., n-1}` into orbits of multiplication by 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    n: usize,
    /// Cosets in ascending order of representative. Each coset lists
    /// `s, 2s, 4s, ..` mod n, starting at its representative.
    cosets: Vec<Vec<usize>>,
    representatives: Vec<usize>,
    /// Index into `cosets` for every residue.
    coset_index: Vec<usize>,
}

impl CosetTable {
    pub fn new(n: usize) -> Result<Self> {
        check_block_length(n)?;
        let mut coset_index = vec![usize::MAX; n];
        let mut cosets = Vec::new();
        let mut representatives = Vec::new();
        for s in 0..n {
            if coset_index[s] != usize::MAX {
                continue;
            }
            let idx = cosets.len();
            let mut coset = Vec::new();
            let mut e = s;
            loop {
                coset_index[e] = idx;
                coset.push(e);
                e = (2 * e) % n;
                if e == s {
                    break;
                }
            }
            representatives.push(s);
            cosets.push(coset);
        }
        Ok(Self {
            n,
            cosets,
            representatives,
            coset_index,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Smallest element of every coset, ascending. The first entry is always 0.
    pub fn representatives(&self) -> &[usize] {
        &self.representatives
    }

    /// Nonzero representatives, the pool the code search draws from.
    pub fn nonzero_representatives(&self) -> &[usize] {
        &self.representatives[1..]
    }

    pub fn cosets(&self) -> &[Vec<usize>] {
        &self.cosets
    }

    pub fn len(&self) -> usize {
        self.cosets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cosets.is_empty()
    }

    /// The coset whose representative is `s`.
    pub fn coset(&self, s: usize) -> Result<&[usize]> {
        match self.representatives.binary_search(&s) {
            Ok(i) => Ok(&self.cosets[i]),
            Err(_) => Err(Error::UnknownRepresentative(s)),
        }
    }

    /// The coset containing residue `e`.
    pub fn coset_of(&self, e: usize) -> &[usize] {
        &self.cosets[self.coset_index[e % self.n]]
    }

    pub fn representative_of(&self, e: usize) -> usize {
        self.representatives[self.coset_index[e % self.n]]
    }

    /// `|C_1|`, the multiplicative order of 2 modulo n.
    pub fn coset1_size(&self) -> usize {
        self.coset_of(1).len()
    }

    /// `i(x) = sum over s in selection, i in C_s of x^i`.
    pub fn idempotent_from_cosets(&self, selection: &[usize]) -> Result<BinaryPolynomial> {
        let mut exps = Vec::new();
        for &s in selection {
            exps.extend_from_slice(self.coset(s)?);
        }
        Ok(BinaryPolynomial::from_exponents(exps))
    }

    /// `sum over i in C_s of x^((n - i) mod n)` for a nonzero representative.
    pub fn reversed_coset_polynomial(&self, s: usize) -> Result<BinaryPolynomial> {
        if s == 0 {
            return Err(Error::ZeroRepresentative);
        }
        let coset = self.coset(s)?;
        Ok(BinaryPolynomial::from_exponents(
            coset.iter().map(|&i| (self.n - i) % self.n),
        ))
    }
}

/// True when `p * p = p` modulo `x^n + 1`.
pub fn is_idempotent(p: &BinaryPolynomial, n: usize) -> Result<bool> {
    let r = p.reduce_mod(n);
    Ok(r.mul_mod(&r, n)? == r)
}

/// Generating idempotent of the dual code: `1 + x^n i(x^-1)`.
pub fn dual_idempotent(i: &BinaryPolynomial, n: usize) -> Result<BinaryPolynomial> {
    check_block_length(n)?;
    if !is_idempotent(i, n)? {
        return Err(Error::NotIdempotent(n));
    }
    let reversed =
        BinaryPolynomial::from_exponents(i.reduce_mod(n).exponents().map(|j| (n - j) % n));
    Ok(reversed.add(&BinaryPolynomial::one()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::IndexedRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p(exps: &[usize]) -> BinaryPolynomial {
        BinaryPolynomial::from_exponents(exps.iter().copied())
    }

    #[test]
    fn cosets_of_seven() {
        let t = CosetTable::new(7).unwrap();
        assert_eq!(t.representatives(), &[0, 1, 3]);
        assert_eq!(t.cosets(), &[vec![0], vec![1, 2, 4], vec![3, 6, 5]]);
        assert_eq!(t.coset1_size(), 3);
        assert_eq!(t.representative_of(5), 3);
    }

    #[test]
    fn cosets_of_fifteen() {
        let t = CosetTable::new(15).unwrap();
        assert_eq!(t.representatives(), &[0, 1, 3, 5, 7]);
        assert_eq!(t.coset(1).unwrap().len(), 4);
        assert_eq!(t.coset(5).unwrap().len(), 2);
    }

    #[test]
    fn rejects_even_and_tiny_lengths() {
        assert_eq!(CosetTable::new(6), Err(Error::InvalidBlockLength(6)));
        assert_eq!(CosetTable::new(1), Err(Error::InvalidBlockLength(1)));
    }

    #[test]
    fn partition_is_complete_and_canonical() {
        for n in [3, 7, 9, 15, 17, 21, 23, 31, 127, 129] {
            let t = CosetTable::new(n).unwrap();
            assert_eq!(t.coset(0).unwrap(), &[0]);
            let mut seen = vec![false; n];
            for (coset, &rep) in t.cosets().iter().zip(t.representatives()) {
                assert_eq!(*coset.iter().min().unwrap(), rep);
                for &e in coset {
                    assert!(!seen[e], "residue {e} in two cosets");
                    seen[e] = true;
                    assert!(coset.contains(&((2 * e) % n)));
                }
            }
            assert!(seen.iter().all(|&s| s));
            assert_eq!(t.cosets().iter().map(Vec::len).sum::<usize>(), n);
        }
    }

    #[test]
    fn idempotent_examples() {
        let t = CosetTable::new(7).unwrap();
        assert_eq!(t.idempotent_from_cosets(&[1]).unwrap(), p(&[1, 2, 4]));
        assert!(t.idempotent_from_cosets(&[]).unwrap().is_zero());
        assert_eq!(
            t.idempotent_from_cosets(&[0, 1, 3]).unwrap(),
            p(&[0, 1, 2, 3, 4, 5, 6])
        );
        assert_eq!(
            t.idempotent_from_cosets(&[2]),
            Err(Error::UnknownRepresentative(2))
        );
    }

    #[test]
    fn dual_idempotent_examples() {
        let i = p(&[1, 2, 4]);
        let d = dual_idempotent(&i, 7).unwrap();
        assert_eq!(d, p(&[0, 3, 5, 6]));
        assert_eq!(dual_idempotent(&d, 7).unwrap(), i);
        assert!(dual_idempotent(&BinaryPolynomial::zero(), 7).unwrap().is_one());
        assert_eq!(dual_idempotent(&p(&[1]), 7), Err(Error::NotIdempotent(7)));
    }

    #[test]
    fn reversed_coset_examples() {
        let t = CosetTable::new(7).unwrap();
        assert_eq!(t.reversed_coset_polynomial(1).unwrap(), p(&[6, 5, 3]));
        assert_eq!(t.reversed_coset_polynomial(3).unwrap(), p(&[4, 1, 2]));
        assert_eq!(t.reversed_coset_polynomial(0), Err(Error::ZeroRepresentative));
        for n in [15, 127] {
            let t = CosetTable::new(n).unwrap();
            for &s in t.nonzero_representatives() {
                let exps: Vec<usize> = t.reversed_coset_polynomial(s).unwrap().exponents().collect();
                let mut coset = t.coset_of(exps[0]).to_vec();
                coset.sort_unstable();
                assert_eq!(exps, coset);
            }
        }
    }

    #[test]
    fn every_coset_union_is_idempotent() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in [7, 15, 17, 127, 129] {
            let t = CosetTable::new(n).unwrap();
            for &s in t.representatives() {
                let e = t.idempotent_from_cosets(&[s]).unwrap();
                assert!(is_idempotent(&e, n).unwrap());
            }
            for _ in 0..100 {
                let count = rng.random_range(0..=t.len());
                let sel: Vec<usize> = t
                    .representatives()
                    .choose_multiple(&mut rng, count)
                    .copied()
                    .collect();
                let e = t.idempotent_from_cosets(&sel).unwrap();
                assert!(is_idempotent(&e, n).unwrap());
                let d = dual_idempotent(&e, n).unwrap();
                assert!(is_idempotent(&d, n).unwrap());
                assert_eq!(dual_idempotent(&d, n).unwrap(), e);
            }
        }
    }
}
