//! Dense polynomials over GF(2).
//!
//! Coefficients are packed into `u64` words: bit `i % 64` of word `i / 64` is
//! the coefficient of `x^i`. The word vector never ends in a zero word, so two
//! polynomials are equal exactly when their word vectors are equal.
//!
//! Over GF(2) every nonzero polynomial is monic, so [`BinaryPolynomial::gcd`]
//! returns the canonical greatest common divisor without a normalization step.

use std::fmt;
use std::ops::{Add, AddAssign};
use std::str::FromStr;

use crate::error::{Error, Result};

const WORD_BITS: usize = 64;

/// A polynomial with coefficients in GF(2).
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BinaryPolynomial {
    words: Vec<u64>,
}

/// Validates a block length for arithmetic in `GF(2)[x] / (x^n + 1)`.
pub(crate) fn check_block_length(n: usize) -> Result<()> {
    if n < 3 || n % 2 == 0 {
        return Err(Error::InvalidBlockLength(n));
    }
    Ok(())
}

pub(crate) fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD_BITS)
}

/// `dst ^= src << shift`, growing `dst` as needed. Leaves `dst` untrimmed.
fn xor_shifted(dst: &mut Vec<u64>, src: &[u64], shift: usize) {
    let word_shift = shift / WORD_BITS;
    let bit_shift = shift % WORD_BITS;
    let needed = src.len() + word_shift + usize::from(bit_shift != 0);
    if dst.len() < needed {
        dst.resize(needed, 0);
    }
    if bit_shift == 0 {
        for (d, &s) in dst[word_shift..].iter_mut().zip(src) {
            *d ^= s;
        }
    } else {
        for (i, &s) in src.iter().enumerate() {
            dst[i + word_shift] ^= s << bit_shift;
            dst[i + word_shift + 1] ^= s >> (WORD_BITS - bit_shift);
        }
    }
}

fn trim(words: &mut Vec<u64>) {
    while words.last() == Some(&0) {
        words.pop();
    }
}

fn degree_of(words: &[u64]) -> Option<usize> {
    let top = words.iter().rposition(|&w| w != 0)?;
    Some(top * WORD_BITS + (WORD_BITS - 1 - words[top].leading_zeros() as usize))
}

impl BinaryPolynomial {
    pub fn zero() -> Self {
        Self { words: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0)
    }

    /// `x^e`.
    pub fn monomial(e: usize) -> Self {
        let mut words = vec![0; e / WORD_BITS + 1];
        words[e / WORD_BITS] = 1 << (e % WORD_BITS);
        Self { words }
    }

    /// `x^n + 1`.
    pub fn x_n_plus_one(n: usize) -> Self {
        let mut p = Self::monomial(n);
        p.words[0] ^= 1;
        p.normalize();
        p
    }

    /// Sums `x^e` over the given exponents. Repeated exponents cancel in pairs.
    pub fn from_exponents<I: IntoIterator<Item = usize>>(exponents: I) -> Self {
        let mut words = Vec::new();
        for e in exponents {
            let w = e / WORD_BITS;
            if words.len() <= w {
                words.resize(w + 1, 0);
            }
            words[w] ^= 1 << (e % WORD_BITS);
        }
        Self::from_words(words)
    }

    /// Builds a polynomial from a coefficient vector (index `i` is the
    /// coefficient of `x^i`; any nonzero byte counts as 1).
    pub fn from_bits(bits: &[u8]) -> Self {
        let mut words = vec![0u64; words_for(bits.len())];
        for (i, &b) in bits.iter().enumerate() {
            if b != 0 {
                words[i / WORD_BITS] |= 1 << (i % WORD_BITS);
            }
        }
        Self::from_words(words)
    }

    pub fn from_words(mut words: Vec<u64>) -> Self {
        trim(&mut words);
        Self { words }
    }

    fn normalize(&mut self) {
        trim(&mut self.words);
    }

    /// Packed coefficient words, least significant first, without trailing zero words.
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.words == [1]
    }

    /// Degree of the polynomial, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        degree_of(&self.words)
    }

    pub fn coeff(&self, i: usize) -> bool {
        self.words
            .get(i / WORD_BITS)
            .is_some_and(|w| (w >> (i % WORD_BITS)) & 1 == 1)
    }

    /// Number of nonzero coefficients.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Exponents with a nonzero coefficient, ascending.
    pub fn exponents(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i * WORD_BITS + b)
            })
        })
    }

    /// Coefficient vector of length `len`.
    ///
    /// # Panics
    ///
    /// If the polynomial has degree `len` or higher.
    pub fn to_bits(&self, len: usize) -> Vec<u8> {
        if let Some(d) = self.degree() {
            assert!(d < len, "degree {d} does not fit in {len} coefficients");
        }
        let mut bits = vec![0u8; len];
        for e in self.exponents() {
            bits[e] = 1;
        }
        bits
    }

    /// Value at `x = 1`, i.e. the parity of the weight.
    pub fn eval_at_one(&self) -> bool {
        self.weight() % 2 == 1
    }

    /// Coefficient-wise XOR.
    pub fn add(&self, other: &Self) -> Self {
        let (long, short) = if self.words.len() >= other.words.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut words = long.words.clone();
        for (d, s) in words.iter_mut().zip(&short.words) {
            *d ^= s;
        }
        Self::from_words(words)
    }

    /// Multiplication by `x^k`.
    pub fn shl(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut words = Vec::new();
        xor_shifted(&mut words, &self.words, k);
        Self::from_words(words)
    }

    /// Ordinary product in `GF(2)[x]`.
    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let (sparse, dense) = if self.weight() <= other.weight() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = vec![0u64; self.words.len() + other.words.len() + 1];
        for e in sparse.exponents() {
            xor_shifted(&mut acc, &dense.words, e);
        }
        Self::from_words(acc)
    }

    /// Residue modulo `x^n + 1`, i.e. exponents folded mod `n`.
    pub fn reduce_mod(&self, n: usize) -> Self {
        assert!(n > 0);
        let mut p = self.clone();
        while p.degree().is_some_and(|d| d >= n) {
            let high = p.shr(n);
            p.truncate(n);
            p = p.add(&high);
        }
        p
    }

    /// Product modulo `x^n + 1`.
    pub fn mul_mod(&self, other: &Self, n: usize) -> Result<Self> {
        check_block_length(n)?;
        Ok(self
            .reduce_mod(n)
            .mul(&other.reduce_mod(n))
            .reduce_mod(n))
    }

    /// Division with remainder: `self = q * divisor + r`, `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let mut rem = self.words.clone();
        let mut quo: Vec<u64> = Vec::new();
        loop {
            trim(&mut rem);
            let Some(rd) = degree_of(&rem) else { break };
            if rd < dd {
                break;
            }
            let s = rd - dd;
            xor_shifted(&mut rem, &divisor.words, s);
            if quo.len() <= s / WORD_BITS {
                quo.resize(s / WORD_BITS + 1, 0);
            }
            quo[s / WORD_BITS] |= 1 << (s % WORD_BITS);
        }
        Ok((Self::from_words(quo), Self::from_words(rem)))
    }

    /// Exact quotient; a nonzero remainder is an error.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(divisor)?;
        match r.degree() {
            None => Ok(q),
            Some(remainder_degree) => Err(Error::NotDivisible { remainder_degree }),
        }
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self> {
        self.div_rem(divisor).map(|(_, r)| r)
    }

    /// Greatest common divisor by the Euclidean algorithm; `gcd(p, 0) = p`.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::ZeroGcd);
        }
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a)
    }

    /// `x^deg(p) * p(1/x)`: the coefficient sequence reversed.
    pub fn reciprocal(&self) -> Self {
        match self.degree() {
            None => Self::zero(),
            Some(d) => Self::from_exponents(self.exponents().map(|e| d - e)),
        }
    }

    /// Division by `x^k`, dropping the low `k` coefficients.
    fn shr(&self, k: usize) -> Self {
        let word_shift = k / WORD_BITS;
        let bit_shift = k % WORD_BITS;
        if word_shift >= self.words.len() {
            return Self::zero();
        }
        let src = &self.words[word_shift..];
        let mut words = vec![0u64; src.len()];
        for i in 0..src.len() {
            words[i] = if bit_shift == 0 {
                src[i]
            } else {
                let hi = src.get(i + 1).map_or(0, |w| w << (WORD_BITS - bit_shift));
                (src[i] >> bit_shift) | hi
            };
        }
        Self::from_words(words)
    }

    /// Keeps only coefficients below `x^len`.
    fn truncate(&mut self, len: usize) {
        let keep = words_for(len);
        self.words.truncate(keep);
        if len % WORD_BITS != 0 {
            if let Some(last) = self.words.get_mut(keep - 1) {
                *last &= (1u64 << (len % WORD_BITS)) - 1;
            }
        }
        self.normalize();
    }
}

impl Add for &BinaryPolynomial {
    type Output = BinaryPolynomial;

    fn add(self, rhs: Self) -> BinaryPolynomial {
        BinaryPolynomial::add(self, rhs)
    }
}

impl AddAssign<&BinaryPolynomial> for BinaryPolynomial {
    fn add_assign(&mut self, rhs: &BinaryPolynomial) {
        if self.words.len() < rhs.words.len() {
            self.words.resize(rhs.words.len(), 0);
        }
        for (d, s) in self.words.iter_mut().zip(&rhs.words) {
            *d ^= s;
        }
        self.normalize();
    }
}

/// Comma-separated exponents in descending order, e.g. `6,5,3,0`. The zero
/// polynomial renders as the empty string.
impl fmt::Display for BinaryPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let exps: Vec<usize> = self.exponents().collect();
        for (i, e) in exps.iter().rev().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BinaryPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let exps: Vec<usize> = self.exponents().collect();
        for (i, e) in exps.iter().rev().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            match e {
                0 => f.write_str("1")?,
                1 => f.write_str("x")?,
                _ => write!(f, "x^{e}")?,
            }
        }
        Ok(())
    }
}

/// Parses the comma-separated exponent list written by `Display`. Exponents
/// must be distinct; order is not enforced.
impl FromStr for BinaryPolynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Self::zero());
        }
        let mut seen = std::collections::BTreeSet::new();
        for tok in s.split(',') {
            let tok = tok.trim();
            let e: usize = tok
                .parse()
                .map_err(|_| Error::invalid(format!("bad exponent {tok:?}")))?;
            if !seen.insert(e) {
                return Err(Error::invalid(format!("repeated exponent {e}")));
            }
        }
        Ok(Self::from_exponents(seen))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(exps: &[usize]) -> BinaryPolynomial {
        BinaryPolynomial::from_exponents(exps.iter().copied())
    }

    #[test]
    fn add_examples() {
        assert!(p(&[1, 0]).add(&p(&[1, 0])).is_zero());
        assert_eq!(p(&[5, 2]).add(&BinaryPolynomial::zero()), p(&[5, 2]));
        assert_eq!(p(&[2, 1]).add(&p(&[1, 0])), p(&[2, 0]));
    }

    #[test]
    fn zero_degree_is_sentinel() {
        assert_eq!(BinaryPolynomial::zero().degree(), None);
        assert_eq!(BinaryPolynomial::one().degree(), Some(0));
        assert_eq!(p(&[200, 3]).degree(), Some(200));
    }

    #[test]
    fn mul_mod_examples() {
        assert_eq!(p(&[6]).mul_mod(&p(&[3]), 7).unwrap(), p(&[2]));
        let q = p(&[100, 64, 63, 1]);
        assert_eq!(q.mul_mod(&BinaryPolynomial::one(), 127).unwrap(), q);
        let hamming = p(&[1, 2, 4]);
        assert_eq!(hamming.mul_mod(&hamming, 7).unwrap(), hamming);
    }

    #[test]
    fn mul_mod_rejects_bad_lengths() {
        let one = BinaryPolynomial::one();
        assert_eq!(one.mul_mod(&one, 1), Err(Error::InvalidBlockLength(1)));
        assert_eq!(one.mul_mod(&one, 8), Err(Error::InvalidBlockLength(8)));
    }

    #[test]
    fn gcd_examples() {
        let x7 = BinaryPolynomial::x_n_plus_one(7);
        assert_eq!(x7.gcd(&x7).unwrap(), x7);
        // 1 + x^3 + x^5 + x^6 vanishes at 1 and at the roots of 1 + x + x^3
        let g = p(&[6, 5, 3, 0]).gcd(&x7).unwrap();
        assert_eq!(g.degree(), Some(4));
        assert!(x7.div_exact(&g).is_ok());
        assert_eq!(p(&[3, 1]).gcd(&BinaryPolynomial::zero()).unwrap(), p(&[3, 1]));
        assert_eq!(
            BinaryPolynomial::zero().gcd(&BinaryPolynomial::zero()),
            Err(Error::ZeroGcd)
        );
    }

    #[test]
    fn div_exact_examples() {
        let x7 = BinaryPolynomial::x_n_plus_one(7);
        assert!(x7.div_exact(&x7).unwrap().is_one());
        assert_eq!(x7.div_exact(&p(&[3, 1, 0])).unwrap(), p(&[4, 2, 1, 0]));
        assert!(matches!(
            BinaryPolynomial::x_n_plus_one(3).div_exact(&p(&[2])),
            Err(Error::NotDivisible { .. })
        ));
        assert_eq!(x7.div_exact(&BinaryPolynomial::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn weight_and_reciprocal() {
        assert_eq!(BinaryPolynomial::zero().weight(), 0);
        assert_eq!(p(&[130, 64, 0]).weight(), 3);
        assert_eq!(p(&[3, 1, 0]).reciprocal(), p(&[3, 2, 0]));
    }

    #[test]
    fn text_rendering() {
        let q = p(&[126, 125, 7, 0]);
        assert_eq!(q.to_string(), "126,125,7,0");
        assert_eq!("126, 125,7,0".parse::<BinaryPolynomial>().unwrap(), q);
        assert_eq!(format!("{:?}", p(&[3, 1, 0])), "x^3 + x + 1");
        assert!("".parse::<BinaryPolynomial>().unwrap().is_zero());
        assert!("3,3".parse::<BinaryPolynomial>().is_err());
        assert!("3,-1".parse::<BinaryPolynomial>().is_err());
    }

    fn poly_below(bits: usize) -> impl Strategy<Value = BinaryPolynomial> {
        prop::collection::vec(any::<bool>(), bits).prop_map(|v| {
            BinaryPolynomial::from_exponents(
                v.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i),
            )
        })
    }

    fn modulus() -> impl Strategy<Value = usize> {
        prop::sample::select(vec![7usize, 15, 17, 127])
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn ring_laws_mod_xn_plus_one(
            n in modulus(),
            a in poly_below(140),
            b in poly_below(140),
            c in poly_below(140),
        ) {
            let ab = a.mul_mod(&b, n).unwrap();
            prop_assert_eq!(&ab, &b.mul_mod(&a, n).unwrap());
            prop_assert_eq!(
                ab.mul_mod(&c, n).unwrap(),
                a.mul_mod(&b.mul_mod(&c, n).unwrap(), n).unwrap()
            );
            prop_assert_eq!(
                a.mul_mod(&b.add(&c), n).unwrap(),
                ab.add(&a.mul_mod(&c, n).unwrap())
            );
        }

        #[test]
        fn gcd_divides_both(a in poly_below(150), b in poly_below(150)) {
            prop_assume!(!(a.is_zero() && b.is_zero()));
            let g = a.gcd(&b).unwrap();
            prop_assert!(a.div_exact(&g).is_ok());
            prop_assert!(b.div_exact(&g).is_ok());
        }

        #[test]
        fn division_inverts_product(a in poly_below(150), b in poly_below(90)) {
            prop_assume!(!b.is_zero());
            prop_assert_eq!(a.mul(&b).div_exact(&b).unwrap(), a.clone());
            let (q, r) = a.div_rem(&b).unwrap();
            prop_assert_eq!(q.mul(&b).add(&r), a);
            prop_assert!(r.degree() < b.degree());
        }

        #[test]
        fn weight_parity_is_additive(a in poly_below(200), b in poly_below(200)) {
            prop_assert_eq!(a.add(&b).weight() % 2, (a.weight() + b.weight()) % 2);
            prop_assert!(a.add(&a).is_zero());
        }

        #[test]
        fn display_round_trips(a in poly_below(200)) {
            prop_assert_eq!(a.to_string().parse::<BinaryPolynomial>().unwrap(), a);
        }
    }
}
