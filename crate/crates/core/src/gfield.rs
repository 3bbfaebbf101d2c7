//! Arithmetic in the splitting field GF(2^m) of `x^n + 1`, used to expand
//! minimal polynomials of cyclotomic cosets.

use crate::error::{Error, Result};
use crate::gf2poly::{check_block_length, BinaryPolynomial};

/// Largest extension degree the context will build.
pub const MAX_EXTENSION_DEGREE: usize = 31;

/// An element of GF(2^m), stored as its packed polynomial representative of
/// degree below m.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: Self = Self(0);
    pub const ONE: Self = Self(1);

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn as_polynomial(self) -> BinaryPolynomial {
        BinaryPolynomial::from_words(vec![u64::from(self.0)])
    }
}

impl std::ops::Add for FieldElement {
    type Output = Self;

    // characteristic 2: addition is XOR
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: Self) -> Self {
        Self(self.0 ^ rhs.0)
    }
}

/// GF(2^m) together with a primitive n-th root of unity.
#[derive(Clone, Debug)]
pub struct FieldContext {
    n: usize,
    m: usize,
    modulus: u64,
    alpha: FieldElement,
}

/// Multiplicative order of 2 modulo odd `n`.
pub fn order_of_two(n: usize) -> usize {
    let mut m = 1;
    let mut e = 2 % n;
    while e != 1 {
        e = (2 * e) % n;
        m += 1;
    }
    m
}

fn prime_factors(mut x: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= x {
        if x % p == 0 {
            out.push(p);
            while x % p == 0 {
                x /= p;
            }
        }
        p += 1;
    }
    if x > 1 {
        out.push(x);
    }
    out
}

fn poly_degree(p: u64) -> u32 {
    63 - p.leading_zeros()
}

fn poly_rem(mut a: u64, b: u64) -> u64 {
    let db = poly_degree(b);
    while a != 0 && poly_degree(a) >= db {
        a ^= b << (poly_degree(a) - db);
    }
    a
}

/// Irreducibility by trial division with every polynomial of degree up to m/2.
fn is_irreducible(f: u64) -> bool {
    let m = poly_degree(f);
    (1..=m / 2).all(|d| ((1u64 << d)..(1u64 << (d + 1))).all(|g| poly_rem(f, g) != 0))
}

impl FieldContext {
    /// Builds GF(2^m) for `m = ord_n(2)`, using the lowest irreducible modulus
    /// of degree m, and fixes `alpha = g^((2^m - 1)/n)` for the first
    /// generator `g` of the multiplicative group.
    pub fn new(n: usize) -> Result<Self> {
        check_block_length(n)?;
        let m = order_of_two(n);
        if m > MAX_EXTENSION_DEGREE {
            return Err(Error::FieldTooLarge(m));
        }
        let modulus = ((1u64 << m) + 1..1u64 << (m + 1))
            .step_by(2)
            .find(|&f| is_irreducible(f))
            .expect("an irreducible polynomial exists in every degree");
        let mut ctx = Self {
            n,
            m,
            modulus,
            alpha: FieldElement::ONE,
        };
        let group_order = (1u64 << m) - 1;
        let group_primes = prime_factors(group_order);
        let generator = (2..=group_order)
            .map(|c| FieldElement(c as u32))
            .find(|&c| {
                group_primes
                    .iter()
                    .all(|&p| ctx.pow(c, group_order / p) != FieldElement::ONE)
            })
            .expect("the multiplicative group of a finite field is cyclic");
        ctx.alpha = ctx.pow(generator, group_order / n as u64);
        debug_assert_eq!(ctx.pow(ctx.alpha, n as u64), FieldElement::ONE);
        debug_assert!(prime_factors(n as u64)
            .iter()
            .all(|&p| ctx.pow(ctx.alpha, n as u64 / p) != FieldElement::ONE));
        Ok(ctx)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Extension degree.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn modulus(&self) -> BinaryPolynomial {
        BinaryPolynomial::from_words(vec![self.modulus])
    }

    /// The fixed primitive n-th root of unity.
    pub fn alpha(&self) -> FieldElement {
        self.alpha
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let mut acc = 0u64;
        let mut x = u64::from(a.0);
        let mut y = b.0;
        while y != 0 {
            if y & 1 == 1 {
                acc ^= x;
            }
            y >>= 1;
            x <<= 1;
        }
        FieldElement(poly_rem(acc, self.modulus) as u32)
    }

    pub fn pow(&self, base: FieldElement, mut e: u64) -> FieldElement {
        let mut acc = FieldElement::ONE;
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    /// `alpha^i`, exponent taken mod n.
    pub fn alpha_pow(&self, i: usize) -> FieldElement {
        self.pow(self.alpha, (i % self.n) as u64)
    }

    /// `prod over i in C_s of (x - alpha^i)`; the coefficients always land in GF(2).
    pub fn minimal_polynomial(&self, s: usize) -> BinaryPolynomial {
        let mut coeffs = vec![FieldElement::ONE];
        let mut e = s % self.n;
        loop {
            let root = self.alpha_pow(e);
            let mut next = vec![FieldElement::ZERO; coeffs.len() + 1];
            for (j, &c) in coeffs.iter().enumerate() {
                next[j + 1] = next[j + 1] + c;
                next[j] = next[j] + self.mul(root, c);
            }
            coeffs = next;
            e = (2 * e) % self.n;
            if e == s % self.n {
                break;
            }
        }
        assert!(
            coeffs.iter().all(|c| c.0 <= 1),
            "minimal polynomial has coefficients outside GF(2)"
        );
        BinaryPolynomial::from_exponents(
            coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| **c == FieldElement::ONE)
                .map(|(j, _)| j),
        )
    }
}
