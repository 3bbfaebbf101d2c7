use crate::cyclotomic::{is_idempotent, CosetTable};
use crate::error::{Error, Result};
use crate::gf2poly::BinaryPolynomial;
use crate::gfield::FieldContext;

/// Everything about block length n that code construction needs: the coset
/// partition, the splitting field and the minimal polynomial of each coset.
#[derive(Clone, Debug)]
pub struct CodeContext {
    cosets: CosetTable,
    field: FieldContext,
    minimal_polynomials: Vec<BinaryPolynomial>,
}

impl CodeContext {
    pub fn new(n: usize) -> Result<Self> {
        let cosets = CosetTable::new(n)?;
        let field = FieldContext::new(n)?;
        Ok(Self::with_parts(cosets, field))
    }

    fn with_parts(cosets: CosetTable, field: FieldContext) -> Self {
        let minimal_polynomials = cosets
            .representatives()
            .iter()
            .map(|&s| field.minimal_polynomial(s))
            .collect();
        Self {
            cosets,
            field,
            minimal_polynomials,
        }
    }

    pub fn n(&self) -> usize {
        self.cosets.n()
    }

    pub fn cosets(&self) -> &CosetTable {
        &self.cosets
    }

    pub fn field(&self) -> &FieldContext {
        &self.field
    }

    /// Minimal polynomial of the coset with representative `s`.
    pub fn minimal_polynomial(&self, s: usize) -> Result<&BinaryPolynomial> {
        let idx = self
            .cosets
            .representatives()
            .binary_search(&s)
            .map_err(|_| Error::UnknownRepresentative(s))?;
        Ok(&self.minimal_polynomials[idx])
    }

    /// Exponents `i` with `g(alpha^i) = 0`, ascending. A coset belongs to the
    /// zero set exactly when its minimal polynomial divides `g`.
    pub fn zero_set(&self, g: &BinaryPolynomial) -> Vec<usize> {
        let mut zeros: Vec<usize> = self
            .cosets
            .cosets()
            .iter()
            .zip(&self.minimal_polynomials)
            .filter(|(_, mp)| g.rem(mp).is_ok_and(|r| r.is_zero()))
            .flat_map(|(c, _)| c.iter().copied())
            .collect();
        zeros.sort_unstable();
        zeros
    }

    /// One plus the longest run of cyclically consecutive exponents in the
    /// zero set of `g`.
    pub fn bch_bound(&self, g: &BinaryPolynomial) -> usize {
        longest_cyclic_run(&self.zero_set(g), self.n()) + 1
    }
}

pub(crate) fn longest_cyclic_run(sorted: &[usize], n: usize) -> usize {
    let mut member = vec![false; n];
    for &e in sorted {
        member[e] = true;
    }
    let Some(gap) = member.iter().position(|&z| !z) else {
        return n;
    };
    let mut best = 0;
    let mut run = 0;
    for step in 1..=n {
        if member[(gap + step) % n] {
            run += 1;
            best = best.max(run);
        } else {
            run = 0;
        }
    }
    best
}

/// BCH bound of `code` relative to the primitive root fixed by `field`.
pub fn bch_bound(code: &CyclicCode, field: &FieldContext) -> Result<usize> {
    if field.n() != code.n() {
        return Err(Error::LengthMismatch {
            expected: code.n(),
            actual: field.n(),
        });
    }
    let ctx = CodeContext::with_parts(CosetTable::new(code.n())?, field.clone());
    Ok(ctx.bch_bound(code.generator()))
}

/// A binary cyclic code of length n, described by the dual idempotent whose
/// cyclic shifts form its parity checks.
///
/// `generator * check = x^n + 1`. The reciprocal of `check` generates the
/// dual code; it equals `gcd(idual, x^n + 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicCode {
    n: usize,
    k: usize,
    generator: BinaryPolynomial,
    check: BinaryPolynomial,
    idual: BinaryPolynomial,
    bch_bound: usize,
    dual_min_weight: Option<usize>,
}

impl CyclicCode {
    pub fn from_dual_idempotent(idual: &BinaryPolynomial, ctx: &CodeContext) -> Result<Self> {
        let n = ctx.n();
        let idual = idual.reduce_mod(n);
        if !is_idempotent(&idual, n)? {
            return Err(Error::NotIdempotent(n));
        }
        let xn1 = BinaryPolynomial::x_n_plus_one(n);
        let dual_generator = idual.gcd(&xn1)?;
        let k = dual_generator.degree().unwrap_or(0);
        if k == 0 || k >= n {
            return Err(Error::DegenerateCode { n, k });
        }
        let check = dual_generator.reciprocal();
        let generator = xn1.div_exact(&check)?;
        let bch_bound = ctx.bch_bound(&generator);
        Ok(Self {
            n,
            k,
            generator,
            check,
            idual,
            bch_bound,
            dual_min_weight: None,
        })
    }

    /// Attaches a known dual minimum distance (from tables or enumeration).
    pub fn with_dual_min_weight(mut self, weight: usize) -> Self {
        self.dual_min_weight = Some(weight);
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn rate(&self) -> f64 {
        self.k as f64 / self.n as f64
    }

    pub fn generator(&self) -> &BinaryPolynomial {
        &self.generator
    }

    /// Parity-check polynomial `h(x) = (x^n + 1) / g(x)`, degree k.
    pub fn check_polynomial(&self) -> &BinaryPolynomial {
        &self.check
    }

    /// Generator polynomial of the dual code, `gcd(idual, x^n + 1)`.
    pub fn dual_generator(&self) -> BinaryPolynomial {
        self.check.reciprocal()
    }

    pub fn idual(&self) -> &BinaryPolynomial {
        &self.idual
    }

    pub fn bch_bound(&self) -> usize {
        self.bch_bound
    }

    pub fn dual_min_weight(&self) -> Option<usize> {
        self.dual_min_weight
    }

    /// `|C_1|`, the number of distinct Frobenius powers acting on the code.
    pub fn coset1_size(&self) -> usize {
        crate::gfield::order_of_two(self.n)
    }

    /// Whether the all-ones word is a codeword (`h(1) = 0`).
    pub fn contains_all_ones(&self) -> bool {
        !self.check.eval_at_one()
    }

    /// Non-systematic encoding `c(x) = u(x) g(x)`.
    pub fn encode(&self, info: &[u8]) -> Result<Vec<u8>> {
        if info.len() != self.k {
            return Err(Error::LengthMismatch {
                expected: self.k,
                actual: info.len(),
            });
        }
        Ok(self.encode_poly(&BinaryPolynomial::from_bits(info)))
    }

    pub(crate) fn encode_poly(&self, info: &BinaryPolynomial) -> Vec<u8> {
        info.mul(&self.generator).to_bits(self.n)
    }

    /// Membership test against the full dual: `c(x) h(x) = 0 mod x^n + 1`.
    pub fn contains(&self, word: &[u8]) -> bool {
        word.len() == self.n
            && BinaryPolynomial::from_bits(word)
                .mul_mod(&self.check, self.n)
                .is_ok_and(|p| p.is_zero())
    }

    /// Membership test for the dual code: divisibility by the dual generator.
    pub fn dual_contains(&self, word: &[u8]) -> bool {
        word.len() == self.n
            && BinaryPolynomial::from_bits(word)
                .rem(&self.dual_generator())
                .is_ok_and(|r| r.is_zero())
    }
}
