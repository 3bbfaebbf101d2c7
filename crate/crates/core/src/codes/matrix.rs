use crate::codes::CyclicCode;
use crate::error::{Error, Result};
use crate::gf2poly::BinaryPolynomial;

/// A redundant parity-check matrix: `m` binary rows of length `n` whose span
/// must be the full dual code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityCheckMatrix {
    n: usize,
    rows: Vec<BinaryPolynomial>,
    rank: usize,
    guard_overridden: bool,
}

/// Rank over GF(2) of a set of packed rows.
pub fn gf2_rank(rows: &[BinaryPolynomial]) -> usize {
    // basis[d] holds a reduced row whose leading term is x^d
    let mut basis: Vec<Option<BinaryPolynomial>> = Vec::new();
    let mut rank = 0;
    for row in rows {
        let mut r = row.clone();
        while let Some(d) = r.degree() {
            if basis.len() <= d {
                basis.resize(d + 1, None);
            }
            match &basis[d] {
                Some(b) => r = r.add(b),
                None => {
                    basis[d] = Some(r);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

impl ParityCheckMatrix {
    /// `m` cyclic shifts of the dual idempotent, subject to `m <= n/2`.
    pub fn from_code(code: &CyclicCode, m: usize) -> Result<Self> {
        if 2 * m > code.n() {
            return Err(Error::DensityGuard {
                rows: m,
                n: code.n(),
            });
        }
        Self::build(code, m, false)
    }

    /// Like [`ParityCheckMatrix::from_code`] but allows up to `n` rows; the
    /// result records that the density guard was bypassed.
    pub fn from_code_unguarded(code: &CyclicCode, m: usize) -> Result<Self> {
        if m > code.n() {
            return Err(Error::invalid(format!(
                "{m} rows requested, at most {} distinct shifts exist",
                code.n()
            )));
        }
        Self::build(code, m, 2 * m > code.n())
    }

    fn build(code: &CyclicCode, m: usize, guard_overridden: bool) -> Result<Self> {
        if m == 0 {
            return Err(Error::invalid("parity-check matrix needs at least one row"));
        }
        let n = code.n();
        let rows: Vec<BinaryPolynomial> = (0..m)
            .map(|t| code.idual().shl(t).reduce_mod(n))
            .collect();
        let mut matrix = Self::from_rows(n, rows, n - code.k())?;
        matrix.guard_overridden = guard_overridden;
        Ok(matrix)
    }

    /// Arbitrary user-supplied rows, e.g. shifted minimum-weight dual
    /// codewords of a code not built from an idempotent. Fails unless the
    /// rows reach `required_rank`.
    pub fn from_rows(n: usize, rows: Vec<BinaryPolynomial>, required_rank: usize) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.degree().is_some_and(|d| d >= n)) {
            return Err(Error::invalid(format!(
                "row of degree {:?} does not fit length {n}",
                bad.degree()
            )));
        }
        let rank = gf2_rank(&rows);
        if rank < required_rank {
            return Err(Error::RankDeficient {
                rank,
                required: required_rank,
            });
        }
        Ok(Self {
            n,
            rows,
            rank,
            guard_overridden: false,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of rows.
    pub fn m(&self) -> usize {
        self.rows.len()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rows(&self) -> &[BinaryPolynomial] {
        &self.rows
    }

    /// True when the matrix was built with more than n/2 rows.
    pub fn guard_overridden(&self) -> bool {
        self.guard_overridden
    }

    /// Total number of ones, i.e. Tanner graph edges.
    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(BinaryPolynomial::weight).sum()
    }

    pub fn syndrome_is_zero(&self, word: &[u8]) -> bool {
        let w = BinaryPolynomial::from_bits(word);
        self.rows.iter().all(|r| {
            r.words()
                .iter()
                .zip(w.words())
                .map(|(a, b)| (a & b).count_ones())
                .sum::<u32>()
                % 2
                == 0
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::CodeContext;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn code(n: usize, exps: &[usize]) -> CyclicCode {
        let ctx = CodeContext::new(n).unwrap();
        CyclicCode::from_dual_idempotent(&BinaryPolynomial::from_exponents(exps.iter().copied()), &ctx)
            .unwrap()
    }

    #[test]
    fn hamming_matrix() {
        let c = code(7, &[6, 5, 3, 0]);
        let h = ParityCheckMatrix::from_code(&c, 3).unwrap();
        assert_eq!(h.rank(), 3);
        assert_eq!(h.rows()[0], *c.idual());
        assert_eq!(h.edge_count(), 12);
        assert!(!h.guard_overridden());
        assert!(matches!(
            ParityCheckMatrix::from_code(&c, 4),
            Err(Error::DensityGuard { rows: 4, n: 7 })
        ));
        let full = ParityCheckMatrix::from_code_unguarded(&c, 7).unwrap();
        assert_eq!(full.rank(), 3);
        assert!(full.guard_overridden());
    }

    #[test]
    fn rank_deficiency_names_rank() {
        let c = code(7, &[6, 5, 3, 0]);
        assert!(matches!(
            ParityCheckMatrix::from_code(&c, 1),
            Err(Error::RankDeficient { rank: 1, required: 3 })
        ));
    }

    #[test]
    fn rank_by_elimination() {
        let rows: Vec<BinaryPolynomial> = [[0usize, 1], [1, 2], [0, 2]]
            .iter()
            .map(|e| BinaryPolynomial::from_exponents(e.iter().copied()))
            .collect();
        assert_eq!(gf2_rank(&rows), 2);
        assert_eq!(gf2_rank(&[]), 0);
    }

    #[test]
    fn syndromes_of_codewords_vanish() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let c = code(7, &[6, 5, 3, 0]);
        let h = ParityCheckMatrix::from_code(&c, 3).unwrap();
        for _ in 0..100 {
            let u: Vec<u8> = (0..4).map(|_| rng.random_range(0..2)).collect();
            let w = c.encode(&u).unwrap();
            assert!(h.syndrome_is_zero(&w));
            let mut bad = w.clone();
            bad[rng.random_range(0..7)] ^= 1;
            assert!(!h.syndrome_is_zero(&bad));
        }
    }
}
