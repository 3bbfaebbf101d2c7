use itertools::Itertools;

use crate::codes::{CodeContext, CyclicCode};
use crate::error::{Error, Result};
use crate::gf2poly::BinaryPolynomial;

/// Result of an exhaustive idempotent search.
#[derive(Clone, Debug)]
pub struct SearchOutcome {
    /// Highest-rate code meeting the distance target, if any.
    pub best: Option<CyclicCode>,
    /// Coset representatives whose reversed cosets built the winner.
    pub selection: Option<Vec<usize>>,
    /// Number of combinations examined.
    pub examined: u64,
}

/// Number of `r`-subsets of a `pool`-element set.
pub fn combination_count(pool: usize, r: usize) -> u64 {
    if r > pool {
        return 0;
    }
    let r = r.min(pool - r);
    (0..r).fold(1u64, |acc, i| acc * (pool - i) as u64 / (i + 1) as u64)
}

/// `1 + sum over s in selection of a_s(x)`, with `a_s` the reversed coset
/// polynomial of representative `s`.
pub fn candidate_dual_idempotent(ctx: &CodeContext, selection: &[usize]) -> Result<BinaryPolynomial> {
    let mut idual = BinaryPolynomial::one();
    for &s in selection {
        idual += &ctx.cosets().reversed_coset_polynomial(s)?;
    }
    Ok(idual)
}

/// Exhaustive search over every `coset_count`-combination of nonzero coset
/// representatives, in lexicographic order. Keeps the candidate of highest
/// rate `k/n` whose BCH bound reaches `min_distance`; a later candidate of
/// equal rate replaces the current one.
pub fn search_mdpc(ctx: &CodeContext, min_distance: usize, coset_count: usize) -> Result<SearchOutcome> {
    let pool = ctx.cosets().nonzero_representatives();
    if coset_count == 0 || coset_count > pool.len() {
        return Err(Error::invalid(format!(
            "coset count {coset_count} outside 1..={}",
            pool.len()
        )));
    }
    if min_distance < 2 {
        return Err(Error::invalid("target distance must be at least 2"));
    }
    let mut best: Option<CyclicCode> = None;
    let mut selection = None;
    let mut examined = 0u64;
    for combo in pool.iter().copied().combinations(coset_count) {
        examined += 1;
        let idual = candidate_dual_idempotent(ctx, &combo)?;
        let code = match CyclicCode::from_dual_idempotent(&idual, ctx) {
            Ok(code) => code,
            Err(Error::DegenerateCode { .. }) => continue,
            Err(e) => return Err(e),
        };
        let beats = best.as_ref().is_none_or(|b| code.k() >= b.k());
        if code.bch_bound() >= min_distance && beats {
            best = Some(code);
            selection = Some(combo);
        }
    }
    Ok(SearchOutcome {
        best,
        selection,
        examined,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combination_counts() {
        assert_eq!(combination_count(18, 5), 8568);
        assert_eq!(combination_count(2, 1), 2);
        assert_eq!(combination_count(3, 4), 0);
        assert_eq!(combination_count(10, 0), 1);
    }

    #[test]
    fn hamming_search() {
        let ctx = CodeContext::new(7).unwrap();
        let out = search_mdpc(&ctx, 3, 1).unwrap();
        assert_eq!(out.examined, 2);
        let best = out.best.unwrap();
        assert_eq!((best.n(), best.k()), (7, 4));
        assert!(best.bch_bound() >= 3);
        // both selections give a (7,4) code; the later one wins the tie
        assert_eq!(out.selection, Some(vec![3]));
    }

    #[test]
    fn unreachable_distance_is_not_found() {
        let ctx = CodeContext::new(7).unwrap();
        let out = search_mdpc(&ctx, 8, 1).unwrap();
        assert!(out.best.is_none());
        assert_eq!(out.examined, 2);
    }

    #[test]
    fn rejects_bad_arguments() {
        let ctx = CodeContext::new(7).unwrap();
        assert!(search_mdpc(&ctx, 3, 0).is_err());
        assert!(search_mdpc(&ctx, 3, 3).is_err());
        assert!(search_mdpc(&ctx, 1, 1).is_err());
    }

    #[test]
    fn examined_matches_binomial() {
        for (n, r) in [(15, 2), (17, 1), (23, 1), (31, 3), (127, 2)] {
            let ctx = CodeContext::new(n).unwrap();
            let pool = ctx.cosets().nonzero_representatives().len();
            let out = search_mdpc(&ctx, 2, r).unwrap();
            assert_eq!(out.examined, combination_count(pool, r));
        }
    }

    #[test]
    fn candidate_is_dual_of_coset_idempotent() {
        let ctx = CodeContext::new(15).unwrap();
        let t = ctx.cosets();
        let sel = [1, 5];
        let i = t.idempotent_from_cosets(&sel).unwrap();
        assert_eq!(
            candidate_dual_idempotent(&ctx, &sel).unwrap(),
            crate::cyclotomic::dual_idempotent(&i, 15).unwrap()
        );
    }
}
