use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{enumerate_decorated, Limits, PosetError};
use crate::matroid::{is_quotient, Matroid};
use crate::order::IndexSet;
use crate::positroid::DecoratedPermutation;
use crate::shift::shift_left;

/// One row of the uniform-quotient census.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRow {
    pub n: usize,
    pub k: usize,
    /// Positroids of rank `k - 1` that are quotients of `U_{k,n}`.
    pub total: usize,
    /// Those obtained as a left shift of `π_{k,n}` with at most `k - 1` frozen values.
    pub characterized: usize,
    /// `total - characterized`.
    pub missing: usize,
    /// The covers that are not left shifts, in canonical order.
    pub witnesses: Vec<DecoratedPermutation>,
    /// Left shifts of `π_{k,n}` that are not covers (expected to be empty).
    pub shift_exceptions: Vec<DecoratedPermutation>,
}

/// `{ shift_left(π_{k,n}, A) : |A| <= k - 1 }` with the smallest freezing set reaching each.
pub fn shifted_uniform_family(k: usize, n: usize) -> Vec<(DecoratedPermutation, IndexSet)> {
    let pi = DecoratedPermutation::uniform(k, n);
    let mut seen = std::collections::BTreeMap::new();
    for size in 0..k.min(n + 1) {
        for a in IndexSet::k_subsets(n, size) {
            seen.entry(shift_left(&pi, a)).or_insert(a);
        }
    }
    seen.into_iter().collect()
}

/// Counts the covers of `U_{k,n}` in the quotient poset and how many are left shifts.
pub fn uniform_quotient_census(k: usize, n: usize, limits: &Limits) -> Result<CensusRow, PosetError> {
    limits.check_long_running(n)?;
    if k == 0 || k > n {
        return Err(PosetError::RankOutOfRange { k, n });
    }
    let uniform = Matroid::uniform(k, n)?;
    let candidates = enumerate_decorated(n, Some(k - 1), limits.n_cap)?;
    let covers: Vec<DecoratedPermutation> = candidates
        .into_par_iter()
        .filter(|sigma| is_quotient(&sigma.positroid(), &uniform).expect("same ground set"))
        .collect();
    let shifts: BTreeSet<DecoratedPermutation> = shifted_uniform_family(k, n).into_iter().map(|(s, _)| s).collect();
    let cover_set: BTreeSet<&DecoratedPermutation> = covers.iter().collect();
    let witnesses: Vec<DecoratedPermutation> = covers.iter().filter(|s| !shifts.contains(*s)).cloned().collect();
    let shift_exceptions: Vec<DecoratedPermutation> =
        shifts.iter().filter(|s| !cover_set.contains(s)).cloned().collect();
    let total = covers.len();
    let characterized = total - witnesses.len();
    Ok(CensusRow { n, k, total, characterized, missing: witnesses.len(), witnesses, shift_exceptions })
}
