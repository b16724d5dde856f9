//! Quotients of matroids and the flags they form.

use serde::{Deserialize, Serialize};

use super::{Matroid, MatroidError};
use crate::order::IndexSet;

fn same_ground(m: &Matroid, n: &Matroid) -> Result<(), MatroidError> {
    if m.ground_size() != n.ground_size() {
        return Err(MatroidError::GroundSetMismatch { left: m.ground_size(), right: n.ground_size() });
    }
    Ok(())
}

/// `lower` is a quotient of `upper` when every circuit of `upper` is a union of circuits of
/// `lower`.
///
/// For each circuit `C` of `upper` this takes the union of the circuits of `lower` lying
/// inside `C` and compares it with `C`.
pub fn is_quotient(lower: &Matroid, upper: &Matroid) -> Result<bool, MatroidError> {
    same_ground(lower, upper)?;
    let cover = lower.circuit_cover();
    Ok(upper.circuits().iter().all(|c| cover[c.bits() as usize] == c.bits()))
}

/// Circuits of `upper` that are not a union of circuits of `lower`; empty exactly for
/// quotients.
pub fn uncovered_circuits(lower: &Matroid, upper: &Matroid) -> Result<Vec<IndexSet>, MatroidError> {
    same_ground(lower, upper)?;
    let cover = lower.circuit_cover();
    Ok(upper.circuits().iter().copied().filter(|c| cover[c.bits() as usize] != c.bits()).collect())
}

/// The rank criterion: `r_upper(B) - r_upper(A) >= r_lower(B) - r_lower(A)` for all `A ⊆ B`.
pub fn is_quotient_by_rank(lower: &Matroid, upper: &Matroid) -> Result<bool, MatroidError> {
    same_ground(lower, upper)?;
    for b in IndexSet::all_subsets(lower.ground_size()) {
        let (ub, lb) = (upper.rank_unchecked(b) as i64, lower.rank_unchecked(b) as i64);
        for a in b.subsets() {
            if ub - (upper.rank_unchecked(a) as i64) < lb - (lower.rank_unchecked(a) as i64) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A nested pair of bases `lower ⊂ upper`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Flag {
    pub lower: IndexSet,
    pub upper: IndexSet,
}

/// All flags `B_lower ⊂ B_upper` with `B_lower` a basis of `lower` and `B_upper` a basis of
/// `upper`, sorted by lower then upper basis.
pub fn flags(lower: &Matroid, upper: &Matroid) -> Result<Vec<Flag>, MatroidError> {
    if lower.rank() >= upper.rank() {
        same_ground(lower, upper)?;
        return Err(MatroidError::RankNotIncreasing { lower: lower.rank(), upper: upper.rank() });
    }
    if !is_quotient(lower, upper)? {
        return Err(MatroidError::NotAQuotient);
    }
    let mut out = Vec::new();
    for &b in lower.bases() {
        for &c in upper.bases() {
            if b.is_proper_subset(c) {
                out.push(Flag { lower: b, upper: c });
            }
        }
    }
    Ok(out)
}
