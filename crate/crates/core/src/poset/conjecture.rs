use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::QuotientPoset;
use crate::matroid::is_quotient;
use crate::order::IndexSet;
use crate::positroid::DecoratedPermutation;
use crate::shift::shift_left;

/// A cover whose necklaces are not componentwise nested.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContainmentViolation {
    pub lower: DecoratedPermutation,
    pub upper: DecoratedPermutation,
    /// First `j` with `I_j(lower) ⊄ I_j(upper)`.
    pub index: usize,
}

/// Checks `I_j(σ) ⊆ I_j(π)` for every cover `σ ⋖ π` and every `j`.
pub fn check_necklace_containment(poset: &QuotientPoset) -> Vec<ContainmentViolation> {
    let necklaces: Vec<_> = poset.elements().par_iter().map(DecoratedPermutation::necklace).collect();
    poset
        .covers()
        .iter()
        .filter_map(|&(lo, hi)| {
            let (a, b) = (&necklaces[lo], &necklaces[hi]);
            let j = (1..=poset.n()).find(|&j| !a.get(j).is_subset(b.get(j)))?;
            Some(ContainmentViolation { lower: poset.element(lo).clone(), upper: poset.element(hi).clone(), index: j })
        })
        .collect()
}

/// Every `A ⊆ [n]` with `shift_left(π, A) = σ`, ordered by size then bitmask.
pub fn shift_witnesses(sigma: &DecoratedPermutation, pi: &DecoratedPermutation) -> Vec<IndexSet> {
    let n = pi.n();
    (0..=n).flat_map(|size| IndexSet::k_subsets(n, size)).filter(|&a| shift_left(pi, a) == *sigma).collect()
}

/// A pair `σ = shift_left(π, A)` of adjacent rank that is not a cover.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonCoverShift {
    pub sigma: DecoratedPermutation,
    pub pi: DecoratedPermutation,
    pub witness: IndexSet,
    /// Some witness lies inside `{1, …, rank(π)}`.
    pub prefix_witness: bool,
}

/// Outcome of testing "σ ⋖ π iff σ is a left shift of π".
///
/// The `prefix` fields restrict witnesses to `A ⊆ {1, …, rank(π)}`; the others allow any
/// `A ⊆ [n]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftConjectureReport {
    pub n: usize,
    pub covers_checked: usize,
    pub covers_with_witness: usize,
    pub covers_with_prefix_witness: usize,
    pub covers_without_witness: Vec<(DecoratedPermutation, DecoratedPermutation)>,
    pub covers_without_prefix_witness: Vec<(DecoratedPermutation, DecoratedPermutation)>,
    pub noncover_shifts: Vec<NonCoverShift>,
}

impl ShiftConjectureReport {
    /// Every cover has a witness and no non-cover is a shift.
    pub fn holds(&self) -> bool {
        self.covers_without_witness.is_empty() && self.noncover_shifts.is_empty()
    }

    pub fn holds_for_prefix(&self) -> bool {
        self.covers_without_prefix_witness.is_empty() && !self.noncover_shifts.iter().any(|s| s.prefix_witness)
    }
}

struct ShiftHit {
    witness: IndexSet,
    prefix: bool,
}

fn left_shifts(pi: &DecoratedPermutation) -> HashMap<DecoratedPermutation, ShiftHit> {
    let n = pi.n();
    let prefix = IndexSet::full(pi.rank());
    let mut hits: HashMap<DecoratedPermutation, ShiftHit> = HashMap::new();
    for size in 0..=n {
        for a in IndexSet::k_subsets(n, size) {
            let sigma = shift_left(pi, a);
            let in_prefix = a.is_subset(prefix);
            hits.entry(sigma)
                .and_modify(|h| h.prefix |= in_prefix)
                .or_insert(ShiftHit { witness: a, prefix: in_prefix });
        }
    }
    hits
}

pub fn check_shift_conjecture(poset: &QuotientPoset) -> ShiftConjectureReport {
    struct PerUpper {
        with: usize,
        with_prefix: usize,
        without: Vec<usize>,
        without_prefix: Vec<usize>,
        noncover: Vec<NonCoverShift>,
    }
    let per: Vec<PerUpper> = (0..poset.len())
        .into_par_iter()
        .map(|hi| {
            let pi = poset.element(hi);
            let hits = left_shifts(pi);
            let mut out =
                PerUpper { with: 0, with_prefix: 0, without: vec![], without_prefix: vec![], noncover: vec![] };
            for &lo in poset.lower_covers(hi) {
                match hits.get(poset.element(lo)) {
                    Some(h) => {
                        out.with += 1;
                        if h.prefix {
                            out.with_prefix += 1;
                        } else {
                            out.without_prefix.push(lo);
                        }
                    }
                    None => {
                        out.without.push(lo);
                        out.without_prefix.push(lo);
                    }
                }
            }
            let mut noncover: Vec<NonCoverShift> = hits
                .into_iter()
                .filter(|(sigma, _)| sigma.rank() + 1 == pi.rank())
                .filter(|(sigma, _)| !poset.is_cover(poset.index_of(sigma).expect("element of D_n"), hi))
                .map(|(sigma, h)| NonCoverShift { sigma, pi: pi.clone(), witness: h.witness, prefix_witness: h.prefix })
                .collect();
            noncover.sort_by(|a, b| a.sigma.cmp(&b.sigma));
            out.noncover = noncover;
            out
        })
        .collect();

    let pair = |lo: usize, hi: usize| (poset.element(lo).clone(), poset.element(hi).clone());
    let mut report = ShiftConjectureReport {
        n: poset.n(),
        covers_checked: poset.covers().len(),
        covers_with_witness: 0,
        covers_with_prefix_witness: 0,
        covers_without_witness: vec![],
        covers_without_prefix_witness: vec![],
        noncover_shifts: vec![],
    };
    for (hi, p) in per.into_iter().enumerate() {
        report.covers_with_witness += p.with;
        report.covers_with_prefix_witness += p.with_prefix;
        report.covers_without_witness.extend(p.without.into_iter().map(|lo| pair(lo, hi)));
        report.covers_without_prefix_witness.extend(p.without_prefix.into_iter().map(|lo| pair(lo, hi)));
        report.noncover_shifts.extend(p.noncover);
    }
    report
}

/// Direct quotient relation against the closure of covers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureReport {
    pub n: usize,
    /// Pairs with `rank(σ) < rank(π)` and `P_σ` a quotient of `P_π`.
    pub direct_pairs: usize,
    /// Strict pairs of the poset order.
    pub closure_pairs: usize,
    pub direct_not_in_closure: Vec<(DecoratedPermutation, DecoratedPermutation)>,
    pub closure_not_in_direct: Vec<(DecoratedPermutation, DecoratedPermutation)>,
}

impl ClosureReport {
    pub fn agrees(&self) -> bool {
        self.direct_not_in_closure.is_empty() && self.closure_not_in_direct.is_empty()
    }
}

pub fn closure_vs_direct(poset: &QuotientPoset) -> ClosureReport {
    let positroids = poset.positroids();
    let per: Vec<(usize, Vec<usize>, Vec<usize>)> = (0..poset.len())
        .into_par_iter()
        .map(|hi| {
            let mut direct = 0;
            let mut direct_only = vec![];
            let mut closure_only = vec![];
            for lo in 0..poset.len() {
                let strictly_lower_rank = poset.rank(lo) < poset.rank(hi);
                let d = strictly_lower_rank && is_quotient(&positroids[lo], &positroids[hi]).expect("same ground set");
                let c = lo != hi && poset.leq(lo, hi);
                direct += usize::from(d);
                match (d, c) {
                    (true, false) => direct_only.push(lo),
                    (false, true) => closure_only.push(lo),
                    _ => {}
                }
            }
            (direct, direct_only, closure_only)
        })
        .collect();
    let pair = |lo: usize, hi: usize| (poset.element(lo).clone(), poset.element(hi).clone());
    let mut report = ClosureReport {
        n: poset.n(),
        direct_pairs: 0,
        closure_pairs: poset.strict_relations().len(),
        direct_not_in_closure: vec![],
        closure_not_in_direct: vec![],
    };
    for (hi, (direct, d_only, c_only)) in per.into_iter().enumerate() {
        report.direct_pairs += direct;
        report.direct_not_in_closure.extend(d_only.into_iter().map(|lo| pair(lo, hi)));
        report.closure_not_in_direct.extend(c_only.into_iter().map(|lo| pair(lo, hi)));
    }
    report
}
