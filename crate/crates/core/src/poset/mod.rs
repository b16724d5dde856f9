//! The poset of positroid quotients on `[n]`.
//!
//! Elements are all decorated permutations of `[n]`, ranked by weak excedance count. A cover
//! `σ ⋖ π` joins adjacent ranks whenever `P_σ` is a quotient of `P_π`; the order is the
//! reflexive-transitive closure of the covers.

mod census;
mod conjecture;
mod export;

use std::collections::HashMap;
use std::sync::OnceLock;

use fixedbitset::FixedBitSet;
use itertools::Itertools;
use rayon::prelude::*;
use thiserror::Error;

use crate::matroid::{is_quotient, Matroid, MatroidError, MAX_GROUND_SET};
use crate::positroid::{DecoratedPermutation, Decoration};

pub use census::{shifted_uniform_family, uniform_quotient_census, CensusRow};
pub use conjecture::{
    check_necklace_containment, check_shift_conjecture, closure_vs_direct, shift_witnesses, ClosureReport,
    ContainmentViolation, NonCoverShift, ShiftConjectureReport,
};
pub use export::{census_csv, PosetJson};

/// Default size limit for enumerations.
pub const DEFAULT_N_CAP: usize = 10;
/// Census rows from this size on need an explicit opt-in.
pub const LONG_RUNNING_FROM: usize = 9;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("n = {n} exceeds the configured cap of {cap} (raise it with --n-cap)")]
    CapExceeded { n: usize, cap: usize },
    #[error("n = {n} is a long-running computation; pass --long-running to allow it")]
    LongRunningRequired { n: usize },
    #[error("rank {k} is outside 1..={n}")]
    RankOutOfRange { k: usize, n: usize },
    #[error("ground set size must be at least 1")]
    EmptyGroundSet,
    #[error("malformed poset data: {0}")]
    Malformed(String),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
}

/// Size limits for exhaustive runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub n_cap: usize,
    pub long_running: bool,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { n_cap: DEFAULT_N_CAP, long_running: false }
    }
}

impl Limits {
    pub fn check(&self, n: usize) -> Result<(), PosetError> {
        if n == 0 {
            return Err(PosetError::EmptyGroundSet);
        }
        if n > self.n_cap.min(MAX_GROUND_SET) {
            return Err(PosetError::CapExceeded { n, cap: self.n_cap.min(MAX_GROUND_SET) });
        }
        Ok(())
    }

    pub fn check_long_running(&self, n: usize) -> Result<(), PosetError> {
        self.check(n)?;
        if n >= LONG_RUNNING_FROM && !self.long_running {
            return Err(PosetError::LongRunningRequired { n });
        }
        Ok(())
    }
}

/// All decorated permutations of `[n]`, optionally only those of rank `k`.
///
/// Order: lexicographic on image arrays, loops before coloops on equal images.
pub fn enumerate_decorated(n: usize, k: Option<usize>, cap: usize) -> Result<Vec<DecoratedPermutation>, PosetError> {
    Limits { n_cap: cap, long_running: true }.check(n)?;
    let mut out = Vec::new();
    for perm in (1..=n as u8).permutations(n) {
        let fixed: Vec<usize> = (0..n).filter(|&p| perm[p] as usize == p + 1).collect();
        let excedances = (0..n).filter(|&p| perm[p] as usize > p + 1).count();
        let f = fixed.len();
        for mask in 0u32..(1 << f) {
            let coloops = mask.count_ones() as usize;
            if k.is_some_and(|k| excedances + coloops != k) {
                continue;
            }
            let mut decoration = vec![None; n];
            for (idx, &p) in fixed.iter().enumerate() {
                let bit = 1 << (f - 1 - idx);
                decoration[p] = Some(if mask & bit != 0 { Decoration::Coloop } else { Decoration::Loop });
            }
            out.push(DecoratedPermutation::from_raw(perm.clone(), decoration));
        }
    }
    Ok(out)
}

/// The poset of positroid quotients.
#[derive(Clone, Debug)]
pub struct QuotientPoset {
    n: usize,
    elements: Vec<DecoratedPermutation>,
    ranks: Vec<usize>,
    covers: Vec<(usize, usize)>,
    lower_covers: Vec<Vec<usize>>,
    upper_covers: Vec<Vec<usize>>,
    below: Vec<FixedBitSet>,
    index: HashMap<DecoratedPermutation, usize>,
    positroids: OnceLock<Vec<Matroid>>,
}

/// Builds `P_n`, testing the quotient property between consecutive ranks only.
pub fn build_poset(n: usize, cap: usize) -> Result<QuotientPoset, PosetError> {
    let mut elements = enumerate_decorated(n, None, cap)?;
    elements.sort_by_cached_key(|p| p.rank());
    let positroids: Vec<Matroid> = elements.par_iter().map(DecoratedPermutation::positroid).collect();
    let ranks: Vec<usize> = positroids.iter().map(Matroid::rank).collect();
    let starts = rank_starts(&ranks, n);
    let mut covers: Vec<(usize, usize)> = (0..elements.len())
        .into_par_iter()
        .flat_map_iter(|upper| {
            let r = ranks[upper];
            let lower_range = if r == 0 { 0..0 } else { starts[r - 1]..starts[r] };
            let positroids = &positroids;
            lower_range
                .filter(move |&lower| is_quotient(&positroids[lower], &positroids[upper]).expect("same ground set"))
                .map(move |lower| (lower, upper))
        })
        .collect();
    covers.sort_unstable();
    let poset = QuotientPoset::assemble(n, elements, covers)?;
    let _ = poset.positroids.set(positroids);
    Ok(poset)
}

fn rank_starts(ranks: &[usize], n: usize) -> Vec<usize> {
    let mut starts = vec![0usize; n + 2];
    for &r in ranks {
        starts[r + 1] += 1;
    }
    for r in 1..starts.len() {
        starts[r] += starts[r - 1];
    }
    starts
}

impl QuotientPoset {
    /// Rebuilds a poset from its elements and cover edges (e.g. from a JSON export).
    ///
    /// Elements must be grouped by rank; covers are `(lower, upper)` index pairs between
    /// adjacent ranks.
    pub fn from_parts(
        n: usize,
        elements: Vec<DecoratedPermutation>,
        covers: Vec<(usize, usize)>,
    ) -> Result<Self, PosetError> {
        let mut covers = covers;
        covers.sort_unstable();
        covers.dedup();
        QuotientPoset::assemble(n, elements, covers)
    }

    fn assemble(
        n: usize,
        elements: Vec<DecoratedPermutation>,
        covers: Vec<(usize, usize)>,
    ) -> Result<Self, PosetError> {
        if elements.iter().any(|e| e.n() != n) {
            return Err(PosetError::Malformed(format!("element on a ground set other than [{n}]")));
        }
        let ranks: Vec<usize> = elements.iter().map(DecoratedPermutation::rank).collect();
        if ranks.windows(2).any(|w| w[0] > w[1]) {
            return Err(PosetError::Malformed("elements are not grouped by rank".into()));
        }
        let count = elements.len();
        let mut lower_covers = vec![Vec::new(); count];
        let mut upper_covers = vec![Vec::new(); count];
        for &(lo, hi) in &covers {
            if lo >= count || hi >= count || ranks[lo] + 1 != ranks[hi] {
                return Err(PosetError::Malformed(format!("({lo}, {hi}) is not an adjacent-rank pair")));
            }
            lower_covers[hi].push(lo);
            upper_covers[lo].push(hi);
        }
        let mut below = Vec::with_capacity(count);
        for (y, lowers) in lower_covers.iter().enumerate() {
            let mut set = FixedBitSet::with_capacity(count);
            set.insert(y);
            for &x in lowers {
                let prev: &FixedBitSet = &below[x];
                set.union_with(prev);
            }
            below.push(set);
        }
        let index = elements.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        Ok(QuotientPoset {
            n,
            elements,
            ranks,
            covers,
            lower_covers,
            upper_covers,
            below,
            index,
            positroids: OnceLock::new(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[DecoratedPermutation] {
        &self.elements
    }

    pub fn element(&self, idx: usize) -> &DecoratedPermutation {
        &self.elements[idx]
    }

    pub fn rank(&self, idx: usize) -> usize {
        self.ranks[idx]
    }

    pub fn index_of(&self, p: &DecoratedPermutation) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Cover edges `(lower, upper)`, sorted.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn lower_covers(&self, idx: usize) -> &[usize] {
        &self.lower_covers[idx]
    }

    pub fn upper_covers(&self, idx: usize) -> &[usize] {
        &self.upper_covers[idx]
    }

    pub fn is_cover(&self, lower: usize, upper: usize) -> bool {
        self.lower_covers[upper].contains(&lower)
    }

    /// `x <= y` in the closure order.
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.below[y].contains(x)
    }

    /// `π_{0,n}`, all loops.
    pub fn bottom(&self) -> usize {
        self.index_of(&DecoratedPermutation::uniform(0, self.n)).expect("bottom element present")
    }

    /// `π_{n,n}`, all coloops.
    pub fn top(&self) -> usize {
        self.index_of(&DecoratedPermutation::uniform(self.n, self.n)).expect("top element present")
    }

    /// `|D_{k,n}|` for `k = 0..=n`.
    pub fn rank_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.n + 1];
        for &r in &self.ranks {
            sizes[r] += 1;
        }
        sizes
    }

    /// Positroids of all elements, computed once.
    pub fn positroids(&self) -> &[Matroid] {
        self.positroids.get_or_init(|| self.elements.par_iter().map(DecoratedPermutation::positroid).collect())
    }

    /// `μ(0̂, y)` for every element `y`, by `μ(0̂, y) = -Σ_{0̂ <= z < y} μ(0̂, z)`.
    pub fn mobius_from_bottom(&self) -> Vec<i64> {
        let bottom = self.bottom();
        let mut mu = vec![0i64; self.len()];
        // Elements are grouped by rank, so everything strictly below y has a smaller index.
        for y in 0..self.len() {
            if !self.leq(bottom, y) {
                continue;
            }
            if y == bottom {
                mu[y] = 1;
                continue;
            }
            let sum: i64 = self.below[y].ones().filter(|&z| z != y).map(|z| mu[z]).sum();
            mu[y] = -sum;
        }
        mu
    }

    /// `μ(0̂, 1̂)`.
    pub fn mobius(&self) -> i64 {
        self.mobius_from_bottom()[self.top()]
    }

    /// Every pair `x < y` of the closure order.
    pub fn strict_relations(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for y in 0..self.len() {
            out.extend(self.below[y].ones().filter(|&x| x != y).map(|x| (x, y)));
        }
        out.sort_unstable();
        out
    }

    /// Lengths of all maximal chains (cover paths from a minimal to a maximal element).
    pub fn maximal_chain_lengths(&self) -> Vec<usize> {
        let mut lengths = std::collections::BTreeSet::new();
        let count = self.len();
        // longest and shortest path from each element up to a maximal element
        let mut shortest = vec![usize::MAX; count];
        let mut longest = vec![0usize; count];
        for x in (0..count).rev() {
            if self.upper_covers[x].is_empty() {
                shortest[x] = 0;
                longest[x] = 0;
            } else {
                shortest[x] = 1 + self.upper_covers[x].iter().map(|&u| shortest[u]).min().unwrap();
                longest[x] = 1 + self.upper_covers[x].iter().map(|&u| longest[u]).max().unwrap();
            }
        }
        for x in 0..count {
            if self.lower_covers[x].is_empty() {
                lengths.insert(shortest[x]);
                lengths.insert(longest[x]);
            }
        }
        lengths.into_iter().collect()
    }
}
