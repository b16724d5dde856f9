//! Matroids given by their bases.
//!
//! Rank, independence, circuits and the quotient tests are all derived from the basis
//! family. Derived data lives in lazily built tables indexed by subset bitmask, so the
//! ground set is capped at [`MAX_GROUND_SET`] elements.

mod quotient;
mod realize;

use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::order::{IndexSet, OrderError};

pub use quotient::{flags, is_quotient, is_quotient_by_rank, uncovered_circuits, Flag};
pub use realize::{realize_uniform, vandermonde_product, Exact, ExactMatrix, MinorCheck, RealizationReport};

/// Hard cap for every exhaustive operation over the subset lattice.
pub const MAX_GROUND_SET: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatroidError {
    #[error("a matroid needs at least one basis")]
    EmptyBases,
    #[error("bases must share one cardinality: {first} has {expected} elements but {basis} has {found}")]
    MixedCardinality { first: IndexSet, expected: usize, basis: IndexSet, found: usize },
    #[error("basis exchange fails for B1 = {b1}, B2 = {b2}, x = {x}")]
    ExchangeViolation { b1: IndexSet, b2: IndexSet, x: usize },
    #[error("ground set of size {n} exceeds the exhaustive limit of {MAX_GROUND_SET}")]
    GroundSetTooLarge { n: usize },
    #[error("ground set must be nonempty")]
    EmptyGroundSet,
    #[error("set {set} is not contained in [{n}]")]
    OutOfRange { set: IndexSet, n: usize },
    #[error("rank {k} is outside 0..={n}")]
    RankOutOfRange { k: usize, n: usize },
    #[error("ground sets differ ({left} vs {right})")]
    GroundSetMismatch { left: usize, right: usize },
    #[error("the first matroid is not a quotient of the second")]
    NotAQuotient,
    #[error("flags need rank({lower}) < rank({upper})")]
    RankNotIncreasing { lower: usize, upper: usize },
    #[error("realization points must satisfy 0 < a_1 < ... < a_n (violated at position {position})")]
    NonIncreasingPoints { position: usize },
    #[error("expected {expected} points, got {found}")]
    PointCountMismatch { expected: usize, found: usize },
    #[error("matrix has {rows} rows but {cols} columns; need rows <= columns")]
    BadShape { rows: usize, cols: usize },
    #[error(transparent)]
    Order(#[from] OrderError),
}

fn check_size(n: usize) -> Result<(), MatroidError> {
    if n == 0 {
        return Err(MatroidError::EmptyGroundSet);
    }
    if n > MAX_GROUND_SET {
        return Err(MatroidError::GroundSetTooLarge { n });
    }
    Ok(())
}

/// Rank table over all subsets of the ground set, plus the circuits read off it.
#[derive(Debug, Clone)]
struct Lattice {
    rank: Vec<u8>,
    circuits: Vec<IndexSet>,
}

/// A matroid on `[n]` given by its bases.
///
/// Bases are kept in canonical (lexicographic) order, so two matroids are equal exactly
/// when their ground sets and basis lists agree.
#[derive(Clone, Serialize, Deserialize)]
#[serde(try_from = "MatroidRepr", into = "MatroidRepr")]
pub struct Matroid {
    n: usize,
    rank: usize,
    bases: Vec<IndexSet>,
    lattice: OnceLock<Lattice>,
    cover: OnceLock<Vec<u32>>,
}

/// Canonical JSON form `{"n": .., "bases": [[..], ..]}`.
#[derive(Serialize, Deserialize)]
struct MatroidRepr {
    n: usize,
    bases: Vec<IndexSet>,
}

impl TryFrom<MatroidRepr> for Matroid {
    type Error = MatroidError;

    fn try_from(repr: MatroidRepr) -> Result<Self, Self::Error> {
        Matroid::from_bases(repr.n, repr.bases)
    }
}

impl From<Matroid> for MatroidRepr {
    fn from(m: Matroid) -> Self {
        MatroidRepr { n: m.n, bases: m.bases }
    }
}

impl PartialEq for Matroid {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.bases == other.bases
    }
}

impl Eq for Matroid {}

impl std::hash::Hash for Matroid {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.bases.hash(state);
    }
}

impl fmt::Debug for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Matroid").field("n", &self.n).field("rank", &self.rank).field("bases", &self.bases).finish()
    }
}

impl Matroid {
    /// Validates (B1), equal cardinality, and the exchange axiom (B2) exhaustively.
    pub fn from_bases<I: IntoIterator<Item = IndexSet>>(n: usize, bases: I) -> Result<Self, MatroidError> {
        check_size(n)?;
        let mut bases: Vec<IndexSet> = bases.into_iter().collect();
        bases.sort();
        bases.dedup();
        let first = *bases.first().ok_or(MatroidError::EmptyBases)?;
        let k = first.len();
        for &b in &bases {
            if !b.within(n) {
                return Err(MatroidError::OutOfRange { set: b, n });
            }
            if b.len() != k {
                return Err(MatroidError::MixedCardinality { first, expected: k, basis: b, found: b.len() });
            }
        }
        let mut member = vec![false; 1 << n];
        for b in &bases {
            member[b.bits() as usize] = true;
        }
        for &b1 in &bases {
            for &b2 in &bases {
                if b1 == b2 {
                    continue;
                }
                for x in b1.difference(b2).iter() {
                    let base = b1.without(x);
                    let ok = b2.difference(b1).iter().any(|y| member[base.with(y).bits() as usize]);
                    if !ok {
                        return Err(MatroidError::ExchangeViolation { b1, b2, x });
                    }
                }
            }
        }
        Ok(Matroid::from_sorted_unchecked(n, k, bases))
    }

    /// Skips validation. Callers guarantee a sorted, deduplicated family of `k`-sets that
    /// satisfies basis exchange (e.g. bases produced from a Grassmann necklace).
    pub(crate) fn from_sorted_unchecked(n: usize, k: usize, bases: Vec<IndexSet>) -> Self {
        debug_assert!(bases.windows(2).all(|w| w[0] < w[1]));
        Matroid { n, rank: k, bases, lattice: OnceLock::new(), cover: OnceLock::new() }
    }

    /// `U_{k,n}`: every `k`-subset of `[n]` is a basis.
    pub fn uniform(k: usize, n: usize) -> Result<Self, MatroidError> {
        check_size(n)?;
        if k > n {
            return Err(MatroidError::RankOutOfRange { k, n });
        }
        let mut bases: Vec<IndexSet> = IndexSet::k_subsets(n, k).collect();
        bases.sort();
        Ok(Matroid::from_sorted_unchecked(n, k, bases))
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn bases(&self) -> &[IndexSet] {
        &self.bases
    }

    pub fn is_basis(&self, set: IndexSet) -> bool {
        self.bases.binary_search(&set).is_ok()
    }

    fn lattice(&self) -> &Lattice {
        self.lattice.get_or_init(|| build_lattice(self.n, self.rank, &self.bases))
    }

    /// Rank of `set`: the size of its largest independent subset.
    pub fn rank_of(&self, set: IndexSet) -> Result<usize, MatroidError> {
        if !set.within(self.n) {
            return Err(MatroidError::OutOfRange { set, n: self.n });
        }
        Ok(self.lattice().rank[set.bits() as usize] as usize)
    }

    #[inline]
    pub(crate) fn rank_unchecked(&self, set: IndexSet) -> usize {
        self.lattice().rank[set.bits() as usize] as usize
    }

    /// Whether `set` lies inside some basis. Sets reaching outside `[n]` are dependent.
    pub fn is_independent(&self, set: IndexSet) -> bool {
        set.within(self.n) && self.rank_unchecked(set) == set.len()
    }

    /// Minimal dependent sets, in canonical order.
    pub fn circuits(&self) -> &[IndexSet] {
        &self.lattice().circuits
    }

    /// Elements in no basis.
    pub fn loops(&self) -> IndexSet {
        let union = self.bases.iter().fold(IndexSet::EMPTY, |acc, &b| acc.union(b));
        union.complement(self.n)
    }

    /// Elements in every basis.
    pub fn coloops(&self) -> IndexSet {
        self.bases.iter().fold(IndexSet::full(self.n), |acc, &b| acc.intersection(b))
    }

    /// The matroid whose bases are the complements of these bases.
    pub fn dual(&self) -> Matroid {
        let mut bases: Vec<IndexSet> = self.bases.iter().map(|b| b.complement(self.n)).collect();
        bases.sort();
        Matroid::from_sorted_unchecked(self.n, self.n - self.rank, bases)
    }

    /// For every subset `S`, the union of all circuits contained in `S`.
    pub(crate) fn circuit_cover(&self) -> &[u32] {
        self.cover.get_or_init(|| {
            let size = 1usize << self.n;
            let mut cover = vec![0u32; size];
            for &c in self.circuits() {
                cover[c.bits() as usize] = c.bits();
            }
            for s in 1..size {
                let mut rest = s;
                let mut acc = cover[s];
                while rest != 0 {
                    let low = rest & rest.wrapping_neg();
                    acc |= cover[s & !low];
                    rest &= rest - 1;
                }
                cover[s] = acc;
            }
            cover
        })
    }

    /// The canonical JSON form.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("matroid serializes")
    }
}

fn build_lattice(n: usize, k: usize, bases: &[IndexSet]) -> Lattice {
    let size = 1usize << n;
    let mut independent = vec![false; size];
    for b in bases {
        independent[b.bits() as usize] = true;
    }
    // Any set strictly inside an independent set is independent; supersets have larger masks.
    for s in (0..size).rev() {
        if independent[s] || (s.count_ones() as usize) >= k {
            continue;
        }
        let mut missing = !s & (size - 1);
        while missing != 0 {
            let low = missing & missing.wrapping_neg();
            if independent[s | low] {
                independent[s] = true;
                break;
            }
            missing &= missing - 1;
        }
    }
    let mut rank = vec![0u8; size];
    let mut circuits = Vec::new();
    for s in 1..size {
        if independent[s] {
            rank[s] = s.count_ones() as u8;
            continue;
        }
        let mut best = 0u8;
        let mut all_independent = true;
        let mut rest = s;
        while rest != 0 {
            let low = rest & rest.wrapping_neg();
            let sub = s & !low;
            best = best.max(rank[sub]);
            all_independent &= independent[sub];
            rest &= rest - 1;
        }
        rank[s] = best;
        if all_independent {
            circuits.push(IndexSet::from_bits(s as u32));
        }
    }
    circuits.sort();
    Lattice { rank, circuits }
}
