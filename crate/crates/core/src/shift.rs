//! Cyclic shift moves on decorated permutations and the circuits of shifted uniform
//! positroids.
//!
//! A shift freezes the *values* in a set `A`, rotates the remaining values one step along
//! the positions that do not hold a frozen value, and decorates fixed points that land on
//! those positions: loops for a left shift, coloops for a right shift.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::order::{cyclic_components, parse_elements, CyclicInterval, IndexSet, OrderError};
use crate::positroid::{DecoratedPermutation, Decoration};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShiftError {
    #[error("cyclic component {component} of the frozen set has length {len}, but k - 1 = {limit}")]
    IntervalTooLong { component: CyclicInterval, len: usize, limit: usize },
    #[error("rank k = {k} must satisfy 1 <= k <= n = {n}")]
    RankOutOfRange { k: usize, n: usize },
    #[error("frozen set lives on [{set_n}] but the permutation on [{n}]")]
    SizeMismatch { set_n: usize, n: usize },
    #[error(transparent)]
    Order(#[from] OrderError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Left,
    Right,
}

/// A frozen set `A ⊆ [n]` with its maximal cyclic components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreezeSet {
    set: IndexSet,
    n: usize,
    components: Vec<CyclicInterval>,
}

impl FreezeSet {
    pub fn new(set: IndexSet, n: usize) -> Result<Self, ShiftError> {
        if n == 0 || !set.within(n) {
            return Err(OrderError::ElementOutOfRange { element: set.max().unwrap_or(0), n }.into());
        }
        Ok(FreezeSet { set, n, components: cyclic_components(set, n) })
    }

    /// Parses `1,3,5` or interval syntax such as `9-1,6` (intervals may wrap).
    pub fn parse(text: &str, n: usize) -> Result<Self, ShiftError> {
        FreezeSet::new(parse_elements(text, n)?, n)
    }

    pub fn set(&self) -> IndexSet {
        self.set
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.set.is_empty()
    }

    pub fn components(&self) -> &[CyclicInterval] {
        &self.components
    }

    /// Component lengths `l_1, ..., l_m`.
    pub fn lengths(&self) -> Vec<usize> {
        self.components.iter().map(CyclicInterval::len).collect()
    }

    /// Clockwise-last element `i_j` of each component.
    pub fn endpoints(&self) -> Vec<usize> {
        self.components.iter().map(|c| c.end).collect()
    }

    fn check_lengths(&self, k: usize) -> Result<(), ShiftError> {
        if k == 0 || k > self.n {
            return Err(ShiftError::RankOutOfRange { k, n: self.n });
        }
        for c in &self.components {
            if c.len() > k - 1 {
                return Err(ShiftError::IntervalTooLong { component: *c, len: c.len(), limit: k - 1 });
            }
        }
        Ok(())
    }
}

impl fmt::Display for FreezeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return f.write_str("∅");
        }
        let parts: Vec<String> = self
            .components
            .iter()
            .map(|c| if c.len() == 1 { format!("{{{}}}", c.start) } else { c.to_string() })
            .collect();
        f.write_str(&parts.join(" ∪ "))
    }
}

/// Applies the freeze/shift/decorate move in the given direction.
///
/// Values in `frozen` keep their positions and decorations. With `p_1 < ... < p_t` the
/// remaining positions, a left shift sets `σ(p_r) = π(p_{r+1})` and a right shift
/// `σ(p_r) = π(p_{r-1})`, indices mod `t`. Every fixed point on one of those positions is
/// then decorated as a loop (left) or coloop (right).
pub fn shift(pi: &DecoratedPermutation, frozen: IndexSet, direction: Direction) -> DecoratedPermutation {
    let image = pi.raw_image();
    let mut out_image = image.to_vec();
    let mut out_dec = pi.raw_decoration().to_vec();
    let free: Vec<usize> = (0..image.len()).filter(|&p| !frozen.contains(image[p] as usize)).collect();
    let t = free.len();
    let fresh = match direction {
        Direction::Left => Decoration::Loop,
        Direction::Right => Decoration::Coloop,
    };
    for (r, &p) in free.iter().enumerate() {
        let src = match direction {
            Direction::Left => free[(r + 1) % t],
            Direction::Right => free[(r + t - 1) % t],
        };
        out_image[p] = image[src];
        out_dec[p] = (out_image[p] as usize == p + 1).then_some(fresh);
    }
    DecoratedPermutation::from_raw(out_image, out_dec)
}

/// The left move `ρ⃖_A(π)`.
pub fn shift_left(pi: &DecoratedPermutation, frozen: IndexSet) -> DecoratedPermutation {
    shift(pi, frozen, Direction::Left)
}

/// The right move `ρ⃗_A(π)`.
pub fn shift_right(pi: &DecoratedPermutation, frozen: IndexSet) -> DecoratedPermutation {
    shift(pi, frozen, Direction::Right)
}

/// Rank of the positroid of `ρ⃖_A(π_{k,n})` when no component of `A` is longer than `k - 1`,
/// namely `k - 1`.
pub fn predicted_rank(k: usize, n: usize, frozen: &FreezeSet) -> Result<usize, ShiftError> {
    if frozen.n != n {
        return Err(ShiftError::SizeMismatch { set_n: frozen.n, n });
    }
    frozen.check_lengths(k)?;
    let sigma = shift_left(&DecoratedPermutation::uniform(k, n), frozen.set);
    assert_eq!(sigma.rank(), k - 1, "shifted uniform permutation {sigma} must have rank k - 1");
    Ok(k - 1)
}

/// The circuit family of the positroid of `ρ⃖_A(π_{k,n})`: for each component
/// `[a_j, i_j]` of length `l_j`, the interval `[i_j + 1, i_j + k - l_j]`, plus every
/// `k`-subset containing none of those intervals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PredictedCircuits {
    pub k: usize,
    pub n: usize,
    pub small: Vec<CyclicInterval>,
    circuits: Vec<IndexSet>,
}

impl PredictedCircuits {
    /// Small intervals together with the filtered `k`-subsets, in canonical order.
    pub fn circuits(&self) -> &[IndexSet] {
        &self.circuits
    }

    pub fn small_sets(&self) -> Vec<IndexSet> {
        self.small.iter().map(CyclicInterval::to_set).collect()
    }
}

impl fmt::Display for PredictedCircuits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let small: Vec<String> = self.small.iter().map(|c| c.to_string()).collect();
        write!(
            f,
            "{{{}}} ∪ {{C ⊆ [{}], |C| = {} : C contains none of {}}}",
            small.join(", "),
            self.n,
            self.k,
            if small.is_empty() { "them".to_string() } else { small.join(", ") }
        )
    }
}

pub fn predicted_circuits(k: usize, n: usize, frozen: &FreezeSet) -> Result<PredictedCircuits, ShiftError> {
    if frozen.n != n {
        return Err(ShiftError::SizeMismatch { set_n: frozen.n, n });
    }
    frozen.check_lengths(k)?;
    let small: Vec<CyclicInterval> =
        frozen.components.iter().map(|c| CyclicInterval::with_len(c.end % n + 1, k - c.len(), n)).collect();
    let small_sets: Vec<IndexSet> = small.iter().map(CyclicInterval::to_set).collect();
    let mut circuits: Vec<IndexSet> = small_sets.clone();
    circuits.extend(IndexSet::k_subsets(n, k).filter(|c| !small_sets.iter().any(|s| s.is_subset(*c))));
    circuits.sort();
    circuits.dedup();
    Ok(PredictedCircuits { k, n, small, circuits })
}

/// Whether every `(k+1)`-subset of `[n]` is the union of the predicted circuits inside it.
///
/// Meaningful for `|A| <= k - 1`; an error is returned when a component is too long for
/// the circuit family to be defined.
pub fn circuit_cover_uniform(k: usize, n: usize, frozen: &FreezeSet) -> Result<bool, ShiftError> {
    let predicted = predicted_circuits(k, n, frozen)?;
    let circuits = predicted.circuits();
    Ok(IndexSet::k_subsets(n, k + 1).all(|o| {
        let union = circuits.iter().filter(|c| c.is_subset(o)).fold(IndexSet::EMPTY, |acc, &c| acc.union(c));
        union == o
    }))
}
