//! Cyclic orders on `[n]`, the Gale order, and cyclic intervals.
//!
//! Elements are one-indexed throughout. Subsets of the ground set are stored as
//! bitmasks in [`IndexSet`], with element `e` held in bit `e - 1`.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Largest ground set an [`IndexSet`] can address.
pub const MAX_ELEMENTS: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("element {element} is outside the ground set [1, {n}]")]
    ElementOutOfRange { element: usize, n: usize },
    #[error("ground set size {0} is not supported (expected 1..={MAX_ELEMENTS})")]
    InvalidGroundSet(usize),
    #[error("Gale comparison needs sets of equal size, got {left} and {right}")]
    CardinalityMismatch { left: usize, right: usize },
    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

fn check_ground(n: usize) -> Result<(), OrderError> {
    if n == 0 || n > MAX_ELEMENTS {
        return Err(OrderError::InvalidGroundSet(n));
    }
    Ok(())
}

fn check_element(e: usize, n: usize) -> Result<(), OrderError> {
    if e == 0 || e > n {
        return Err(OrderError::ElementOutOfRange { element: e, n });
    }
    Ok(())
}

/// A subset of `[n]`.
///
/// Ordering is lexicographic on the ascending element lists, so `{1,2} < {1,2,5} < {1,3}`
/// and the empty set is smallest. This is the canonical order used in every export.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct IndexSet(u32);

impl IndexSet {
    pub const EMPTY: IndexSet = IndexSet(0);

    pub const fn from_bits(bits: u32) -> Self {
        IndexSet(bits)
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    /// `[n]` itself.
    pub fn full(n: usize) -> Self {
        if n >= 32 {
            IndexSet(u32::MAX)
        } else {
            IndexSet((1u32 << n) - 1)
        }
    }

    /// Builds a set from one-indexed elements, rejecting anything outside `[n]`.
    pub fn from_elements<I: IntoIterator<Item = usize>>(n: usize, elements: I) -> Result<Self, OrderError> {
        check_ground(n)?;
        let mut bits = 0u32;
        for e in elements {
            check_element(e, n)?;
            bits |= 1 << (e - 1);
        }
        Ok(IndexSet(bits))
    }

    /// Unchecked constructor for literals in code and tests. Panics on element 0 or > 32.
    pub fn of(elements: &[usize]) -> Self {
        let mut bits = 0u32;
        for &e in elements {
            assert!((1..=MAX_ELEMENTS).contains(&e), "element {e} out of range");
            bits |= 1 << (e - 1);
        }
        IndexSet(bits)
    }

    /// The cyclic interval `[a, b]` of `[n]` as a set.
    pub fn interval(a: usize, b: usize, n: usize) -> Self {
        CyclicInterval { start: a, end: b, n }.to_set()
    }

    pub fn singleton(e: usize) -> Self {
        IndexSet::of(&[e])
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, e: usize) -> bool {
        (1..=MAX_ELEMENTS).contains(&e) && self.0 & (1 << (e - 1)) != 0
    }

    pub fn insert(&mut self, e: usize) {
        self.0 |= 1 << (e - 1);
    }

    pub fn remove(&mut self, e: usize) {
        self.0 &= !(1 << (e - 1));
    }

    pub fn with(self, e: usize) -> Self {
        IndexSet(self.0 | (1 << (e - 1)))
    }

    pub fn without(self, e: usize) -> Self {
        IndexSet(self.0 & !(1 << (e - 1)))
    }

    pub fn union(self, other: Self) -> Self {
        IndexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        IndexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        IndexSet(self.0 & !other.0)
    }

    pub fn complement(self, n: usize) -> Self {
        IndexSet(!self.0 & IndexSet::full(n).0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_proper_subset(self, other: Self) -> bool {
        self.is_subset(other) && self != other
    }

    /// Largest element, if any.
    pub fn max(self) -> Option<usize> {
        (self.0 != 0).then(|| 32 - self.0.leading_zeros() as usize)
    }

    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize + 1)
    }

    /// True when every element lies in `[n]`.
    pub fn within(self, n: usize) -> bool {
        self.is_subset(IndexSet::full(n))
    }

    /// Elements in ascending natural order.
    pub fn iter(self) -> Elements {
        Elements(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Elements listed in the `i`-order `i <_i i+1 <_i ... <_i i-1`.
    pub fn sorted_in(self, i: usize, n: usize) -> Vec<usize> {
        let mut v = self.to_vec();
        v.sort_by_key(|&e| position_in(i, e, n));
        v
    }

    /// All subsets of `[n]` in increasing bitmask order.
    pub fn all_subsets(n: usize) -> impl Iterator<Item = IndexSet> {
        let end = 1u64 << n;
        (0..end).map(|b| IndexSet(b as u32))
    }

    /// All `k`-subsets of `[n]`, in increasing bitmask order.
    pub fn k_subsets(n: usize, k: usize) -> KSubsets {
        KSubsets::new(n, k)
    }

    /// All subsets of `self` (including `self` and the empty set).
    pub fn subsets(self) -> Submasks {
        Submasks { whole: self.0, next: Some(self.0) }
    }

    /// Compact text form: `{1,3,5}`.
    pub fn to_brace_string(self) -> String {
        format!("{self}")
    }
}

impl Ord for IndexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        let diff = self.0 ^ other.0;
        if diff == 0 {
            return Ordering::Equal;
        }
        // The smallest element in exactly one of the two sets decides: the set holding it
        // is smaller unless the other set has nothing beyond it (then the other is a prefix).
        let low = diff.trailing_zeros();
        let above = if low >= 31 { 0 } else { u32::MAX << (low + 1) };
        if self.0 & (1 << low) != 0 {
            if other.0 & above != 0 {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        } else if self.0 & above != 0 {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }
}

impl PartialOrd for IndexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (idx, e) in self.iter().enumerate() {
            if idx > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for IndexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for IndexSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let elements = Vec::<usize>::deserialize(deserializer)?;
        let mut set = IndexSet::EMPTY;
        for e in elements {
            if e == 0 || e > MAX_ELEMENTS {
                return Err(serde::de::Error::custom(format!("element {e} out of range")));
            }
            if set.contains(e) {
                return Err(serde::de::Error::custom(format!("element {e} repeated")));
            }
            set.insert(e);
        }
        Ok(set)
    }
}

impl FromIterator<usize> for IndexSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        let mut set = IndexSet::EMPTY;
        for e in iter {
            set.insert(e);
        }
        set
    }
}

/// Ascending iterator over the elements of an [`IndexSet`].
#[derive(Clone)]
pub struct Elements(u32);

impl Iterator for Elements {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let e = self.0.trailing_zeros() as usize + 1;
        self.0 &= self.0 - 1;
        Some(e)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for Elements {}

/// `k`-subsets of `[n]` via Gosper's hack.
pub struct KSubsets {
    current: Option<u64>,
    limit: u64,
}

impl KSubsets {
    fn new(n: usize, k: usize) -> Self {
        let limit = 1u64 << n;
        let current = if k > n { None } else { Some((1u64 << k) - 1) };
        KSubsets { current, limit }
    }
}

impl Iterator for KSubsets {
    type Item = IndexSet;

    fn next(&mut self) -> Option<IndexSet> {
        let x = self.current?;
        if x >= self.limit {
            self.current = None;
            return None;
        }
        self.current = if x == 0 {
            None
        } else {
            let c = x & x.wrapping_neg();
            let r = x + c;
            Some((((r ^ x) >> 2) / c) | r)
        };
        Some(IndexSet(x as u32))
    }
}

/// Subsets of a fixed mask, from the mask itself down to the empty set.
pub struct Submasks {
    whole: u32,
    next: Option<u32>,
}

impl Iterator for Submasks {
    type Item = IndexSet;

    fn next(&mut self) -> Option<IndexSet> {
        let cur = self.next?;
        self.next = if cur == 0 { None } else { Some((cur - 1) & self.whole) };
        Some(IndexSet(cur))
    }
}

/// Zero-based position of `e` in the `i`-order on `[n]`.
#[inline]
pub fn position_in(i: usize, e: usize, n: usize) -> usize {
    (e + n - i) % n
}

/// Whether `a <_i b` in the cyclic order starting at `i`.
pub fn i_precedes(i: usize, a: usize, b: usize, n: usize) -> Result<bool, OrderError> {
    check_ground(n)?;
    for e in [i, a, b] {
        check_element(e, n)?;
    }
    Ok(position_in(i, a, n) < position_in(i, b, n))
}

/// Rotates a set so that the `i`-order becomes the natural order on bit positions.
#[inline]
pub(crate) fn rotate_to(i: usize, set: IndexSet, n: usize) -> u32 {
    let shift = (i - 1) as u32;
    if shift == 0 {
        return set.0;
    }
    let bits = set.0 as u64;
    let mask = (1u64 << n) - 1;
    (((bits >> shift) | (bits << (n as u32 - shift))) & mask) as u32
}

/// Gale comparison `s <=_i t` without validation; both sets must have the same size.
#[inline]
pub(crate) fn gale_leq_unchecked(i: usize, s: IndexSet, t: IndexSet, n: usize) -> bool {
    let mut a = rotate_to(i, s, n);
    let mut b = rotate_to(i, t, n);
    while a != 0 {
        if a.trailing_zeros() > b.trailing_zeros() {
            return false;
        }
        a &= a - 1;
        b &= b - 1;
    }
    true
}

/// The `i`-Gale order: with both sets listed in `i`-order, `s_j <=_i t_j` for every `j`.
pub fn gale_leq(i: usize, s: IndexSet, t: IndexSet, n: usize) -> Result<bool, OrderError> {
    check_ground(n)?;
    check_element(i, n)?;
    for set in [s, t] {
        if let Some(m) = set.max() {
            check_element(m, n)?;
        }
    }
    if s.len() != t.len() {
        return Err(OrderError::CardinalityMismatch { left: s.len(), right: t.len() });
    }
    Ok(gale_leq_unchecked(i, s, t, n))
}

/// Gale comparison of sequences already sorted in `i`-order.
///
/// Useful when one necklace entry is compared against many candidates.
pub fn gale_leq_sorted(i: usize, s: &[usize], t: &[usize], n: usize) -> Result<bool, OrderError> {
    if s.len() != t.len() {
        return Err(OrderError::CardinalityMismatch { left: s.len(), right: t.len() });
    }
    Ok(s.iter().zip(t).all(|(&a, &b)| position_in(i, a, n) <= position_in(i, b, n)))
}

/// The cyclic interval `[start, end]` of `[n]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct CyclicInterval {
    pub start: usize,
    pub end: usize,
    pub n: usize,
}

impl CyclicInterval {
    pub fn new(start: usize, end: usize, n: usize) -> Result<Self, OrderError> {
        check_ground(n)?;
        check_element(start, n)?;
        check_element(end, n)?;
        Ok(CyclicInterval { start, end, n })
    }

    /// The interval of `len` elements starting at `start` (wrapping); `len` in `1..=n`.
    pub fn with_len(start: usize, len: usize, n: usize) -> Self {
        debug_assert!(len >= 1 && len <= n);
        let end = (start - 1 + len - 1) % n + 1;
        CyclicInterval { start, end, n }
    }

    pub fn len(&self) -> usize {
        (self.end + self.n - self.start) % self.n + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, e: usize) -> bool {
        position_in(self.start, e, self.n) < self.len()
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).map(move |o| (self.start - 1 + o) % self.n + 1)
    }

    pub fn to_set(&self) -> IndexSet {
        self.elements().collect()
    }
}

impl fmt::Display for CyclicInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.start, self.end)
    }
}

/// Decomposes `a` into maximal cyclic intervals, ordered by their smallest element.
///
/// `[n]` itself is returned as the single interval `[1, n]`.
pub fn cyclic_components(a: IndexSet, n: usize) -> Vec<CyclicInterval> {
    if a.is_empty() {
        return Vec::new();
    }
    if a == IndexSet::full(n) {
        return vec![CyclicInterval { start: 1, end: n, n }];
    }
    let pred = |e: usize| if e == 1 { n } else { e - 1 };
    let succ = |e: usize| if e == n { 1 } else { e + 1 };
    let mut out: Vec<CyclicInterval> = a
        .iter()
        .filter(|&e| !a.contains(pred(e)))
        .map(|start| {
            let mut end = start;
            while a.contains(succ(end)) {
                end = succ(end);
            }
            CyclicInterval { start, end, n }
        })
        .collect();
    out.sort_by_key(|c| c.to_set().min());
    out
}

/// Parses a comma separated element list such as `1,3,5`; entries may be cyclic ranges `9-1`.
pub fn parse_elements(text: &str, n: usize) -> Result<IndexSet, OrderError> {
    check_ground(n)?;
    let mut set = IndexSet::EMPTY;
    let err = |reason: &str| OrderError::Parse { input: text.to_string(), reason: reason.to_string() };
    for token in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let parse = |t: &str| t.trim().parse::<usize>().map_err(|_| err("expected an integer"));
        if let Some((a, b)) = token.split_once('-') {
            let (a, b) = (parse(a)?, parse(b)?);
            let iv = CyclicInterval::new(a, b, n)?;
            set = set.union(iv.to_set());
        } else {
            let e = parse(token)?;
            check_element(e, n)?;
            set.insert(e);
        }
    }
    Ok(set)
}
