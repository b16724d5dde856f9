//! Decorated permutations, Grassmann necklaces, and the bijections between them and
//! positroids.
//!
//! A positroid is recovered from its necklace `(I_1, ..., I_n)` as the family of `k`-sets
//! that dominate every `I_i` in the `i`-Gale order. The necklace of any matroid is the
//! list of its Gale-minimal bases; a matroid is a positroid exactly when the positroid of
//! its necklace gives back the same bases.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::matroid::{Matroid, MatroidError, MAX_GROUND_SET};
use crate::order::{gale_leq_unchecked, position_in, IndexSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PositroidError {
    #[error("invalid decorated permutation: {0}")]
    InvalidPermutation(String),
    #[error("invalid Grassmann necklace at index {index}: {reason}")]
    InvalidNecklace { index: usize, reason: String },
    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error("not a positroid; the smallest positroid containing it is {containing}")]
    NotAPositroid { containing: DecoratedPermutation },
    #[error(transparent)]
    Matroid(#[from] MatroidError),
}

/// How a fixed point is decorated: a loop (`i̲`, written `i_`) or a coloop (`ī`, written `i^`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Decoration {
    Loop,
    Coloop,
}

/// A permutation of `[n]` whose fixed points each carry a [`Decoration`].
///
/// The derived ordering (image array first, then decorations with loops before coloops)
/// is the canonical enumeration order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DecoratedPermutation {
    image: Vec<u8>,
    decoration: Vec<Option<Decoration>>,
}

impl DecoratedPermutation {
    /// `image[p - 1]` is the value at position `p`; `decoration[p - 1]` must be set exactly
    /// on fixed points.
    pub fn new(image: Vec<usize>, decoration: Vec<Option<Decoration>>) -> Result<Self, PositroidError> {
        let n = image.len();
        let bad = |msg: String| Err(PositroidError::InvalidPermutation(msg));
        if n == 0 || n > MAX_GROUND_SET {
            return bad(format!("size {n} outside 1..={MAX_GROUND_SET}"));
        }
        if decoration.len() != n {
            return bad(format!("{} decorations for {n} positions", decoration.len()));
        }
        let mut seen = IndexSet::EMPTY;
        for (pos, (&v, d)) in image.iter().zip(&decoration).enumerate() {
            let p = pos + 1;
            if v == 0 || v > n || seen.contains(v) {
                return bad(format!("value {v} at position {p} is out of range or repeated"));
            }
            seen.insert(v);
            match (v == p, d.is_some()) {
                (true, false) => return bad(format!("fixed point {p} is undecorated")),
                (false, true) => return bad(format!("position {p} is decorated but not fixed")),
                _ => {}
            }
        }
        Ok(DecoratedPermutation { image: image.into_iter().map(|v| v as u8).collect(), decoration })
    }

    /// Builds from an image array, decorating every fixed point `i` as a coloop when
    /// `i ∈ coloops` and as a loop otherwise.
    pub fn from_image(image: Vec<usize>, coloops: IndexSet) -> Result<Self, PositroidError> {
        let decoration = image
            .iter()
            .enumerate()
            .map(|(pos, &v)| {
                (v == pos + 1).then(|| if coloops.contains(v) { Decoration::Coloop } else { Decoration::Loop })
            })
            .collect();
        DecoratedPermutation::new(image, decoration)
    }

    pub(crate) fn from_raw(image: Vec<u8>, decoration: Vec<Option<Decoration>>) -> Self {
        DecoratedPermutation { image, decoration }
    }

    /// The identity with every point decorated the same way.
    pub fn identity(n: usize, decoration: Decoration) -> Self {
        DecoratedPermutation { image: (1..=n as u8).collect(), decoration: vec![Some(decoration); n] }
    }

    /// `π_{k,n}`, the permutation of the uniform positroid `U_{k,n}`: `i ↦ i + n - k (mod n)`.
    ///
    /// `π_{0,n}` is all loops and `π_{n,n}` all coloops.
    pub fn uniform(k: usize, n: usize) -> Self {
        assert!(k <= n && n >= 1, "need 0 <= k <= n and n >= 1");
        if k == 0 {
            return Self::identity(n, Decoration::Loop);
        }
        if k == n {
            return Self::identity(n, Decoration::Coloop);
        }
        let image = (1..=n).map(|i| ((i - 1 + n - k) % n + 1) as u8).collect();
        DecoratedPermutation { image, decoration: vec![None; n] }
    }

    pub fn n(&self) -> usize {
        self.image.len()
    }

    /// `σ(i)` (one-indexed).
    pub fn value(&self, i: usize) -> usize {
        self.image[i - 1] as usize
    }

    pub fn image(&self) -> Vec<usize> {
        self.image.iter().map(|&v| v as usize).collect()
    }

    pub(crate) fn raw_image(&self) -> &[u8] {
        &self.image
    }

    pub(crate) fn raw_decoration(&self) -> &[Option<Decoration>] {
        &self.decoration
    }

    pub fn decoration(&self, i: usize) -> Option<Decoration> {
        self.decoration[i - 1]
    }

    pub fn is_loop(&self, i: usize) -> bool {
        self.decoration(i) == Some(Decoration::Loop)
    }

    pub fn is_coloop(&self, i: usize) -> bool {
        self.decoration(i) == Some(Decoration::Coloop)
    }

    /// Position holding the value `v`.
    pub fn position_of(&self, v: usize) -> usize {
        self.image.iter().position(|&x| x as usize == v).expect("value in range") + 1
    }

    /// `W_i(σ)`: positions `j` with `σ(j) = j̄` or `j <_i σ(j)`.
    pub fn weak_excedances(&self, i: usize) -> IndexSet {
        let n = self.n();
        let mut out = IndexSet::EMPTY;
        for j in 1..=n {
            let v = self.value(j);
            let hit = if v == j { self.is_coloop(j) } else { position_in(i, j, n) < position_in(i, v, n) };
            if hit {
                out.insert(j);
            }
        }
        out
    }

    /// Number of weak excedances, which is the rank of the positroid.
    pub fn rank(&self) -> usize {
        self.weak_excedances(1).len()
    }

    /// The Grassmann necklace `(W_1(σ), ..., W_n(σ))`.
    pub fn necklace(&self) -> GrassmannNecklace {
        let n = self.n();
        let sets: Vec<IndexSet> = (1..=n).map(|i| self.weak_excedances(i)).collect();
        GrassmannNecklace { n, k: sets[0].len(), sets }
    }

    /// The positroid `P_σ`.
    pub fn positroid(&self) -> Matroid {
        self.necklace().positroid_unchecked()
    }

    /// Inverse permutation with loops and coloops exchanged, so that the positroid of the
    /// inverse is the dual of `P_σ`.
    pub fn inverse(&self) -> DecoratedPermutation {
        let n = self.n();
        let mut image = vec![0u8; n];
        for (pos, &v) in self.image.iter().enumerate() {
            image[v as usize - 1] = (pos + 1) as u8;
        }
        let decoration = self
            .decoration
            .iter()
            .map(|d| {
                d.map(|d| match d {
                    Decoration::Loop => Decoration::Coloop,
                    Decoration::Coloop => Decoration::Loop,
                })
            })
            .collect();
        DecoratedPermutation { image, decoration }
    }

    /// Short form for `n <= 9` without separators, e.g. `52̲6134` is written `52_6134`.
    pub fn to_compact_string(&self) -> String {
        let mut s = String::new();
        for (pos, &v) in self.image.iter().enumerate() {
            s.push_str(&v.to_string());
            s.push_str(decoration_suffix(self.decoration[pos]));
        }
        s
    }
}

fn decoration_suffix(d: Option<Decoration>) -> &'static str {
    match d {
        None => "",
        Some(Decoration::Loop) => "_",
        Some(Decoration::Coloop) => "^",
    }
}

impl fmt::Display for DecoratedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (pos, &v) in self.image.iter().enumerate() {
            if pos > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}{}", decoration_suffix(self.decoration[pos]))?;
        }
        Ok(())
    }
}

impl fmt::Debug for DecoratedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DecoratedPermutation({self})")
    }
}

impl FromStr for DecoratedPermutation {
    type Err = PositroidError;

    /// Parses `5,2_,6,1,3,4`: comma separated values, `_` marks a loop and `^` a coloop.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |reason: String| PositroidError::Parse { input: s.to_string(), reason };
        let mut image = Vec::new();
        let mut decoration = Vec::new();
        for token in s.trim().split(',').map(str::trim) {
            let (digits, d) = if let Some(t) = token.strip_suffix('_') {
                (t, Some(Decoration::Loop))
            } else if let Some(t) = token.strip_suffix('^') {
                (t, Some(Decoration::Coloop))
            } else {
                (token, None)
            };
            let v: usize = digits.trim().parse().map_err(|_| err(format!("bad entry {token:?}")))?;
            image.push(v);
            decoration.push(d);
        }
        DecoratedPermutation::new(image, decoration).map_err(|e| err(e.to_string()))
    }
}

impl Serialize for DecoratedPermutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for DecoratedPermutation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A Grassmann necklace of type `(k, n)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct GrassmannNecklace {
    n: usize,
    k: usize,
    sets: Vec<IndexSet>,
}

#[derive(Deserialize)]
struct NecklaceRepr {
    n: usize,
    k: usize,
    sets: Vec<IndexSet>,
}

impl<'de> Deserialize<'de> for GrassmannNecklace {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = NecklaceRepr::deserialize(deserializer)?;
        let necklace = GrassmannNecklace::new(repr.n, repr.sets).map_err(serde::de::Error::custom)?;
        if necklace.k != repr.k {
            return Err(serde::de::Error::custom(format!("k = {} but sets have size {}", repr.k, necklace.k)));
        }
        Ok(necklace)
    }
}

impl GrassmannNecklace {
    /// Validates sizes and the transition rule, reading indices cyclically (`I_{n+1} = I_1`).
    pub fn new(n: usize, sets: Vec<IndexSet>) -> Result<Self, PositroidError> {
        let bad = |index: usize, reason: String| Err(PositroidError::InvalidNecklace { index, reason });
        if n == 0 || n > MAX_GROUND_SET {
            return bad(0, format!("ground set size {n} outside 1..={MAX_GROUND_SET}"));
        }
        if sets.len() != n {
            return bad(0, format!("expected {n} sets, got {}", sets.len()));
        }
        let k = sets[0].len();
        for (idx, s) in sets.iter().enumerate() {
            if !s.within(n) {
                return bad(idx + 1, format!("{s} is not inside [{n}]"));
            }
            if s.len() != k {
                return bad(idx + 1, format!("{s} has size {} but I_1 has size {k}", s.len()));
            }
        }
        for i in 1..=n {
            let cur = sets[i - 1];
            let next = sets[i % n];
            if cur.contains(i) {
                if !cur.without(i).is_subset(next) {
                    return bad(i, format!("I_{} = {next} must contain I_{i} \\ {{{i}}}", i % n + 1));
                }
            } else if next != cur {
                return bad(i, format!("{i} is not in I_{i} = {cur}, so I_{} must equal it", i % n + 1));
            }
        }
        Ok(GrassmannNecklace { n, k, sets })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn sets(&self) -> &[IndexSet] {
        &self.sets
    }

    /// `I_i` (one-indexed).
    pub fn get(&self, i: usize) -> IndexSet {
        self.sets[i - 1]
    }

    /// The decorated permutation of this necklace.
    ///
    /// Where `I_{i+1} = (I_i \ {i}) ∪ {j}` with `j != i` the permutation sends `j` to `i`;
    /// where `I_{i+1} = I_i`, `i` is a coloop if it lies in `I_i` and a loop otherwise.
    pub fn to_permutation(&self) -> DecoratedPermutation {
        let n = self.n;
        let mut image = vec![0u8; n];
        let mut decoration = vec![None; n];
        for i in 1..=n {
            let cur = self.get(i);
            let next = self.sets[i % n];
            if next == cur {
                image[i - 1] = i as u8;
                decoration[i - 1] = Some(if cur.contains(i) { Decoration::Coloop } else { Decoration::Loop });
            } else {
                let j = next.difference(cur).min().expect("validated transition");
                image[j - 1] = i as u8;
            }
        }
        DecoratedPermutation { image, decoration }
    }

    /// Bases of the positroid: `k`-sets `B` with `I_i <=_i B` for every `i`.
    pub(crate) fn positroid_bases(&self) -> Vec<IndexSet> {
        let n = self.n;
        let mut bases: Vec<IndexSet> = IndexSet::k_subsets(n, self.k)
            .filter(|&b| (1..=n).all(|i| gale_leq_unchecked(i, self.get(i), b, n)))
            .collect();
        bases.sort();
        bases
    }

    pub(crate) fn positroid_unchecked(&self) -> Matroid {
        Matroid::from_sorted_unchecked(self.n, self.k, self.positroid_bases())
    }

    /// Whether `self` is contained in `other` entry by entry.
    pub fn is_contained_in(&self, other: &GrassmannNecklace) -> bool {
        self.n == other.n && self.sets.iter().zip(&other.sets).all(|(a, b)| a.is_subset(*b))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("necklace serializes")
    }
}

impl fmt::Display for GrassmannNecklace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let compact = self.n <= 9;
        f.write_str("(")?;
        for (idx, s) in self.sets.iter().enumerate() {
            if idx > 0 {
                f.write_str(if compact { "," } else { "; " })?;
            }
            // each I_i is written in the i-order, as in (12,23,34,41)
            let elements = s.sorted_in(idx + 1, self.n);
            if compact {
                for e in elements {
                    write!(f, "{e}")?;
                }
            } else {
                let parts: Vec<String> = elements.iter().map(|e| e.to_string()).collect();
                f.write_str(&parts.join(","))?;
            }
        }
        f.write_str(")")
    }
}

/// Necklace given by the Gale-minimal basis in each `i`-order.
pub fn necklace_from_matroid(m: &Matroid) -> GrassmannNecklace {
    let n = m.ground_size();
    let sets: Vec<IndexSet> = (1..=n)
        .map(|i| {
            let mut best = m.bases()[0];
            for &b in &m.bases()[1..] {
                if gale_leq_unchecked(i, b, best, n) {
                    best = b;
                }
            }
            assert!(
                m.bases().iter().all(|&b| gale_leq_unchecked(i, best, b, n)),
                "matroid bases have a unique {i}-Gale minimum"
            );
            best
        })
        .collect();
    GrassmannNecklace::new(n, sets).expect("Gale minima of a matroid form a necklace")
}

/// The positroid of a necklace, validated as a matroid.
pub fn bases_from_necklace(necklace: &GrassmannNecklace) -> Result<Matroid, PositroidError> {
    Ok(Matroid::from_bases(necklace.n, necklace.positroid_bases())?)
}

/// Whether `m` equals the positroid of its own necklace.
pub fn is_positroid(m: &Matroid) -> bool {
    necklace_from_matroid(m).positroid_bases() == m.bases()
}

/// The decorated permutation of a positroid, or [`PositroidError::NotAPositroid`] naming the
/// smallest positroid that contains `m`.
pub fn perm_from_matroid(m: &Matroid) -> Result<DecoratedPermutation, PositroidError> {
    let necklace = necklace_from_matroid(m);
    let perm = necklace.to_permutation();
    if necklace.positroid_bases() != m.bases() {
        return Err(PositroidError::NotAPositroid { containing: perm });
    }
    Ok(perm)
}

/// Parses a necklace from text.
///
/// Two forms are accepted: sets separated by `;` with comma separated elements
/// (`1,3; 3,4; ...`), or the compact digit form `(13,34,34,45,56,61)` for `n <= 9`.
/// Empty entries denote the empty set.
pub fn parse_necklace(text: &str) -> Result<GrassmannNecklace, PositroidError> {
    let err = |reason: &str| PositroidError::Parse { input: text.to_string(), reason: reason.to_string() };
    let body = text.trim().trim_start_matches('(').trim_end_matches(')');
    let mut raw: Vec<Vec<usize>> = Vec::new();
    if body.contains(';') {
        for part in body.split(';') {
            let mut set = Vec::new();
            for tok in part.split(',').map(str::trim).filter(|t| !t.is_empty()) {
                set.push(tok.parse().map_err(|_| err("expected integers"))?);
            }
            raw.push(set);
        }
    } else {
        for part in body.split(',') {
            let mut set = Vec::new();
            for ch in part.trim().chars() {
                set.push(ch.to_digit(10).ok_or_else(|| err("compact form takes single digits"))? as usize);
            }
            raw.push(set);
        }
    }
    let n = raw.len();
    let mut sets = Vec::with_capacity(n);
    for (idx, set) in raw.into_iter().enumerate() {
        let s = IndexSet::from_elements(n, set.iter().copied())
            .map_err(|e| PositroidError::InvalidNecklace { index: idx + 1, reason: e.to_string() })?;
        if s.len() != set.len() {
            return Err(PositroidError::InvalidNecklace { index: idx + 1, reason: "repeated element".into() });
        }
        sets.push(s);
    }
    GrassmannNecklace::new(n, sets)
}
