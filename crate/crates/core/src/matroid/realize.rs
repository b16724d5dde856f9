//! Exact matrices and the Vandermonde realization of uniform matroids.
//!
//! Everything here is generic over an exact scalar (machine integers, `BigInt`,
//! `BigRational`). Determinants use fraction-free Bareiss elimination, whose divisions
//! are exact in any integral domain.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, Signed};

use super::{Matroid, MatroidError, MAX_GROUND_SET};
use crate::order::IndexSet;

/// Scalars with exact arithmetic. Floating point types deliberately do not qualify.
pub trait Exact: Num + Signed + Clone + PartialOrd + fmt::Debug + fmt::Display {}

impl Exact for i32 {}
impl Exact for i64 {}
impl Exact for i128 {}
impl Exact for BigInt {}
impl Exact for BigRational {}

/// A dense `rows x cols` matrix over an exact scalar.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExactMatrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<T>,
}

impl<T: Exact> ExactMatrix<T> {
    /// Builds a matrix from `rows * cols` entries in row-major order.
    pub fn new(rows: usize, cols: usize, entries: Vec<T>) -> Result<Self, MatroidError> {
        if entries.len() != rows * cols {
            return Err(MatroidError::BadShape { rows, cols });
        }
        Ok(ExactMatrix { rows, cols, entries })
    }

    /// Builds a matrix from a list of rows.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, MatroidError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(MatroidError::BadShape { rows: r, cols: c });
        }
        Ok(ExactMatrix { rows: r, cols: c, entries: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.entries[r * self.cols + c]
    }

    /// Determinant of the square submatrix on the given (one-indexed) columns.
    pub fn minor(&self, columns: IndexSet) -> T {
        assert_eq!(columns.len(), self.rows, "maximal minors need exactly `rows` columns");
        let cols: Vec<usize> = columns.iter().map(|c| c - 1).collect();
        let size = self.rows;
        let mut m: Vec<T> = Vec::with_capacity(size * size);
        for r in 0..size {
            for &c in &cols {
                m.push(self.get(r, c).clone());
            }
        }
        bareiss_determinant(m, size)
    }

    /// All maximal minors, keyed by column set in canonical order.
    pub fn maximal_minors(&self) -> Vec<(IndexSet, T)> {
        let mut sets: Vec<IndexSet> = IndexSet::k_subsets(self.cols, self.rows).collect();
        sets.sort();
        sets.into_iter().map(|s| (s, self.minor(s))).collect()
    }

    /// The matroid of column sets with nonzero maximal minor.
    pub fn matroid(&self) -> Result<Matroid, MatroidError> {
        if self.rows > self.cols || self.cols > MAX_GROUND_SET || self.cols == 0 {
            return Err(MatroidError::BadShape { rows: self.rows, cols: self.cols });
        }
        let bases: Vec<IndexSet> =
            self.maximal_minors().into_iter().filter(|(_, d)| !d.is_zero()).map(|(s, _)| s).collect();
        if bases.is_empty() {
            return Err(MatroidError::EmptyBases);
        }
        Ok(Matroid::from_sorted_unchecked(self.cols, self.rows, bases))
    }
}

impl<T: Exact> fmt::Display for ExactMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(1);
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| format!("{:>width$}", cells[r * self.cols + c])).collect();
            writeln!(f, "[ {} ]", row.join(" "))?;
        }
        Ok(())
    }
}

fn bareiss_determinant<T: Exact>(mut m: Vec<T>, size: usize) -> T {
    if size == 0 {
        return T::one();
    }
    let at = |r: usize, c: usize| r * size + c;
    let mut negate = false;
    let mut prev = T::one();
    for p in 0..size - 1 {
        if m[at(p, p)].is_zero() {
            let Some(swap) = (p + 1..size).find(|&r| !m[at(r, p)].is_zero()) else {
                return T::zero();
            };
            for c in 0..size {
                m.swap(at(p, c), at(swap, c));
            }
            negate = !negate;
        }
        for i in p + 1..size {
            for j in p + 1..size {
                let v = (m[at(i, j)].clone() * m[at(p, p)].clone() - m[at(i, p)].clone() * m[at(p, j)].clone())
                    / prev.clone();
                m[at(i, j)] = v;
            }
        }
        prev = m[at(p, p)].clone();
    }
    let det = m[at(size - 1, size - 1)].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// `∏ (a_j - a_i)` over pairs `i < j` of chosen columns.
pub fn vandermonde_product<T: Exact>(points: &[T], columns: IndexSet) -> T {
    let cols: Vec<usize> = columns.iter().collect();
    let mut acc = T::one();
    for (idx, &i) in cols.iter().enumerate() {
        for &j in &cols[idx + 1..] {
            acc = acc * (points[j - 1].clone() - points[i - 1].clone());
        }
    }
    acc
}

/// The `k x n` matrix whose row `r` holds `a_j^(r-1)`; its maximal minors are Vandermonde
/// determinants, hence positive when `0 < a_1 < ... < a_n`.
pub fn realize_uniform<T: Exact>(k: usize, n: usize, points: &[T]) -> Result<ExactMatrix<T>, MatroidError> {
    if k > n {
        return Err(MatroidError::RankOutOfRange { k, n });
    }
    if points.len() != n {
        return Err(MatroidError::PointCountMismatch { expected: n, found: points.len() });
    }
    for (idx, p) in points.iter().enumerate() {
        let ok = if idx == 0 { p.is_positive() } else { *p > points[idx - 1] };
        if !ok {
            return Err(MatroidError::NonIncreasingPoints { position: idx + 1 });
        }
    }
    let entries = (0..k).flat_map(|r| points.iter().map(move |a| num_traits::pow(a.clone(), r))).collect();
    ExactMatrix::new(k, n, entries)
}

/// One maximal minor next to its closed-form Vandermonde value.
#[derive(Clone, Debug, PartialEq)]
pub struct MinorCheck<T> {
    pub columns: IndexSet,
    pub minor: T,
    pub product: T,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RealizationReport<T> {
    pub minors: Vec<MinorCheck<T>>,
}

impl<T: Exact> RealizationReport<T> {
    /// Computes every maximal minor of `matrix` and pairs it with the product formula.
    pub fn verify(matrix: &ExactMatrix<T>, points: &[T]) -> Self {
        let minors = matrix
            .maximal_minors()
            .into_iter()
            .map(|(columns, minor)| MinorCheck { product: vandermonde_product(points, columns), columns, minor })
            .collect();
        RealizationReport { minors }
    }

    pub fn all_positive(&self) -> bool {
        self.minors.iter().all(|m| m.minor.is_positive())
    }

    pub fn all_match(&self) -> bool {
        self.minors.iter().all(|m| m.minor == m.product)
    }

    pub fn holds(&self) -> bool {
        self.all_positive() && self.all_match()
    }
}

impl<T: Exact> ExactMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, entries: vec![T::zero(); rows * cols] }
    }

    pub fn set(&mut self, r: usize, c: usize, value: T) {
        let idx = r * self.cols + c;
        self.entries[idx] = value;
    }

    /// The square identity matrix.
    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size, size);
        for i in 0..size {
            m.set(i, i, T::one());
        }
        m
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows);
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = T::zero();
                for l in 0..self.cols {
                    acc = acc + self.get(i, l).clone() * rhs.get(l, j).clone();
                }
                out.set(i, j, acc);
            }
        }
        out
    }
}
