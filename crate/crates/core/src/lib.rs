//! Positroid combinatorics.
//!
//! Matroids by bases, Grassmann necklaces, decorated permutations, cyclic shift moves,
//! and the poset of positroid quotients on `[n]`.
//!
//! ```
//! use positroid::{DecoratedPermutation, IndexSet, shift_left, is_quotient};
//!
//! let pi = DecoratedPermutation::uniform(3, 6);
//! let sigma = shift_left(&pi, IndexSet::of(&[1, 4]));
//! assert_eq!(sigma.rank(), 2);
//! assert!(is_quotient(&sigma.positroid(), &pi.positroid()).unwrap());
//! ```

pub mod matroid;
pub mod order;
pub mod poset;
pub mod positroid;
pub mod shift;

use num_bigint::BigInt;
use num_rational::BigRational;

pub use matroid::{
    flags, is_quotient, is_quotient_by_rank, realize_uniform, uncovered_circuits, Exact, ExactMatrix, Flag, Matroid,
    MatroidError, RealizationReport, MAX_GROUND_SET,
};
pub use order::{cyclic_components, gale_leq, gale_leq_sorted, i_precedes, CyclicInterval, IndexSet, OrderError};
pub use poset::{
    build_poset, enumerate_decorated, uniform_quotient_census, CensusRow, Limits, PosetError, QuotientPoset,
};
pub use positroid::{
    bases_from_necklace, is_positroid, necklace_from_matroid, parse_necklace, perm_from_matroid, DecoratedPermutation,
    Decoration, GrassmannNecklace, PositroidError,
};
pub use shift::{
    circuit_cover_uniform, predicted_circuits, predicted_rank, shift_left, shift_right, Direction, FreezeSet,
    PredictedCircuits, ShiftError,
};

/// Arbitrary-precision integer matrices; the default for realizations.
pub type IntegerMatrix = ExactMatrix<BigInt>;
/// Exact rational matrices.
pub type RationalMatrix = ExactMatrix<BigRational>;
/// Fixed-width integer matrices for small random experiments.
pub type SmallIntMatrix = ExactMatrix<i64>;
