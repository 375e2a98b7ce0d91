//! Exact enumeration of pattern-avoiding linear extensions of k-ary heap
//! posets and rectangular posets, their inversion q-polynomials, and the
//! machinery to verify the associated closed forms, recurrences, and OEIS
//! coefficient identities against independent oracles.

pub mod error;
pub mod heap;
pub mod oeis;
pub mod perm;
pub mod poset;
pub mod qpoly;
pub mod qseries;

pub use error::{Error, Result};
pub use heap::{GrowthRow, GrowthTable};
pub use perm::{PatternSet, Permutation};
pub use poset::{LabeledPoset, PosetFamily};
pub use qpoly::{QLaurent, QPolynomial, XSeries};
pub use qseries::{DiagonalKind, Report};
