//! Pauli strings and sums of them.
//!
//! Qubit 0 is the leftmost character when rendered, and the outermost tensor
//! factor when converted to a matrix.

mod format;
mod string;
mod sum;

pub use format::PauliSumRecord;
pub use string::{Pauli, PauliString, Phase};
pub use sum::{cmp_sums, multiply, PauliSum, PauliTerm, DEFAULT_RELATIVE_DROP};
