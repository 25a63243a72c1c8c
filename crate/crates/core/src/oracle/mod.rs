//! Exact dense-matrix reference implementations used to check the symbolic pipeline.

mod dense;
mod generator;
mod spectral;

pub use dense::{conjugate, pauli_decompose, to_matrix, DenseOperator, MAX_DENSE_QUBITS};
pub use generator::{
    default_degeneracy_tol, exact_generator_dense, DegeneracyReport, DegeneratePair,
    DEFAULT_DEGENERACY_REL,
};
pub use spectral::{spectral_compare, SpectralReport};
