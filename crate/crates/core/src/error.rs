use thiserror::Error;

use crate::pauli::{PauliString, PauliSum};

pub type Result<T> = std::result::Result<T, SwtError>;

#[derive(Debug, Error)]
pub enum SwtError {
    #[error("qubit count mismatch: {left} vs {right}")]
    QubitMismatch { left: usize, right: usize },

    #[error("mode index {mode} out of range for {n_modes} modes")]
    ModeOutOfRange { mode: usize, n_modes: usize },

    #[error("invalid Pauli string {text:?}: {reason}")]
    InvalidPauli { text: String, reason: String },

    #[error("invalid model parameters: {0}")]
    InvalidParams(String),

    #[error("dense representation limited to {max} qubits, got {n}")]
    TooLarge { n: usize, max: usize },

    #[error("matrix dimension {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("ansatz closure not reached within depth {depth} ({frontier} directions still pending)")]
    ClosureNotReached { depth: usize, frontier: usize },

    /// The off-diagonal part could not be removed at first order. `unmatched` is the
    /// leftover `[S, H0] + Hv`; `unreachable` lists the off-diagonal input strings that
    /// still appear in it.
    #[error("first-order elimination infeasible: residual {residual:.3e} on {} strings", unreachable.len())]
    EliminationInfeasible {
        residual: f64,
        unmatched: PauliSum,
        unreachable: Vec<PauliString>,
    },

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}
