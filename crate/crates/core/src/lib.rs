//! Witness-based detection of impossible entanglement conversions.
//!
//! This crate decides, for pairs of bipartite quantum states (ρ, σ), whether
//! the conversion ρ → σ by PPT (positive-partial-transpose preserving)
//! operations can be ruled out. The core quantity is the negativity
//! N(ρ) = Tr[ρ^{Γ−}], the total weight of the negative eigenvalues of the
//! partial transpose ρ^Γ. On top of it the crate builds a family of no-go
//! conversion *witnesses*: functions W(ρ, σ) whose strict negativity certifies
//! that ρ cannot be converted into σ.
//!
//! The witnesses come in three layers:
//!
//! * [`witness::witness_n`] — the bare monotone difference N(ρ) − N(σ).
//! * [`witness::witness_wer_prime`] / [`witness::witness_iso_prime`] — bounds
//!   obtained by comparing Tr[F₋σ^{Γ−}] (flip-antisymmetric overlap) and
//!   ⟨Φ|σ^{Γ−}|Φ⟩ (maximally-entangled overlap) against support functions of
//!   the set of states with bounded negativity. These can fire when the
//!   negativity difference is blind.
//! * [`witness::witness_gamma`] — the combined witness, the minimum of the
//!   above, packaged into a [`witness::WitnessReport`] with per-witness
//!   verdicts; never weaker than the negativity comparison alone.
//!
//! Supporting machinery: exact state factories ([`states`]), entanglement
//! measures including Wootters concurrence and majorization tests
//! ([`measures`]), closed-form support functions h over Werner, isotropic and
//! generalized-Werner families ([`support`]), a local-unitary optimizer that
//! minimizes a witness over the orbit (U⊗V)σ(U⊗V)† ([`witness::witness_lu_min`]),
//! and randomized verification oracles ([`verify`]).
//!
//! Conventions used throughout:
//!
//! * Bipartite product basis |i⟩⊗|j⟩ ↦ row index i·d_B + j.
//! * The partial transpose acts on the **second** subsystem.
//! * Eigenvalues are reported in non-increasing order.

#![forbid(unsafe_code)]

pub mod measures;
pub mod operator;
pub mod states;
pub mod support;
pub mod verify;
pub mod witness;

use thiserror::Error;

/// Errors produced by construction and evaluation routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The input matrix is not square.
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    /// The declared subsystem dimensions do not factor the matrix size.
    #[error("subsystem dims {da}x{db} do not match matrix size {n}")]
    BadDims { da: usize, db: usize, n: usize },
    /// Two operators that must live on the same space do not.
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: String, right: String },
    /// The matrix deviates from its adjoint by more than the tolerance.
    #[error("matrix is not Hermitian: max |A - A^H| = {deviation:.3e} exceeds tol {tol:.3e}")]
    NotHermitian { deviation: f64, tol: f64 },
    /// A state matrix has a negative eigenvalue beyond tolerance.
    #[error("operator is not positive semidefinite: min eigenvalue {min_eig:.3e}")]
    NotPsd { min_eig: f64 },
    /// A state matrix does not have unit trace within tolerance.
    #[error("trace is {trace} but must be 1 within {tol:.0e}")]
    NotUnitTrace { trace: f64, tol: f64 },
    /// A family parameter lies outside its admissible range.
    #[error("invalid parameter {name}={value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },
    /// The source state has no negativity, so tilde-normalized quantities
    /// (and the refined witnesses built from them) are undefined.
    #[error("source state has zero negativity within tol {tol:.0e}; refined witnesses are undefined")]
    ZeroNegativity { tol: f64 },
    /// An operation that needs equal subsystem dimensions got a lopsided state.
    #[error("state has unequal subsystem dims {da}x{db}, expected d x d")]
    UnequalSubsystems { da: usize, db: usize },
    /// A two-qubit-only quantity was requested for other dimensions.
    #[error("state is not a two-qubit state (dims {da}x{db})")]
    NotTwoQubit { da: usize, db: usize },
    /// A pure-state-only quantity was requested for a mixed state.
    #[error("state is not pure (largest eigenvalue {lambda_max} < 1 - 1e-9)")]
    NotPure { lambda_max: f64 },
    /// Anything else that makes a request unanswerable.
    #[error("{0}")]
    Unsupported(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
