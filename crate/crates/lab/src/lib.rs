//! Simulation laboratory for predicting Pauli expectation values of unknown
//! n-qubit states with quantum, classical-shadow, and restricted-classical
//! learners, plus exact small-scale verification of the information-theoretic
//! machinery that separates them.
//!
//! The crate is organized around six subsystems:
//!
//! - [`pauli`]: bit-packed Pauli strings in symplectic GF(2) form, Bell-basis
//!   sign tables, and letter encoding.
//! - [`gf2`]: dense GF(2) linear algebra (elimination, solving, rank tracking).
//! - [`state`]: the learnable state families and their exact samplers, plus a
//!   dense small-n oracle.
//! - [`tableau`]: Clifford tableaux, exactly uniform random Clifford sampling,
//!   and Pauli conjugation.
//! - [`quantum`] / [`classical`]: the learning strategies whose copy
//!   consumption the experiments compare.
//! - [`bounds`]: exact numerical checks of packing nets, ERM, Holevo
//!   quantities, total-variation bounds, and related lemmas.
//! - [`experiment`]: the seeded, reproducible experiment harness behind the
//!   `lab` binary.
//!
//! Conventions used throughout: a single-qubit Pauli is encoded by two bits
//! as I=(x:0,z:0), X=(1,0), Z=(0,1), Y=(1,1); the enumeration index of a
//! letter is `x + 2z` (so the n=1 order is I, X, Z, Y) and qubit 0 is the
//! fastest-varying digit as well as the leftmost letter in string form.

pub mod bits;
pub mod bounds;
pub mod classical;
pub mod dense;
pub mod experiment;
pub mod gf2;
pub mod pauli;
pub mod quantum;
pub mod state;
pub mod tableau;

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid Pauli letter {0:?}")]
    InvalidLetter(char),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("dense oracle cap exceeded: {0}")]
    DenseCapExceeded(String),
    #[error("empty Bell memory")]
    EmptyMemory,
    #[error("candidate set too large to enumerate (nullity {0})")]
    TooManyCandidates(usize),
    #[error("infeasible experiment cell: {0}")]
    Infeasible(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
