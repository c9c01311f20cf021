//! Matrix product state simulation of qubit circuits.
//!
//! The state is kept as `Σ Γ_0 λ_0 Γ_1 λ_1 ⋯ Γ_{n-1}`, where each bond
//! vector `λ_s` holds the Schmidt coefficients across the cut after site
//! `s`. Gates on one, two or three qubits are applied by rebuilding the
//! affected tensors from Schmidt decompositions of reduced density
//! matrices; distant operands are first brought together by swaps.

pub mod gates;
mod state;
mod update;

pub use state::{Measurement, MpsState, STATE_VECTOR_LIMIT};
