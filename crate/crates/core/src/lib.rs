//! Quantum error correction with coherent-state probe modes.
//!
//! Qubits never interact directly: every syndrome is read from the phase a
//! coherent probe picks up while passing the qubits
//! (`|1>|alpha> -> |1>|alpha e^{i theta}>`). On top of the hybrid
//! qubit-probe state ([`state`]) and the probe read-outs ([`measurement`])
//! the crate builds the parity and symmetrizer gates ([`gates`]), the
//! bit-flip/phase-flip, Shor and erasure codes ([`codes`]), error channels
//! ([`noise`]) and a seeded Monte Carlo harness ([`experiments`]).

pub mod cli;
pub mod codes;
pub mod config;
pub mod error;
pub mod experiments;
pub mod gates;
pub mod measurement;
pub mod noise;
pub mod state;

pub use error::{Error, Result};
pub use state::{Backend, Basis, Gate1, HybridState, ProbeId, ProbeMode, QubitInit};
