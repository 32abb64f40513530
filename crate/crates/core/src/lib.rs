//! Dense state-vector quantum simulation and the algorithm suite built on it.
//!
//! The [`qcore`] module holds the state vector, gates and measurement. Everything
//! else is layered on top of it:
//!
//! - [`qalgos`]: interferometer, interference comparison, Deutsch–Jozsa, Grover,
//!   QFT and Shor factoring.
//! - [`hogg`]: lattice-of-sets quantum search heuristics for constraint problems.
//! - [`qam`]: quantum associative memory (pattern storage and completion).
//! - [`qiga`]: quantum-inspired multi-universe genetic algorithm for the TSP.
//!
//! All stochastic operations take an explicit [`RandomSource`].

pub mod error;
pub mod hogg;
pub mod qalgos;
pub mod qam;
pub mod qcore;
pub mod qiga;
pub mod rng;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use qcore::{
    basis_state, hadamard_all, measure_all, measure_qubit, measure_qubits, tensor, Amplitude,
    Circuit, GateSpec, MeasurementRecord, Separability, StandardGate, StateVector, MAX_QUBITS,
};
pub use rng::RandomSource;
