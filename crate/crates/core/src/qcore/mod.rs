//! State vectors, gates and measurement.
//!
//! Basis index `i` encodes the ket `|b_{n-1} … b_0⟩` with `i = Σ b_k 2^k`: the
//! leftmost ket symbol is the highest bit and "qubit k" is bit `k` of the index.

mod gate;
mod measure;
mod state;

pub use gate::{apply_gate, hadamard_all, standard_gate, Circuit, GateSpec, StandardGate};
pub(crate) use measure::sample_weighted;
pub use measure::{measure_all, measure_qubit, measure_qubits, MeasurementRecord};
pub(crate) use state::check_qubit_count;
pub use state::{
    basis_state, bit_label, is_separable_2q, parse_bit_label, tensor, Amplitude, Separability,
    StateVector,
};

/// Largest supported register (2^24 amplitudes, 256 MiB of complex doubles).
pub const MAX_QUBITS: usize = 24;
/// Tolerance on unit norm and gate unitarity.
pub const NORM_TOLERANCE: f64 = 1e-10;
/// Tolerance on per-amplitude state equality.
pub const STATE_TOLERANCE: f64 = 1e-9;
