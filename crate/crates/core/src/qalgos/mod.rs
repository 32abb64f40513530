//! Named quantum algorithms built on [`crate::qcore`].

mod deutsch_jozsa;
mod grover;
mod interference;
mod interferometer;
mod oracle;
mod qft;
mod shor;

pub use deutsch_jozsa::{deutsch_jozsa, DjResult, DjVerdict};
pub use grover::{
    ancilla_grover_state, default_iterations, grover_iterate, grover_search,
    grover_search_ancilla, grover_states, inversion_about_average, success_probability,
    AncillaGroverRun, GroverRun,
};
pub use interference::{classical_vs_quantum_p0, P0Comparison, TransitionModel};
pub use interferometer::{interferometer, DetectorStats, InterferometerSetup};
pub use oracle::Oracle;
pub use qft::{qft, qft_circuit, qft_gate_count, reverse_qubits};
pub use shor::{
    classical_precheck, continued_fraction_convergents, extract_period, gcd, mod_pow,
    measure_value_register, modexp_superposition, register_width, shor_attempt, shor_factor, AttemptOutcome,
    ShorAttempt, ShorRun, ShorStatus, MAX_MODULUS,
};
