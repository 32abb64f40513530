use std::f64::consts::TAU;

use crate::qcore::{check_qubit_count, Circuit, GateSpec, StateVector};
use crate::Result;

/// Hadamards and controlled phases only; the final qubit reversal is a
/// relabelling applied by [`qft`] and is not part of the circuit.
pub fn qft_circuit(n: usize) -> Result<Circuit> {
    check_qubit_count(n)?;
    let mut circuit = Circuit::new(n);
    for j in (0..n).rev() {
        circuit.push(GateSpec::h(j))?;
        for k in (0..j).rev() {
            let theta = TAU / (1u64 << (j - k + 1)) as f64;
            circuit.push(GateSpec::controlled_phase(k, j, theta)?)?;
        }
    }
    Ok(circuit)
}

pub fn qft_gate_count(n: usize) -> usize {
    n * (n + 1) / 2
}

/// Swaps qubit `k` with qubit `n − 1 − k` for every `k`.
pub fn reverse_qubits(state: &StateVector) -> StateVector {
    let n = state.num_qubits();
    let shift = usize::BITS as usize - n;
    let amps = state.amplitudes();
    let out = (0..amps.len())
        .map(|i| amps[if n == 0 { 0 } else { i.reverse_bits() >> shift }])
        .collect();
    StateVector::from_vec_unchecked(n, out)
}

/// `|a⟩ ↦ 2^{−n/2} Σ_c e^{2πi·ca/2ⁿ} |c⟩`.
pub fn qft(state: &StateVector) -> Result<StateVector> {
    let circuit = qft_circuit(state.num_qubits())?;
    Ok(reverse_qubits(&circuit.apply(state)?))
}
