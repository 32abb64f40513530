//! Workloads shared by the simulator benchmarks.

use qai_core::{Circuit, Complex64, GateSpec, RandomSource, StandardGate, StateVector};

/// A random circuit over `{H, X, Y, Z, T, CNOT}` with `depth` gates.
pub fn random_circuit(n: usize, depth: usize, seed: u64) -> Circuit {
    const ONE_QUBIT: [StandardGate; 5] = [
        StandardGate::H,
        StandardGate::X,
        StandardGate::Y,
        StandardGate::Z,
        StandardGate::T,
    ];
    let mut rng = RandomSource::new(seed);
    let mut circuit = Circuit::new(n);
    for _ in 0..depth {
        let a = rng.below(n);
        let gate = if n > 1 && rng.below(6) == 5 {
            let b = (a + 1 + rng.below(n - 1)) % n;
            GateSpec::standard(StandardGate::Cnot, &[a, b])
        } else {
            GateSpec::standard(ONE_QUBIT[rng.below(ONE_QUBIT.len())], &[a])
        };
        circuit.push(gate.expect("valid gate")).expect("in range");
    }
    circuit
}

/// A normalized state with uniformly random complex amplitudes.
pub fn random_state(n: usize, seed: u64) -> StateVector {
    let mut rng = RandomSource::new(seed);
    let amps = (0..1usize << n)
        .map(|_| Complex64::new(rng.next_f64() - 0.5, rng.next_f64() - 0.5))
        .collect();
    StateVector::normalized(n, amps).expect("nonzero state")
}
