use super::state::{bit_label, Amplitude, StateVector};
use crate::{Error, RandomSource, Result};

/// Outcome of a projective measurement in the computational basis.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementRecord {
    /// Measured bits, first character = first measured qubit as listed.
    pub outcome: String,
    /// Outcome as an integer (first listed qubit is the high bit).
    pub value: usize,
    /// Born probability of the outcome in the pre-measurement state.
    pub probability: f64,
    pub post_state: StateVector,
}

/// Inverse-CDF sampling from one uniform draw. Zero-weight entries are never chosen.
pub(crate) fn sample_weighted(weights: &[f64], rng: &mut RandomSource) -> usize {
    let total: f64 = weights.iter().sum();
    let target = rng.next_f64() * total;
    let mut acc = 0.0;
    let mut last_nonzero = 0;
    for (i, &w) in weights.iter().enumerate() {
        if w <= 0.0 {
            continue;
        }
        acc += w;
        last_nonzero = i;
        if acc > target {
            return i;
        }
    }
    last_nonzero
}

/// Measures every qubit; the post-state is the observed basis state.
pub fn measure_all(state: &StateVector, rng: &mut RandomSource) -> MeasurementRecord {
    let probs = state.probabilities();
    let index = sample_weighted(&probs, rng);
    MeasurementRecord {
        outcome: bit_label(index, state.num_qubits()),
        value: index,
        probability: probs[index],
        post_state: StateVector::basis(state.num_qubits(), index).expect("index within state"),
    }
}

/// Measures qubit `k` and renormalizes the surviving branch.
pub fn measure_qubit(
    state: &StateVector,
    k: usize,
    rng: &mut RandomSource,
) -> Result<MeasurementRecord> {
    measure_qubits(state, &[k], rng)
}

/// Jointly measures `qubits`. The outcome string lists them in the given order.
pub fn measure_qubits(
    state: &StateVector,
    qubits: &[usize],
    rng: &mut RandomSource,
) -> Result<MeasurementRecord> {
    let n = state.num_qubits();
    for (i, &q) in qubits.iter().enumerate() {
        if q >= n {
            return Err(Error::QubitIndex {
                index: q,
                num_qubits: n,
            });
        }
        if qubits[..i].contains(&q) {
            return Err(Error::InvalidInput(format!("qubit {q} measured twice")));
        }
    }
    if qubits.is_empty() {
        return Err(Error::InvalidInput("no qubits to measure".into()));
    }
    let key = |index: usize| {
        qubits
            .iter()
            .fold(0usize, |acc, &q| acc << 1 | (index >> q & 1))
    };
    let mut marginals = vec![0.0; 1 << qubits.len()];
    for (i, a) in state.amplitudes().iter().enumerate() {
        marginals[key(i)] += a.norm_sqr();
    }
    let value = sample_weighted(&marginals, rng);
    let probability = marginals[value];
    let scale = probability.sqrt().recip();
    let amps = state
        .amplitudes()
        .iter()
        .enumerate()
        .map(|(i, &a)| {
            if key(i) == value {
                a * scale
            } else {
                Amplitude::new(0.0, 0.0)
            }
        })
        .collect();
    Ok(MeasurementRecord {
        outcome: bit_label(value, qubits.len()),
        value,
        probability,
        post_state: StateVector::normalized(n, amps)?,
    })
}
