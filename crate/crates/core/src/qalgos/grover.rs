use std::f64::consts::FRAC_PI_4;

use serde::Serialize;

use crate::qalgos::Oracle;
use crate::qcore::{apply_gate, measure_all, measure_qubit, GateSpec, StateVector, MAX_QUBITS};
use crate::{Complex64, Error, RandomSource, Result};

/// `⌊π/4 · √(2ⁿ/k)⌋`, at least 1 when `0 < k < 2ⁿ`; `⌊π/4 · √2ⁿ⌋` when `k = 0`.
pub fn default_iterations(n: usize, k: usize) -> usize {
    let size = (1u64 << n) as f64;
    if k == 0 {
        return (FRAC_PI_4 * size.sqrt()).floor() as usize;
    }
    let t = (FRAC_PI_4 * (size / k as f64).sqrt()).floor() as usize;
    if (k as f64) < size {
        t.max(1)
    } else {
        t
    }
}

/// `a ↦ 2·mean − a` on every amplitude.
pub fn inversion_about_average(state: &StateVector) -> StateVector {
    let amps = state.amplitudes();
    let mean = amps.iter().sum::<Complex64>() / amps.len() as f64;
    let out = amps.iter().map(|&a| 2.0 * mean - a).collect();
    StateVector::from_vec_unchecked(state.num_qubits(), out)
}

/// One phase flip on solutions followed by inversion about the average.
pub fn grover_iterate(state: &StateVector, oracle: &Oracle) -> StateVector {
    inversion_about_average(&state.phase_flip(|x| oracle.eval(x)))
}

/// Uniform start and every intermediate state, `iterations + 1` in total.
pub fn grover_states(oracle: &Oracle, iterations: usize) -> Result<Vec<StateVector>> {
    let mut states = Vec::with_capacity(iterations + 1);
    states.push(StateVector::uniform(oracle.n())?);
    for _ in 0..iterations {
        let next = grover_iterate(states.last().expect("non-empty"), oracle);
        states.push(next);
    }
    Ok(states)
}

pub fn success_probability(state: &StateVector, oracle: &Oracle) -> f64 {
    state
        .amplitudes()
        .iter()
        .enumerate()
        .filter(|&(x, _)| oracle.eval(x))
        .map(|(_, a)| a.norm_sqr())
        .sum()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GroverRun {
    pub n: usize,
    pub solution_count: usize,
    pub iterations: usize,
    pub success_probability: f64,
    /// `(iteration, success probability)` from 0 to `iterations`.
    pub curve: Vec<(usize, f64)>,
    pub outcome: String,
    pub value: usize,
    pub is_solution: bool,
    #[serde(skip)]
    pub final_state: StateVector,
}

pub fn grover_search(
    oracle: &Oracle,
    iterations: Option<usize>,
    rng: &mut RandomSource,
) -> Result<GroverRun> {
    let n = oracle.n();
    let iterations = iterations.unwrap_or_else(|| default_iterations(n, oracle.solution_count()));
    let states = grover_states(oracle, iterations)?;
    let curve: Vec<(usize, f64)> = states
        .iter()
        .enumerate()
        .map(|(t, s)| (t, success_probability(s, oracle)))
        .collect();
    let final_state = states.into_iter().last().expect("non-empty");
    let record = measure_all(&final_state, rng);
    Ok(GroverRun {
        n,
        solution_count: oracle.solution_count(),
        iterations,
        success_probability: curve[iterations].1,
        curve,
        is_solution: oracle.eval(record.value),
        outcome: record.outcome,
        value: record.value,
        final_state,
    })
}

/// Flips the ancilla (qubit 0) wherever `P` holds on the register above it.
fn bit_oracle(state: &StateVector, oracle: &Oracle) -> StateVector {
    let amps = state.amplitudes();
    let mut out = vec![Complex64::new(0.0, 0.0); amps.len()];
    for (i, &a) in amps.iter().enumerate() {
        out[i ^ usize::from(oracle.eval(i >> 1))] = a;
    }
    StateVector::from_vec_unchecked(state.num_qubits(), out)
}

fn register_hadamards(state: &StateVector) -> Result<StateVector> {
    let mut s = state.clone();
    for q in 1..state.num_qubits() {
        s = apply_gate(&s, &GateSpec::h(q))?;
    }
    Ok(s)
}

/// `H^⊗n (2|0⟩⟨0| − I) H^⊗n` on the register, ancilla untouched.
fn gate_diffusion(state: &StateVector) -> Result<StateVector> {
    let s = register_hadamards(state)?;
    let s = s.phase_flip(|i| i >> 1 != 0);
    register_hadamards(&s)
}

/// Ancilla formulation on `n + 1` qubits with `P(x)` computed into qubit 0.
/// Each iteration computes `P`, applies `Z` to the ancilla, uncomputes, then
/// diffuses the register. The returned state has `P` computed once more, so
/// the ancilla reads 1 exactly on solutions.
pub fn ancilla_grover_state(oracle: &Oracle, iterations: usize) -> Result<StateVector> {
    let n = oracle.n();
    if n + 1 > MAX_QUBITS {
        return Err(Error::QubitCount(n + 1));
    }
    let mut s = register_hadamards(&StateVector::zero(n + 1)?)?;
    for _ in 0..iterations {
        s = bit_oracle(&s, oracle);
        s = apply_gate(&s, &GateSpec::z(0))?;
        s = bit_oracle(&s, oracle);
        s = gate_diffusion(&s)?;
    }
    Ok(bit_oracle(&s, oracle))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AncillaGroverRun {
    pub iterations: usize,
    /// Probability that the ancilla reads 1.
    pub success_probability: f64,
    pub ancilla: usize,
    /// Register value after the ancilla measurement collapses the state.
    pub value: usize,
}

pub fn grover_search_ancilla(
    oracle: &Oracle,
    iterations: Option<usize>,
    rng: &mut RandomSource,
) -> Result<AncillaGroverRun> {
    let iterations =
        iterations.unwrap_or_else(|| default_iterations(oracle.n(), oracle.solution_count()));
    let state = ancilla_grover_state(oracle, iterations)?;
    let success_probability = (0..state.dim())
        .filter(|i| i & 1 == 1)
        .map(|i| state.probability(i))
        .sum();
    let flag = measure_qubit(&state, 0, rng)?;
    let register = measure_all(&flag.post_state, rng);
    Ok(AncillaGroverRun {
        iterations,
        success_probability,
        ancilla: flag.value,
        value: register.value >> 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn closed_form(n: usize, t: usize) -> f64 {
        let theta = (2f64.powi(-(n as i32) / 2)).asin();
        ((2 * t + 1) as f64 * theta).sin().powi(2)
    }

    #[test]
    fn defaults() {
        assert_eq!(default_iterations(2, 1), 1);
        assert_eq!(default_iterations(4, 1), 3);
        assert_eq!(default_iterations(10, 1), 25);
        assert_eq!(default_iterations(2, 0), 1);
        assert_eq!(default_iterations(2, 4), 0);
        assert_eq!(default_iterations(3, 7), 1);
    }

    #[test]
    fn two_qubits_one_iteration() {
        let o = Oracle::from_marked(2, &[2]).unwrap();
        let r = grover_search(&o, None, &mut RandomSource::new(0)).unwrap();
        assert_eq!(r.iterations, 1);
        assert!((r.success_probability - 1.0).abs() < 1e-9);
        assert_eq!(r.value, 2);
    }

    #[test]
    fn matches_closed_form() {
        let o = Oracle::from_marked(4, &[11]).unwrap();
        let r = grover_search(&o, Some(6), &mut RandomSource::new(0)).unwrap();
        for &(t, p) in &r.curve {
            assert!((p - closed_form(4, t)).abs() < 1e-12);
        }
        assert!((r.curve[3].1 - 0.961).abs() < 1e-3);
        assert!(r.curve[6].1 < r.curve[3].1);
        assert!((r.curve[0].1 - 1.0 / 16.0).abs() < 1e-15);
    }

    #[test]
    fn no_solutions_stays_flat() {
        let o = Oracle::new(3, |_| false).unwrap();
        let r = grover_search(&o, None, &mut RandomSource::new(0)).unwrap();
        assert!(r.curve.iter().all(|&(_, p)| p == 0.0));
        assert!(!r.is_solution);
    }

    #[test]
    fn inversion_fixed_point_and_involution() {
        let u = StateVector::uniform(3).unwrap();
        assert!(inversion_about_average(&u).approx_eq(&u));
        let c = |x: f64| Complex64::new(x, 0.0);
        let s = StateVector::from_amplitudes(2, vec![c(-0.5), c(0.5), c(0.5), c(0.5)]).unwrap();
        let once = inversion_about_average(&s);
        assert!(once.approx_eq(&StateVector::basis(2, 0).unwrap()));
        assert!(inversion_about_average(&once).approx_eq(&s));
    }

    #[test]
    fn ancilla_form_matches_phase_form() {
        let o = Oracle::from_marked(5, &[3, 17, 30]).unwrap();
        for t in 0..5 {
            let phase = grover_states(&o, t).unwrap().pop().unwrap();
            let anc = ancilla_grover_state(&o, t).unwrap();
            for x in 0..32 {
                let slot = (x << 1) | usize::from(o.eval(x));
                assert!((anc.amplitude(slot) - phase.amplitude(x)).norm() < 1e-9);
            }
            let r = grover_search_ancilla(&o, Some(t), &mut RandomSource::new(t as u64)).unwrap();
            assert!((r.success_probability - success_probability(&phase, &o)).abs() < 1e-9);
            assert_eq!(r.ancilla == 1, o.eval(r.value));
        }
    }
}
