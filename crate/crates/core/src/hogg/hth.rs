use num_complex::Complex64;

use super::csp::{consistency, CspInstance};
use super::lattice::PhasePolicy;
use crate::qcore::{hadamard_all, StateVector, NORM_TOLERANCE};
use crate::{Error, Result};

/// Diagonal `T` of the HTH step, applied between the two Hadamard layers.
#[derive(Debug, Clone, PartialEq)]
pub enum HthMixer {
    /// `−1` on `|0…0⟩`, `+1` elsewhere. `H·T·H` is then the negated inversion
    /// about the average, and with `ρ = −1` on non-solutions each step is
    /// exactly one Grover iteration.
    ZeroReflection,
    /// `T_s = e^{iπ·c(s)}`, `c(s)` the number of nogoods in `s`.
    ConflictPhase,
    Custom(Vec<Complex64>),
}

impl HthMixer {
    pub fn name(&self) -> &'static str {
        match self {
            HthMixer::ZeroReflection => "zero-reflection",
            HthMixer::ConflictPhase => "conflict",
            HthMixer::Custom(_) => "custom",
        }
    }

    fn diagonal(&self, instance: &CspInstance) -> Result<Vec<Complex64>> {
        let dim = 1usize << instance.ground_size();
        let diag = match self {
            HthMixer::ZeroReflection => (0..dim)
                .map(|i| Complex64::new(if i == 0 { -1.0 } else { 1.0 }, 0.0))
                .collect(),
            HthMixer::ConflictPhase => {
                let report = consistency(instance);
                PhasePolicy::conflict_phase(&report).phases().to_vec()
            }
            HthMixer::Custom(d) => d.clone(),
        };
        if diag.len() != dim {
            return Err(Error::Dimension {
                expected: dim,
                found: diag.len(),
            });
        }
        Ok(diag)
    }
}

/// `H^{⊗N} · T · H^{⊗N} · ρ` applied to `state`.
pub fn hth_step(
    state: &StateVector,
    policy: &PhasePolicy,
    t_diag: &[Complex64],
) -> Result<StateVector> {
    let dim = state.dim();
    for found in [policy.phases().len(), t_diag.len()] {
        if found != dim {
            return Err(Error::Dimension {
                expected: dim,
                found,
            });
        }
    }
    if let Some(i) = t_diag
        .iter()
        .position(|p| (p.norm() - 1.0).abs() > NORM_TOLERANCE)
    {
        return Err(Error::NotUnitModulus(i));
    }
    let phased = state.apply_diagonal(|i| policy.phases()[i])?;
    let spread = hadamard_all(&phased);
    let turned = spread.apply_diagonal(|i| t_diag[i])?;
    Ok(hadamard_all(&turned))
}

/// States after `0..=steps` HTH steps, starting from the uniform superposition.
pub fn hth_trajectory(
    instance: &CspInstance,
    policy: &PhasePolicy,
    mixer: &HthMixer,
    steps: usize,
) -> Result<Vec<StateVector>> {
    let t_diag = mixer.diagonal(instance)?;
    let mut states = Vec::with_capacity(steps + 1);
    states.push(StateVector::uniform(instance.ground_size())?);
    for _ in 0..steps {
        let next = hth_step(states.last().expect("nonempty"), policy, &t_diag)?;
        states.push(next);
    }
    Ok(states)
}

#[derive(Debug, Clone)]
pub struct HthRun {
    pub policy: String,
    pub mixer: String,
    pub solution_count: usize,
    /// `P_solution` after each step; entry 0 is the uniform start.
    pub curve: Vec<f64>,
    pub final_state: StateVector,
}

pub fn run_hth(
    instance: &CspInstance,
    policy: &PhasePolicy,
    mixer: &HthMixer,
    steps: usize,
) -> Result<HthRun> {
    let report = consistency(instance);
    let solutions = report.solutions();
    let states = hth_trajectory(instance, policy, mixer, steps)?;
    let curve = states
        .iter()
        .map(|s| solutions.iter().map(|&i| s.probability(i as usize)).sum())
        .collect();
    Ok(HthRun {
        policy: policy.name().to_string(),
        mixer: mixer.name().to_string(),
        solution_count: solutions.len(),
        curve,
        final_state: states.into_iter().last().expect("nonempty"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn edge() -> CspInstance {
        CspInstance::graph_coloring(2, 2, &[(0, 1)]).unwrap()
    }

    #[test]
    fn zero_steps_is_uniform_guess() {
        let inst = edge();
        let report = consistency(&inst);
        let run = run_hth(&inst, &PhasePolicy::inconsistent_sign(&report), &HthMixer::ConflictPhase, 0)
            .unwrap();
        assert_eq!(run.curve.len(), 1);
        assert!((run.curve[0] - 2.0 / 16.0).abs() < 1e-15);
    }

    #[test]
    fn steps_preserve_norm() {
        let inst = CspInstance::graph_coloring(3, 2, &[(0, 1), (1, 2)]).unwrap();
        let report = consistency(&inst);
        let run = run_hth(&inst, &PhasePolicy::conflict_phase(&report), &HthMixer::ConflictPhase, 5)
            .unwrap();
        assert!((run.final_state.norm_sqr() - 1.0).abs() < 1e-9);
        assert!(run.curve.iter().all(|p| (0.0..=1.0 + 1e-12).contains(p)));
    }

    #[test]
    fn custom_mixer_checked() {
        let inst = edge();
        let policy = PhasePolicy::identity(4);
        let bad = HthMixer::Custom(vec![Complex64::new(1.0, 0.0); 3]);
        assert!(matches!(run_hth(&inst, &policy, &bad, 1), Err(Error::Dimension { .. })));
        let bad = HthMixer::Custom(vec![Complex64::new(2.0, 0.0); 16]);
        assert!(matches!(run_hth(&inst, &policy, &bad, 1), Err(Error::NotUnitModulus(0))));
    }
}
