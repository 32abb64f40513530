use num_complex::Complex64;
use serde::Serialize;

use super::csp::{consistency, ConsistencyReport, CspInstance};
use super::mixing::{MixingOperator, OverlapCoefficient};
use crate::qcore::{StateVector, NORM_TOLERANCE};
use crate::{Error, Result};

/// Amplitudes `ψ_s` over all subsets `s` of the ground set; `level(s) = |s|`.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeState {
    state: StateVector,
}

impl LatticeState {
    pub fn from_state(state: StateVector) -> Self {
        Self { state }
    }

    pub fn ground_size(&self) -> usize {
        self.state.num_qubits()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        self.state.amplitudes()
    }

    pub fn as_state(&self) -> &StateVector {
        &self.state
    }

    pub fn into_state(self) -> StateVector {
        self.state
    }

    /// Probability mass on sets of size `level`.
    pub fn level_mass(&self, level: usize) -> f64 {
        self.amplitudes()
            .iter()
            .enumerate()
            .filter(|(s, _)| s.count_ones() as usize == level)
            .map(|(_, a)| a.norm_sqr())
            .sum()
    }
}

/// Diagonal unit-modulus phase adjustment `ρ_s`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhasePolicy {
    name: String,
    phases: Vec<Complex64>,
}

impl PhasePolicy {
    pub fn from_phases(name: impl Into<String>, phases: Vec<Complex64>) -> Result<Self> {
        if !phases.len().is_power_of_two() {
            return Err(Error::InvalidInput(format!(
                "phase table length {} is not a power of two",
                phases.len()
            )));
        }
        if let Some(i) = phases
            .iter()
            .position(|p| (p.norm() - 1.0).abs() > NORM_TOLERANCE)
        {
            return Err(Error::NotUnitModulus(i));
        }
        Ok(Self {
            name: name.into(),
            phases,
        })
    }

    /// `ρ_s = 1` where `keep(s)`, `−1` otherwise.
    pub fn from_predicate(
        name: impl Into<String>,
        ground_size: usize,
        keep: impl Fn(u32) -> bool,
    ) -> Self {
        let phases = (0..1u32 << ground_size)
            .map(|s| Complex64::new(if keep(s) { 1.0 } else { -1.0 }, 0.0))
            .collect();
        Self {
            name: name.into(),
            phases,
        }
    }

    /// Control policy: no adjustment.
    pub fn identity(ground_size: usize) -> Self {
        Self::from_predicate("identity", ground_size, |_| true)
    }

    /// Negates every inconsistent set.
    pub fn inconsistent_sign(report: &ConsistencyReport) -> Self {
        Self::from_predicate("sign", report.ground_size(), |s| report.is_consistent(s))
    }

    /// `ρ_s = e^{iπ·c(s)}` with `c(s)` the number of nogoods inside `s`.
    pub fn conflict_phase(report: &ConsistencyReport) -> Self {
        let phases = (0..1u32 << report.ground_size())
            .map(|s| Complex64::from_polar(1.0, std::f64::consts::PI * report.conflict_count(s) as f64))
            .collect();
        Self {
            name: "conflict".into(),
            phases,
        }
    }

    /// The shipped policies: sign flip, conflict-count phase, identity.
    pub fn shipped(report: &ConsistencyReport) -> Vec<PhasePolicy> {
        vec![
            Self::inconsistent_sign(report),
            Self::conflict_phase(report),
            Self::identity(report.ground_size()),
        ]
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn phase(&self, set: u32) -> Complex64 {
        self.phases[set as usize]
    }

    pub fn phases(&self) -> &[Complex64] {
        &self.phases
    }
}

/// Whether a step adjusts phases before advancing a level or after.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StepOrder {
    #[default]
    PhaseThenMix,
    MixThenPhase,
}

/// `ψ_s = 1/√N_goods` on consistent level-`m` sets, zero elsewhere.
pub fn initial_state(instance: &CspInstance, level: usize) -> Result<LatticeState> {
    initial_state_from(&consistency(instance), level)
}

fn initial_state_from(report: &ConsistencyReport, level: usize) -> Result<LatticeState> {
    let goods = report.goods_at_level(level);
    if goods == 0 {
        return Err(Error::InvalidInput(format!(
            "no consistent set at level {level}"
        )));
    }
    let a = Complex64::new((goods as f64).sqrt().recip(), 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let amps = (0..1u32 << report.ground_size())
        .map(|s| {
            if s.count_ones() as usize == level && report.is_consistent(s) {
                a
            } else {
                zero
            }
        })
        .collect();
    Ok(LatticeState {
        state: StateVector::from_amplitudes(report.ground_size(), amps)?,
    })
}

/// One level of evolution: phases `ρ` and the mixing unitary, in `order`.
pub fn lattice_step(
    state: &LatticeState,
    policy: &PhasePolicy,
    mix: &MixingOperator,
    order: StepOrder,
) -> Result<LatticeState> {
    let dim = state.amplitudes().len();
    for found in [policy.phases.len(), mix.dim()] {
        if found != dim {
            return Err(Error::Dimension {
                expected: dim,
                found,
            });
        }
    }
    let phase = |amps: &mut [Complex64]| {
        amps.iter_mut()
            .zip(&policy.phases)
            .for_each(|(a, p)| *a *= p);
    };
    let amps = match order {
        StepOrder::PhaseThenMix => {
            let mut a = state.amplitudes().to_vec();
            phase(&mut a);
            mix.apply(&a)?
        }
        StepOrder::MixThenPhase => {
            let mut a = mix.apply(state.amplitudes())?;
            phase(&mut a);
            a
        }
    };
    Ok(LatticeState {
        state: StateVector::from_vec_unchecked(state.ground_size(), amps),
    })
}

/// Level-`j+1` amplitudes from the coefficient form
/// `ψ_r = Σ_k a_k Σ_{|r∩s|=k} ρ_s ψ_s`, summing over level-`j` sets `s`.
///
/// Only meaningful for states supported on level `j`; other entries are zero.
pub fn evolve_by_overlap(
    state: &LatticeState,
    policy: &PhasePolicy,
    coefficients: &[OverlapCoefficient],
    level: usize,
) -> Vec<Complex64> {
    let dim = state.amplitudes().len() as u32;
    let coeff = |k: usize| {
        coefficients
            .iter()
            .find(|c| c.overlap == k)
            .map_or(0.0, |c| c.value)
    };
    let sources: Vec<u32> = (0..dim)
        .filter(|s| s.count_ones() as usize == level)
        .collect();
    (0..dim)
        .map(|r| {
            if r.count_ones() as usize != level + 1 {
                return Complex64::new(0.0, 0.0);
            }
            sources
                .iter()
                .map(|&s| {
                    let k = (r & s).count_ones() as usize;
                    policy.phase(s) * state.amplitudes()[s as usize] * coeff(k)
                })
                .sum()
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LevelProbe {
    pub step: usize,
    pub level: usize,
    /// Mass on consistent sets at `level`; at the final level this is `P_solution`.
    pub p_consistent: f64,
}

#[derive(Debug, Clone)]
pub struct LatticeRun {
    pub policy: String,
    pub order: StepOrder,
    pub start_level: usize,
    pub final_level: usize,
    pub p_solution: f64,
    pub solution_count: usize,
    /// `#solutions / 2^N`: guessing a random subset.
    pub baseline_uniform: f64,
    /// `#solutions / C(N, L)`: guessing a random level-`L` set.
    pub baseline_level: f64,
    pub probes: Vec<LevelProbe>,
    pub final_state: LatticeState,
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Evolves from level `m` to the complete-assignment level `L = num_vars`.
pub fn run_lattice(
    instance: &CspInstance,
    policy: &PhasePolicy,
    start_level: usize,
    order: StepOrder,
) -> Result<LatticeRun> {
    let report = consistency(instance);
    let final_level = report.final_level();
    if start_level > final_level {
        return Err(Error::InvalidInput(format!(
            "start level {start_level} is above the final level {final_level}"
        )));
    }
    let n = instance.ground_size();
    let consistent_mass = |state: &LatticeState, level: usize| -> f64 {
        state
            .amplitudes()
            .iter()
            .enumerate()
            .filter(|&(s, _)| s.count_ones() as usize == level && report.is_consistent(s as u32))
            .map(|(_, a)| a.norm_sqr())
            .sum()
    };
    let mut state = initial_state_from(&report, start_level)?;
    let mut probes = vec![LevelProbe {
        step: 0,
        level: start_level,
        p_consistent: consistent_mass(&state, start_level),
    }];
    for (step, level) in (start_level..final_level).enumerate() {
        let mix = MixingOperator::for_level(n, level)?;
        state = lattice_step(&state, policy, &mix, order)?;
        probes.push(LevelProbe {
            step: step + 1,
            level: level + 1,
            p_consistent: consistent_mass(&state, level + 1),
        });
    }
    let p_solution = report
        .solutions()
        .iter()
        .map(|&s| state.amplitudes()[s as usize].norm_sqr())
        .sum();
    let k = report.solution_count();
    Ok(LatticeRun {
        policy: policy.name().to_string(),
        order,
        start_level,
        final_level,
        p_solution,
        solution_count: k,
        baseline_uniform: k as f64 / (1u64 << n) as f64,
        baseline_level: k as f64 / binomial(n, final_level),
        probes,
        final_state: state,
    })
}
