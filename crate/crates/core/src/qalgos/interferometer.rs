use serde::Serialize;

use crate::qcore::{apply_gate, measure_qubit, GateSpec, StateVector};
use crate::{Error, RandomSource, Result};

/// Beam-splitter experiment layout. Each half-silvered mirror is a Hadamard on
/// the photon's path qubit; detector `0` (A) and `1` (B) read the final path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct InterferometerSetup {
    /// 1 (single splitter) or 2 (splitter, mirrors, splitter).
    pub splitters: u8,
    /// Absorbing screen on path `1` between the splitters.
    pub block_path: bool,
    /// Which-path measurement between the splitters.
    pub mid_measurement: bool,
}

impl InterferometerSetup {
    pub const SINGLE: Self = Self {
        splitters: 1,
        block_path: false,
        mid_measurement: false,
    };
    pub const DOUBLE: Self = Self {
        splitters: 2,
        block_path: false,
        mid_measurement: false,
    };
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DetectorStats {
    pub setup: InterferometerSetup,
    pub trials: usize,
    /// Photons stopped by the screen.
    pub absorbed: usize,
    pub counts: [usize; 2],
    /// Fraction of detected photons at each detector.
    pub frequencies: [f64; 2],
    /// Exact per-detector probability for a detected photon.
    pub exact: [f64; 2],
}

fn splitter(state: &StateVector) -> StateVector {
    apply_gate(state, &GateSpec::h(0)).expect("single-qubit register")
}

/// Exact detector probabilities from amplitudes (no sampling).
fn exact_probabilities(setup: &InterferometerSetup) -> [f64; 2] {
    let after_first = splitter(&StateVector::zero(1).expect("1 qubit"));
    if setup.splitters == 1 {
        return [after_first.probability(0), after_first.probability(1)];
    }
    if !setup.block_path && !setup.mid_measurement {
        let out = splitter(&after_first);
        return [out.probability(0), out.probability(1)];
    }
    // Incoherent mixture over the surviving paths.
    let paths: &[usize] = if setup.block_path { &[0] } else { &[0, 1] };
    let weight: f64 = paths.iter().map(|&p| after_first.probability(p)).sum();
    let mut probs = [0.0; 2];
    for &p in paths {
        let out = splitter(&StateVector::basis(1, p).expect("path index"));
        for (d, slot) in probs.iter_mut().enumerate() {
            *slot += after_first.probability(p) / weight * out.probability(d);
        }
    }
    probs
}

pub fn interferometer(
    setup: InterferometerSetup,
    trials: usize,
    rng: &mut RandomSource,
) -> Result<DetectorStats> {
    if trials == 0 {
        return Err(Error::InvalidInput("need at least one trial".into()));
    }
    match setup.splitters {
        1 if setup.block_path || setup.mid_measurement => {
            return Err(Error::InvalidInput(
                "screen and mid-measurement need two splitters".into(),
            ))
        }
        1 | 2 => {}
        k => return Err(Error::InvalidInput(format!("{k} splitters not supported"))),
    }
    let source = StateVector::zero(1)?;
    let mut counts = [0usize; 2];
    let mut absorbed = 0;
    for _ in 0..trials {
        let mut photon = splitter(&source);
        if setup.splitters == 2 {
            if setup.block_path || setup.mid_measurement {
                let path = measure_qubit(&photon, 0, rng)?;
                if setup.block_path && path.value == 1 {
                    absorbed += 1;
                    continue;
                }
                photon = path.post_state;
            }
            photon = splitter(&photon);
        }
        counts[measure_qubit(&photon, 0, rng)?.value] += 1;
    }
    let detected = (counts[0] + counts[1]).max(1) as f64;
    Ok(DetectorStats {
        setup,
        trials,
        absorbed,
        counts,
        frequencies: [counts[0] as f64 / detected, counts[1] as f64 / detected],
        exact: exact_probabilities(&setup),
    })
}
