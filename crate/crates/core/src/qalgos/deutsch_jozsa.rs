use serde::Serialize;

use crate::qalgos::Oracle;
use crate::qcore::{hadamard_all, measure_all, StateVector};
use crate::{RandomSource, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DjVerdict {
    Constant,
    Balanced,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DjResult {
    pub verdict: DjVerdict,
    pub outcome: String,
    /// Probability of the all-zeros outcome before measurement.
    pub p_zero: f64,
}

/// `H^⊗n`, one phase-oracle query, `H^⊗n`, measure. All zeros means constant.
pub fn deutsch_jozsa(f: &Oracle, rng: &mut RandomSource) -> Result<DjResult> {
    let start = StateVector::uniform(f.n())?;
    let queried = start.phase_flip(|x| f.eval(x));
    let out = hadamard_all(&queried);
    let p_zero = out.probability(0);
    let record = measure_all(&out, rng);
    let verdict = if record.value == 0 {
        DjVerdict::Constant
    } else {
        DjVerdict::Balanced
    };
    Ok(DjResult {
        verdict,
        outcome: record.outcome,
        p_zero,
    })
}
