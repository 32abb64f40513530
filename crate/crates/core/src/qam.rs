//! Quantum associative memory.
//!
//! Patterns are stored as an equal superposition of their basis states. A
//! partial query marks every basis state agreeing with its known bits, and
//! amplitude amplification over the stored distribution completes it.

use std::f64::consts::FRAC_PI_4;

use serde::Serialize;

use crate::qalgos::inversion_about_average;
use crate::qcore::{bit_label, check_qubit_count, measure_all, StateVector};
use crate::{Complex64, Error, RandomSource, Result};

/// Distinct `n`-bit patterns. The leftmost character of a pattern string is
/// its highest bit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PatternSet {
    n: usize,
    patterns: Vec<usize>,
}

impl PatternSet {
    pub fn new(n: usize, patterns: Vec<usize>) -> Result<Self> {
        check_qubit_count(n)?;
        if patterns.is_empty() {
            return Err(Error::InvalidInput("pattern set is empty".into()));
        }
        if let Some(&p) = patterns.iter().find(|&&p| p >> n != 0) {
            return Err(Error::InvalidInput(format!("pattern {p} does not fit in {n} bits")));
        }
        let mut sorted = patterns.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidInput("patterns must be distinct".into()));
        }
        Ok(Self { n, patterns })
    }

    pub fn from_strings<S: AsRef<str>>(items: &[S]) -> Result<Self> {
        let first = items
            .first()
            .ok_or_else(|| Error::InvalidInput("pattern set is empty".into()))?;
        let n = first.as_ref().len();
        let patterns = items
            .iter()
            .map(|s| parse_bits(s.as_ref(), n))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, patterns)
    }

    /// One binary string per line; blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut n = None;
        let mut patterns = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let width = *n.get_or_insert(line.len());
            if line.len() != width {
                return Err(Error::parse(
                    i + 1,
                    1,
                    format!("pattern length {} differs from {width}", line.len()),
                ));
            }
            if let Some(col) = line.find(|c| c != '0' && c != '1') {
                return Err(Error::parse(i + 1, col + 1, "expected 0 or 1"));
            }
            patterns.push(usize::from_str_radix(line, 2).expect("validated binary"));
        }
        let n = n.ok_or_else(|| Error::parse(1, 1, "no patterns"))?;
        Self::new(n, patterns)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn patterns(&self) -> &[usize] {
        &self.patterns
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }
}

fn parse_bits(s: &str, n: usize) -> Result<usize> {
    if s.len() != n || s.is_empty() || !s.bytes().all(|b| b == b'0' || b == b'1') {
        return Err(Error::BadLabel(s.to_string()));
    }
    Ok(usize::from_str_radix(s, 2).expect("validated binary"))
}

/// Known bits of a pattern, written over `{0, 1, ?}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PartialPattern {
    n: usize,
    mask: usize,
    value: usize,
}

impl PartialPattern {
    pub fn parse(query: &str) -> Result<Self> {
        let n = query.chars().count();
        check_qubit_count(n)?;
        let (mut mask, mut value) = (0, 0);
        for (i, ch) in query.chars().enumerate() {
            let bit = 1 << (n - 1 - i);
            match ch {
                '0' => mask |= bit,
                '1' => {
                    mask |= bit;
                    value |= bit;
                }
                '?' => {}
                _ => return Err(Error::BadLabel(query.to_string())),
            }
        }
        if mask == 0 {
            return Err(Error::InvalidInput("query has no known bits".into()));
        }
        Ok(Self { n, mask, value })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matches(&self, x: usize) -> bool {
        x & self.mask == self.value
    }
}

impl std::fmt::Display for PartialPattern {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for k in (0..self.n).rev() {
            let c = match (self.mask >> k & 1, self.value >> k & 1) {
                (0, _) => '?',
                (_, 1) => '1',
                _ => '0',
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// `1/√m` on every stored pattern.
pub fn store(patterns: &PatternSet) -> Result<StateVector> {
    let mut amps = vec![Complex64::new(0.0, 0.0); 1 << patterns.n];
    let amp = Complex64::new((patterns.len() as f64).sqrt().recip(), 0.0);
    for &p in &patterns.patterns {
        amps[p] = amp;
    }
    StateVector::from_amplitudes(patterns.n, amps)
}

/// Diagonal oracle: `−1` on indices matching the query, `+1` elsewhere.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseOracle {
    query: PartialPattern,
}

impl PhaseOracle {
    pub fn phase(&self, x: usize) -> Complex64 {
        if self.query.matches(x) {
            Complex64::new(-1.0, 0.0)
        } else {
            Complex64::new(1.0, 0.0)
        }
    }

    pub fn diagonal(&self) -> Vec<Complex64> {
        (0..1 << self.query.n).map(|x| self.phase(x)).collect()
    }

    pub fn apply(&self, state: &StateVector) -> Result<StateVector> {
        if state.num_qubits() != self.query.n {
            return Err(Error::WrongQubitCount {
                expected: self.query.n,
                found: state.num_qubits(),
            });
        }
        Ok(state.phase_flip(|x| self.query.matches(x)))
    }
}

pub fn match_phase_oracle(query: &PartialPattern) -> PhaseOracle {
    PhaseOracle { query: *query }
}

/// Reflection used after each phase flip.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Diffusion {
    /// `2|M⟩⟨M| − I` about the stored memory state. Equals inversion about
    /// the average when the memory is uniform.
    #[default]
    AboutMemory,
    /// `a ↦ 2·mean − a` over all `2ⁿ` amplitudes.
    AboutAverage,
}

fn diffuse(state: &StateVector, memory: &StateVector, diffusion: Diffusion) -> StateVector {
    match diffusion {
        Diffusion::AboutAverage => inversion_about_average(state),
        Diffusion::AboutMemory => {
            let overlap = memory.inner(state).expect("same width");
            let amps = state
                .amplitudes()
                .iter()
                .zip(memory.amplitudes())
                .map(|(&s, &m)| 2.0 * overlap * m - s)
                .collect();
            StateVector::from_vec_unchecked(state.num_qubits(), amps)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RecallStatus {
    Recalled,
    /// No stored pattern agrees with the query.
    NoMatch,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RecallResult {
    pub status: RecallStatus,
    pub query: String,
    pub diffusion: Diffusion,
    pub iterations: usize,
    /// Probability of measuring a stored pattern that matches the query.
    pub success_probability: f64,
    pub curve: Vec<(usize, f64)>,
    pub outcome: String,
    pub value: usize,
    pub matches_query: bool,
    pub is_stored: bool,
}

/// Largest iteration count scanned: `⌈π/4 · √2ⁿ⌉`.
pub fn scan_limit(n: usize) -> usize {
    (FRAC_PI_4 * ((1u64 << n) as f64).sqrt()).ceil() as usize
}

const TIE: f64 = 1e-12;

/// Completes `query` against `memory`. With `iterations = None` every count
/// from 0 to [`scan_limit`] is simulated exactly and the first maximum wins.
pub fn recall_with(
    memory: &StateVector,
    query: &PartialPattern,
    diffusion: Diffusion,
    iterations: Option<usize>,
    rng: &mut RandomSource,
) -> Result<RecallResult> {
    let oracle = match_phase_oracle(query);
    let stored = |x: usize| memory.probability(x) > 0.0;
    let good = |x: usize| stored(x) && query.matches(x);
    let success = |s: &StateVector| -> f64 {
        (0..s.dim()).filter(|&x| good(x)).map(|x| s.probability(x)).sum()
    };
    let last = iterations.unwrap_or_else(|| scan_limit(query.n()));
    let mut states = vec![memory.clone()];
    for _ in 0..last {
        let flipped = oracle.apply(states.last().expect("non-empty"))?;
        states.push(diffuse(&flipped, memory, diffusion));
    }
    let curve: Vec<(usize, f64)> = states.iter().map(success).enumerate().collect();
    let chosen = match iterations {
        Some(t) => t,
        None => curve
            .iter()
            .fold((0, f64::NEG_INFINITY), |best, &(t, p)| {
                if p > best.1 + TIE {
                    (t, p)
                } else {
                    best
                }
            })
            .0,
    };
    let state = &states[chosen];
    let record = measure_all(state, rng);
    let any_match = (0..memory.dim()).any(good);
    Ok(RecallResult {
        status: if any_match {
            RecallStatus::Recalled
        } else {
            RecallStatus::NoMatch
        },
        query: query.to_string(),
        diffusion,
        iterations: chosen,
        success_probability: curve[chosen].1,
        curve,
        outcome: bit_label(record.value, query.n()),
        value: record.value,
        matches_query: query.matches(record.value),
        is_stored: stored(record.value),
    })
}

pub fn recall(
    memory: &StateVector,
    query: &PartialPattern,
    rng: &mut RandomSource,
) -> Result<RecallResult> {
    if memory.num_qubits() != query.n() {
        return Err(Error::WrongQubitCount {
            expected: memory.num_qubits(),
            found: query.n(),
        });
    }
    recall_with(memory, query, Diffusion::default(), None, rng)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn memory(items: &[&str]) -> StateVector {
        store(&PatternSet::from_strings(items).unwrap()).unwrap()
    }

    #[test]
    fn store_three_patterns() {
        let m = memory(&["00", "01", "11"]);
        let a = 1.0 / 3f64.sqrt();
        for (i, want) in [a, a, 0.0, a].into_iter().enumerate() {
            assert!((m.amplitude(i).re - want).abs() < 1e-15);
        }
        assert!(PatternSet::from_strings::<&str>(&[]).is_err());
        assert!(PatternSet::from_strings(&["01", "01"]).is_err());
    }

    #[test]
    fn query_parsing() {
        let q = PartialPattern::parse("1?").unwrap();
        assert!(q.matches(2) && q.matches(3) && !q.matches(1));
        assert_eq!(q.to_string(), "1?");
        assert!(PartialPattern::parse("??").is_err());
        assert!(PartialPattern::parse("1x").is_err());
    }

    #[test]
    fn oracle_marks_matches() {
        let o = match_phase_oracle(&PartialPattern::parse("1?").unwrap());
        let d: Vec<f64> = o.diagonal().iter().map(|z| z.re).collect();
        assert_eq!(d, vec![1.0, 1.0, -1.0, -1.0]);
    }

    #[test]
    fn completes_one_question() {
        let m = memory(&["00", "01", "11"]);
        let q = PartialPattern::parse("1?").unwrap();
        let r = recall(&m, &q, &mut RandomSource::new(1)).unwrap();
        assert_eq!(r.status, RecallStatus::Recalled);
        assert_eq!(r.iterations, 1);
        assert!(r.success_probability > 0.9);
        let want = (3.0 * (1.0 / 3f64.sqrt()).asin()).sin().powi(2);
        assert!((r.success_probability - want).abs() < 1e-12);
    }

    #[test]
    fn uniform_inversion_peaks_lower() {
        let m = memory(&["00", "01", "11"]);
        let q = PartialPattern::parse("1?").unwrap();
        let r = recall_with(&m, &q, Diffusion::AboutAverage, None, &mut RandomSource::new(1)).unwrap();
        assert!((r.success_probability - 0.75).abs() < 1e-12);
    }

    #[test]
    fn trivial_and_failed_recall() {
        let q0 = PartialPattern::parse("0?").unwrap();
        let r = recall(&memory(&["00"]), &q0, &mut RandomSource::new(0)).unwrap();
        assert_eq!((r.iterations, r.outcome.as_str()), (0, "00"));
        assert!((r.success_probability - 1.0).abs() < 1e-12);

        let q1 = PartialPattern::parse("1?").unwrap();
        let r = recall(&memory(&["01"]), &q1, &mut RandomSource::new(0)).unwrap();
        assert_eq!(r.status, RecallStatus::NoMatch);
        assert!(!r.matches_query);
    }

    #[test]
    fn file_format() {
        let p = PatternSet::parse("# memory\n00\n01\n\n11\n").unwrap();
        assert_eq!(p.patterns(), &[0, 1, 3]);
        assert!(matches!(PatternSet::parse("00\n011\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(PatternSet::parse("0a\n"), Err(Error::Parse { line: 1, column: 2, .. })));
    }
}
