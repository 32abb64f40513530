use std::collections::BTreeSet;

use serde::Serialize;

use crate::qalgos::qft;
use crate::qcore::{measure_all, measure_qubits, StateVector, MAX_QUBITS};
use crate::{Complex64, Error, RandomSource, Result};

/// Largest modulus accepted by [`shor_factor`].
pub const MAX_MODULUS: u64 = 64;

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `base^exp mod modulus` by square-and-multiply.
pub fn mod_pow(base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let m = u128::from(modulus);
    let mut b = u128::from(base) % m;
    let mut acc = 1u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// `(n, w)`: `n` with `M² ≤ 2ⁿ < 2M²` for the argument register and
/// `w = ⌈log₂ M⌉` for the value register.
pub fn register_width(modulus: u64) -> (usize, usize) {
    let sq = u128::from(modulus) * u128::from(modulus);
    let n = (0..128).find(|&k| 1u128 << k >= sq).expect("fits in u128");
    let w = (0..64).find(|&k| 1u64 << k >= modulus).expect("fits in u64");
    (n, w)
}

fn smallest_prime_factor(m: u64) -> u64 {
    (2..).take_while(|p| p * p <= m).find(|p| m.is_multiple_of(*p)).unwrap_or(m)
}

/// Rejects inputs the quantum stage cannot factor: too small or large, even,
/// prime, or a prime power.
pub fn classical_precheck(modulus: u64) -> Result<()> {
    let reject = |why: &str| Err(Error::InvalidInput(format!("{modulus} {why}")));
    if modulus < 3 {
        return reject("is too small to factor");
    }
    if modulus > MAX_MODULUS {
        return reject(&format!("exceeds the supported maximum {MAX_MODULUS}"));
    }
    if modulus.is_multiple_of(2) {
        return reject("is even (factor 2)");
    }
    let p = smallest_prime_factor(modulus);
    if p == modulus {
        return reject("is prime");
    }
    let mut rest = modulus;
    while rest.is_multiple_of(p) {
        rest /= p;
    }
    if rest == 1 {
        return reject(&format!("is a power of the prime {p}"));
    }
    Ok(())
}

/// `2^{−n/2} Σ_a |a, y^a mod M⟩` with basis index `a·2^w + f(a)`.
pub fn modexp_superposition(modulus: u64, base: u64, n: usize) -> Result<StateVector> {
    if modulus < 2 || gcd(base, modulus) != 1 {
        return Err(Error::InvalidInput(format!(
            "base {base} is not a unit modulo {modulus}"
        )));
    }
    let (_, w) = register_width(modulus);
    if n == 0 || n + w > MAX_QUBITS {
        return Err(Error::QubitCount(n + w));
    }
    let size = 1usize << n;
    let amp = Complex64::new((size as f64).sqrt().recip(), 0.0);
    let mut amps = vec![Complex64::new(0.0, 0.0); size << w];
    for a in 0..size {
        let f = mod_pow(base, a as u64, modulus) as usize;
        amps[(a << w) | f] = amp;
    }
    Ok(StateVector::from_vec_unchecked(n + w, amps))
}

/// Measures the value register (low `w` qubits) and returns the reading with
/// the normalized comb left on the argument register.
pub fn measure_value_register(
    state: &StateVector,
    w: usize,
    rng: &mut RandomSource,
) -> Result<(usize, StateVector)> {
    let qubits: Vec<usize> = (0..w).rev().collect();
    let record = measure_qubits(state, &qubits, rng)?;
    let u = record.value;
    let n = state.num_qubits() - w;
    let comb = (0..1usize << n)
        .map(|a| record.post_state.amplitude((a << w) | u))
        .collect();
    Ok((u, StateVector::normalized(n, comb)?))
}

/// Convergents `p/q` of the continued fraction of `num/den`.
pub fn continued_fraction_convergents(num: u64, den: u64) -> Vec<(u64, u64)> {
    let (mut a, mut b) = (u128::from(num), u128::from(den));
    let (mut p0, mut q0, mut p1, mut q1) = (0u128, 1u128, 1u128, 0u128);
    let mut out = Vec::new();
    while b != 0 {
        let t = a / b;
        (a, b) = (b, a % b);
        (p0, p1) = (p1, t * p1 + p0);
        (q0, q1) = (q1, t * q1 + q0);
        out.push((p1 as u64, q1 as u64));
    }
    out
}

fn true_order(exponent: u64, base: u64, modulus: u64) -> u64 {
    (1..=exponent)
        .filter(|d| exponent.is_multiple_of(*d))
        .find(|&d| mod_pow(base, d, modulus) == 1)
        .unwrap_or(exponent)
}

/// Period guess from a measured frequency `c`. Convergent denominators of
/// `c/2ⁿ` are tried first, then their multiples `2q, 3q, 4q`; a verified
/// exponent is reduced to the exact order of `y`.
pub fn extract_period(c: u64, n: usize, modulus: u64, base: u64) -> Option<u64> {
    if c == 0 || n >= 64 {
        return None;
    }
    let denominators: Vec<u64> = continued_fraction_convergents(c, 1u64 << n)
        .into_iter()
        .map(|(_, q)| q)
        .filter(|&q| q >= 1 && q <= modulus)
        .collect();
    let verifies = |q: u64| mod_pow(base, q, modulus) == 1;
    let found = denominators.iter().copied().find(|&q| verifies(q)).or_else(|| {
        (2..=4).find_map(|k| denominators.iter().map(|&q| k * q).find(|&q| verifies(q)))
    })?;
    Some(true_order(found, base, modulus))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AttemptOutcome {
    /// `gcd(y, M) > 1` already splits `M`.
    GcdShortcut,
    Factored,
    NoPeriod,
    OddPeriod,
    /// `y^{q/2} ≡ −1 (mod M)`.
    TrivialRoot,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShorAttempt {
    pub y: u64,
    pub measured_u: Option<u64>,
    pub measured_c: Option<u64>,
    pub period: Option<u64>,
    pub outcome: AttemptOutcome,
    pub factors: BTreeSet<u64>,
}

/// One pass of the algorithm with a fixed base.
pub fn shor_attempt(modulus: u64, y: u64, rng: &mut RandomSource) -> Result<ShorAttempt> {
    let mut attempt = ShorAttempt {
        y,
        measured_u: None,
        measured_c: None,
        period: None,
        outcome: AttemptOutcome::NoPeriod,
        factors: BTreeSet::new(),
    };
    let g = gcd(y, modulus);
    if g > 1 {
        attempt.outcome = AttemptOutcome::GcdShortcut;
        attempt.factors = BTreeSet::from([g, modulus / g]);
        return Ok(attempt);
    }
    let (n, w) = register_width(modulus);
    let state = modexp_superposition(modulus, y, n)?;
    let (u, comb) = measure_value_register(&state, w, rng)?;
    attempt.measured_u = Some(u as u64);
    let c = measure_all(&qft(&comb)?, rng).value as u64;
    attempt.measured_c = Some(c);
    let Some(q) = extract_period(c, n, modulus, y) else {
        return Ok(attempt);
    };
    attempt.period = Some(q);
    if q % 2 == 1 {
        attempt.outcome = AttemptOutcome::OddPeriod;
        return Ok(attempt);
    }
    let half = mod_pow(y, q / 2, modulus);
    if half == modulus - 1 {
        attempt.outcome = AttemptOutcome::TrivialRoot;
        return Ok(attempt);
    }
    attempt.outcome = AttemptOutcome::Factored;
    attempt.factors = BTreeSet::from([gcd(half + modulus - 1, modulus), gcd(half + 1, modulus)]);
    Ok(attempt)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ShorStatus {
    Factored,
    Failed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShorRun {
    pub modulus: u64,
    pub n: usize,
    pub status: ShorStatus,
    /// Fields below describe the final attempt.
    pub y: u64,
    pub measured_u: Option<u64>,
    pub measured_c: Option<u64>,
    pub period_estimate: Option<u64>,
    pub factors: BTreeSet<u64>,
    pub attempts: Vec<ShorAttempt>,
}

/// Random bases until a split is found or `max_attempts` is exhausted.
pub fn shor_factor(modulus: u64, rng: &mut RandomSource, max_attempts: usize) -> Result<ShorRun> {
    classical_precheck(modulus)?;
    if max_attempts == 0 {
        return Err(Error::InvalidInput("max_attempts must be at least 1".into()));
    }
    let (n, _) = register_width(modulus);
    let mut attempts = Vec::new();
    for _ in 0..max_attempts {
        let y = rng.range_inclusive(2, modulus - 1);
        let attempt = shor_attempt(modulus, y, rng)?;
        let done = !attempt.factors.is_empty();
        attempts.push(attempt);
        if done {
            break;
        }
    }
    let last = attempts.last().expect("at least one attempt").clone();
    Ok(ShorRun {
        modulus,
        n,
        status: if last.factors.is_empty() {
            ShorStatus::Failed
        } else {
            ShorStatus::Factored
        },
        y: last.y,
        measured_u: last.measured_u,
        measured_c: last.measured_c,
        period_estimate: last.period,
        factors: last.factors,
        attempts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_order(y: u64, m: u64) -> u64 {
        (1..m).find(|&r| mod_pow(y, r, m) == 1).unwrap()
    }

    #[test]
    fn widths() {
        assert_eq!(register_width(15), (8, 4));
        assert_eq!(register_width(21), (9, 5));
        assert_eq!(register_width(63), (12, 6));
        for m in [15u64, 21, 33, 35, 63] {
            let (n, _) = register_width(m);
            assert!(m * m <= 1 << n && 1 << n < 2 * m * m);
        }
    }

    #[test]
    fn prechecks() {
        assert!(classical_precheck(16).is_err());
        assert!(classical_precheck(13).is_err());
        assert!(classical_precheck(27).is_err());
        assert!(classical_precheck(25).is_err());
        assert!(classical_precheck(65).is_err());
        assert!(classical_precheck(15).is_ok());
        assert!(classical_precheck(63).is_ok());
    }

    #[test]
    fn modexp_register_cycles() {
        let s = modexp_superposition(15, 7, 4).unwrap();
        let cycle = [1, 7, 4, 13];
        for a in 0..16usize {
            let slot = (a << 4) | cycle[a % 4];
            assert!((s.amplitude(slot).re - 0.25).abs() < 1e-15);
        }
        assert!((s.norm_sqr() - 1.0).abs() < 1e-12);
        let ones = modexp_superposition(15, 1, 3).unwrap();
        assert!((0..8).all(|a| ones.probability((a << 4) | 1) > 0.0));
        assert!(modexp_superposition(15, 5, 4).is_err());
    }

    #[test]
    fn convergents() {
        assert_eq!(continued_fraction_convergents(12, 16), vec![(0, 1), (1, 1), (3, 4)]);
        assert_eq!(continued_fraction_convergents(3, 8), vec![(0, 1), (1, 2), (1, 3), (3, 8)]);
    }

    #[test]
    fn period_extraction() {
        assert_eq!(extract_period(12, 4, 15, 7), Some(4));
        assert_eq!(extract_period(4, 4, 15, 7), Some(4));
        assert_eq!(extract_period(0, 4, 15, 7), None);
        assert_eq!(extract_period(128, 8, 15, 7), Some(4));
    }

    #[test]
    fn fixed_bases() {
        let mut rng = RandomSource::new(5);
        let shortcut = shor_attempt(15, 5, &mut rng).unwrap();
        assert_eq!(shortcut.outcome, AttemptOutcome::GcdShortcut);
        assert!(shortcut.factors.contains(&5));

        for (m, y, r, factors) in [(15u64, 7u64, 4u64, [3u64, 5]), (21, 2, 6, [3, 7])] {
            assert_eq!(brute_order(y, m), r);
            let hit = (0..50)
                .map(|_| shor_attempt(m, y, &mut rng).unwrap())
                .find(|a| a.outcome == AttemptOutcome::Factored)
                .expect("factored within 50 tries");
            assert_eq!(hit.period, Some(r));
            assert_eq!(hit.factors, BTreeSet::from(factors));
        }
    }

    #[test]
    fn comb_spacing_is_the_period() {
        let mut rng = RandomSource::new(11);
        let (n, w) = register_width(21);
        let s = modexp_superposition(21, 2, n).unwrap();
        let (_, comb) = measure_value_register(&s, w, &mut rng).unwrap();
        let support: Vec<usize> = (0..comb.dim()).filter(|&a| comb.probability(a) > 0.0).collect();
        assert!(support.windows(2).all(|p| (p[1] - p[0]) % 6 == 0));
    }

    #[test]
    fn factors_small_moduli() {
        let mut rng = RandomSource::new(2024);
        for m in [15u64, 21, 33, 35, 39, 51, 55, 57] {
            let run = shor_factor(m, &mut rng, 32).unwrap();
            assert_eq!(run.status, ShorStatus::Factored, "M={m}");
            assert_eq!(run.factors.iter().product::<u64>(), m);
            assert!(run.factors.iter().all(|&f| f > 1 && f < m));
        }
    }
}
