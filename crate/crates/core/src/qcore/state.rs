use std::fmt::Write as _;

use num_complex::Complex64;

use super::{MAX_QUBITS, NORM_TOLERANCE, STATE_TOLERANCE};
use crate::{Error, Result};

pub type Amplitude = Complex64;

/// Pure state of `n` qubits as `2^n` complex amplitudes.
///
/// Values are immutable once built; every operation returns a new state.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amps: Vec<Amplitude>,
}

pub(crate) fn check_qubit_count(n: usize) -> Result<()> {
    if n == 0 || n > MAX_QUBITS {
        return Err(Error::QubitCount(n));
    }
    Ok(())
}

impl StateVector {
    /// Validates length, finiteness and unit norm (within `1e-10`).
    pub fn from_amplitudes(num_qubits: usize, amps: Vec<Amplitude>) -> Result<Self> {
        check_qubit_count(num_qubits)?;
        if amps.len() != 1 << num_qubits {
            return Err(Error::Dimension {
                expected: 1 << num_qubits,
                found: amps.len(),
            });
        }
        if let Some(i) = amps.iter().position(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>();
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::NotNormalized(norm));
        }
        Ok(Self { num_qubits, amps })
    }

    /// Scales `amps` to unit norm. Fails on a zero vector.
    pub fn normalized(num_qubits: usize, mut amps: Vec<Amplitude>) -> Result<Self> {
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::NotNormalized(norm * norm));
        }
        amps.iter_mut().for_each(|a| *a /= norm);
        Self::from_amplitudes(num_qubits, amps)
    }

    /// Caller guarantees length `2^num_qubits` and unit norm.
    pub(crate) fn from_vec_unchecked(num_qubits: usize, amps: Vec<Amplitude>) -> Self {
        debug_assert_eq!(amps.len(), 1 << num_qubits);
        Self { num_qubits, amps }
    }

    /// `|0…0⟩`.
    pub fn zero(num_qubits: usize) -> Result<Self> {
        Self::basis(num_qubits, 0)
    }

    pub fn basis(num_qubits: usize, index: usize) -> Result<Self> {
        check_qubit_count(num_qubits)?;
        let dim = 1usize << num_qubits;
        if index >= dim {
            return Err(Error::InvalidInput(format!(
                "basis index {index} out of range for {num_qubits} qubits"
            )));
        }
        let mut amps = vec![Amplitude::new(0.0, 0.0); dim];
        amps[index] = Amplitude::new(1.0, 0.0);
        Ok(Self { num_qubits, amps })
    }

    /// Equal superposition `2^{-n/2} Σ|x⟩`.
    pub fn uniform(num_qubits: usize) -> Result<Self> {
        check_qubit_count(num_qubits)?;
        let dim = 1usize << num_qubits;
        let a = Amplitude::new((dim as f64).sqrt().recip(), 0.0);
        Ok(Self {
            num_qubits,
            amps: vec![a; dim],
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Amplitude] {
        &self.amps
    }

    pub fn into_amplitudes(self) -> Vec<Amplitude> {
        self.amps
    }

    pub fn amplitude(&self, index: usize) -> Amplitude {
        self.amps[index]
    }

    pub fn probability(&self, index: usize) -> f64 {
        self.amps[index].norm_sqr()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Inner product `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Result<Amplitude> {
        if self.dim() != other.dim() {
            return Err(Error::Dimension {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Largest per-amplitude distance; `f64::INFINITY` on a dimension mismatch.
    pub fn max_distance(&self, other: &StateVector) -> f64 {
        if self.dim() != other.dim() {
            return f64::INFINITY;
        }
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Per-amplitude equality within `1e-9`.
    pub fn approx_eq(&self, other: &StateVector) -> bool {
        self.max_distance(other) <= STATE_TOLERANCE
    }

    /// Multiplies amplitude `i` by `phase(i)`. Each phase must have unit modulus.
    pub fn apply_diagonal(&self, phase: impl Fn(usize) -> Amplitude) -> Result<StateVector> {
        let mut amps = self.amps.clone();
        for (i, a) in amps.iter_mut().enumerate() {
            let p = phase(i);
            if (p.norm() - 1.0).abs() > NORM_TOLERANCE {
                return Err(Error::NotUnitModulus(i));
            }
            *a *= p;
        }
        Ok(Self::from_vec_unchecked(self.num_qubits, amps))
    }

    /// Flips the sign of every amplitude whose index satisfies `marked`.
    pub fn phase_flip(&self, marked: impl Fn(usize) -> bool) -> StateVector {
        let amps = self
            .amps
            .iter()
            .enumerate()
            .map(|(i, &a)| if marked(i) { -a } else { a })
            .collect();
        Self::from_vec_unchecked(self.num_qubits, amps)
    }

    /// Debug text: one `index bitstring re im` line per amplitude, 12 decimals.
    pub fn dump(&self) -> String {
        let mut out = String::with_capacity(self.dim() * (self.num_qubits + 40));
        for (i, a) in self.amps.iter().enumerate() {
            let _ = writeln!(
                out,
                "{i} {} {:.12} {:.12}",
                bit_label(i, self.num_qubits),
                a.re,
                a.im
            );
        }
        out
    }
}

/// Ket label of `index` over `n` symbols, highest bit first.
pub fn bit_label(index: usize, n: usize) -> String {
    (0..n)
        .rev()
        .map(|k| if index >> k & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// Inverse of [`bit_label`].
pub fn parse_bit_label(label: &str) -> Result<usize> {
    if label.is_empty() || label.len() > MAX_QUBITS {
        return Err(Error::BadLabel(label.to_string()));
    }
    label.chars().try_fold(0usize, |acc, c| match c {
        '0' => Ok(acc << 1),
        '1' => Ok(acc << 1 | 1),
        _ => Err(Error::BadLabel(label.to_string())),
    })
}

/// Computational basis state for a ket label such as `"10"`.
pub fn basis_state(n: usize, label: &str) -> Result<StateVector> {
    check_qubit_count(n)?;
    if label.len() != n {
        return Err(Error::BadLabel(label.to_string()));
    }
    StateVector::basis(n, parse_bit_label(label)?)
}

/// `a ⊗ b`; `a` occupies the high qubits.
pub fn tensor(a: &StateVector, b: &StateVector) -> Result<StateVector> {
    let n = a.num_qubits + b.num_qubits;
    check_qubit_count(n)?;
    let mut amps = Vec::with_capacity(1 << n);
    for x in &a.amps {
        amps.extend(b.amps.iter().map(|y| x * y));
    }
    Ok(StateVector::from_vec_unchecked(n, amps))
}

/// Outcome of the two-qubit product test.
#[derive(Debug, Clone, PartialEq)]
pub enum Separability {
    /// `state = high ⊗ low`; `high` is qubit 1 (the left ket symbol).
    Separable {
        high: StateVector,
        low: StateVector,
    },
    Entangled,
}

impl Separability {
    pub fn is_separable(&self) -> bool {
        matches!(self, Separability::Separable { .. })
    }
}

const SEPARABILITY_TOLERANCE: f64 = 1e-9;

/// A two-qubit state factors iff `a00·a11 − a01·a10 = 0`.
pub fn is_separable_2q(state: &StateVector) -> Result<Separability> {
    if state.num_qubits != 2 {
        return Err(Error::WrongQubitCount {
            expected: 2,
            found: state.num_qubits,
        });
    }
    let a = &state.amps;
    let det = a[0] * a[3] - a[1] * a[2];
    if det.norm() > SEPARABILITY_TOLERANCE {
        return Ok(Separability::Entangled);
    }
    // Rows are indexed by qubit 1; the dominant row fixes the qubit-0 factor.
    let rows = [[a[0], a[1]], [a[2], a[3]]];
    let row_norm = |r: &[Amplitude; 2]| r[0].norm_sqr() + r[1].norm_sqr();
    let pivot = if row_norm(&rows[0]) >= row_norm(&rows[1]) {
        rows[0]
    } else {
        rows[1]
    };
    let low = StateVector::normalized(1, pivot.to_vec())?;
    let high_amps = rows
        .iter()
        .map(|r| low.amps[0].conj() * r[0] + low.amps[1].conj() * r[1])
        .collect();
    let high = StateVector::normalized(1, high_amps)?;
    Ok(Separability::Separable { high, low })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Amplitude {
        Amplitude::new(re, im)
    }

    #[test]
    fn basis_state_examples() {
        let s = basis_state(1, "0").unwrap();
        assert_eq!(s.amplitudes(), &[c(1.0, 0.0), c(0.0, 0.0)]);
        let s = basis_state(2, "10").unwrap();
        assert_eq!(s.amplitude(2), c(1.0, 0.0));
        assert_eq!(s.norm_sqr(), 1.0);
    }

    #[test]
    fn basis_state_rejects_bad_input() {
        assert_eq!(
            basis_state(25, &"0".repeat(25)),
            Err(Error::QubitCount(25))
        );
        assert!(basis_state(0, "").is_err());
        assert!(matches!(basis_state(2, "1x"), Err(Error::BadLabel(_))));
        assert!(matches!(basis_state(2, "101"), Err(Error::BadLabel(_))));
    }

    #[test]
    fn from_amplitudes_validates() {
        assert!(matches!(
            StateVector::from_amplitudes(1, vec![c(1.0, 0.0), c(1.0, 0.0)]),
            Err(Error::NotNormalized(_))
        ));
        assert!(matches!(
            StateVector::from_amplitudes(1, vec![c(f64::NAN, 0.0), c(1.0, 0.0)]),
            Err(Error::NonFinite(0))
        ));
        assert!(matches!(
            StateVector::from_amplitudes(2, vec![c(1.0, 0.0), c(0.0, 0.0)]),
            Err(Error::Dimension { .. })
        ));
    }

    #[test]
    fn tensor_of_basis_states() {
        let zero = basis_state(1, "0").unwrap();
        let one = basis_state(1, "1").unwrap();
        assert_eq!(tensor(&zero, &one).unwrap(), basis_state(2, "01").unwrap());
    }

    #[test]
    fn tensor_respects_cap() {
        let a = StateVector::zero(12).unwrap();
        let b = StateVector::zero(13).unwrap();
        assert_eq!(tensor(&a, &b), Err(Error::QubitCount(25)));
    }

    #[test]
    fn bell_state_is_entangled() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let bell =
            StateVector::from_amplitudes(2, vec![c(h, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(h, 0.0)])
                .unwrap();
        assert_eq!(is_separable_2q(&bell).unwrap(), Separability::Entangled);
    }

    #[test]
    fn product_state_factors() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let s =
            StateVector::from_amplitudes(2, vec![c(h, 0.0), c(h, 0.0), c(0.0, 0.0), c(0.0, 0.0)])
                .unwrap();
        match is_separable_2q(&s).unwrap() {
            Separability::Separable { high, low } => {
                assert!(high.approx_eq(&basis_state(1, "0").unwrap()));
                assert!(low.approx_eq(&StateVector::uniform(1).unwrap()));
                assert!(tensor(&high, &low).unwrap().approx_eq(&s));
            }
            Separability::Entangled => panic!("expected separable"),
        }
        assert!(is_separable_2q(&basis_state(2, "01").unwrap())
            .unwrap()
            .is_separable());
    }

    #[test]
    fn separability_needs_two_qubits() {
        assert!(matches!(
            is_separable_2q(&StateVector::zero(3).unwrap()),
            Err(Error::WrongQubitCount { .. })
        ));
    }

    #[test]
    fn dump_format() {
        let s = basis_state(2, "10").unwrap();
        let text = s.dump();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines.len(), 4);
        assert_eq!(lines[2], "2 10 1.000000000000 0.000000000000");
    }

    #[test]
    fn apply_diagonal_rejects_non_unit_phase() {
        let s = StateVector::uniform(2).unwrap();
        assert_eq!(
            s.apply_diagonal(|i| if i == 3 { c(2.0, 0.0) } else { c(1.0, 0.0) }),
            Err(Error::NotUnitModulus(3))
        );
    }
}
