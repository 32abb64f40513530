use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;

use super::state::StateVector;
use super::NORM_TOLERANCE;
use crate::{Error, Result};

/// States at least this large are updated in parallel chunks.
const PARALLEL_MIN_DIM: usize = 1 << 14;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// A 1- or 2-qubit unitary placed on specific qubits, optionally controlled.
///
/// For a two-qubit matrix the local basis index is `2·b(targets[0]) + b(targets[1])`,
/// so `targets[0]` plays the role of the left ket symbol.
#[derive(Debug, Clone, PartialEq)]
pub struct GateSpec {
    matrix: Vec<Complex64>,
    targets: Vec<usize>,
    controls: Vec<usize>,
}

/// Largest entry of `|M†M − I|` for a row-major `dim × dim` matrix.
pub(crate) fn unitarity_defect(matrix: &[Complex64], dim: usize) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..dim {
        for j in 0..dim {
            let mut acc = ZERO;
            for k in 0..dim {
                acc += matrix[k * dim + i].conj() * matrix[k * dim + j];
            }
            if i == j {
                acc -= ONE;
            }
            worst = worst.max(acc.norm());
        }
    }
    worst
}

fn check_distinct(qubits: &[usize]) -> Result<()> {
    for (i, q) in qubits.iter().enumerate() {
        if qubits[..i].contains(q) {
            return Err(Error::InvalidGate(format!("qubit {q} listed twice")));
        }
    }
    Ok(())
}

impl GateSpec {
    /// Builds a gate from a row-major matrix of size `2^k × 2^k`, `k = targets.len()`.
    pub fn new(matrix: Vec<Complex64>, targets: Vec<usize>, controls: Vec<usize>) -> Result<Self> {
        let k = targets.len();
        if !(1..=2).contains(&k) {
            return Err(Error::InvalidGate(format!(
                "gates act on 1 or 2 targets, got {k}"
            )));
        }
        let dim = 1usize << k;
        if matrix.len() != dim * dim {
            return Err(Error::Dimension {
                expected: dim * dim,
                found: matrix.len(),
            });
        }
        check_distinct(&targets)?;
        check_distinct(&controls)?;
        if let Some(q) = controls.iter().find(|q| targets.contains(q)) {
            return Err(Error::InvalidGate(format!(
                "qubit {q} is both target and control"
            )));
        }
        if matrix.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::NotUnitary(f64::INFINITY));
        }
        let defect = unitarity_defect(&matrix, dim);
        if defect > NORM_TOLERANCE {
            return Err(Error::NotUnitary(defect));
        }
        Ok(Self {
            matrix,
            targets,
            controls,
        })
    }

    pub fn single(matrix: [[Complex64; 2]; 2], target: usize) -> Result<Self> {
        Self::new(matrix.concat(), vec![target], Vec::new())
    }

    /// A standard gate placed on `qubits` (one qubit, or `[control, target]` for CNOT).
    pub fn standard(gate: StandardGate, qubits: &[usize]) -> Result<Self> {
        let matrix = gate.matrix();
        Self::new(matrix, qubits.to_vec(), Vec::new())
    }

    pub fn h(target: usize) -> Self {
        Self::standard(StandardGate::H, &[target]).expect("H is unitary")
    }

    pub fn x(target: usize) -> Self {
        Self::standard(StandardGate::X, &[target]).expect("X is unitary")
    }

    pub fn z(target: usize) -> Self {
        Self::standard(StandardGate::Z, &[target]).expect("Z is unitary")
    }

    /// Controlled-X as a single-target gate with one control.
    pub fn cnot(control: usize, target: usize) -> Result<Self> {
        Self::new(StandardGate::X.matrix(), vec![target], vec![control])
    }

    /// `diag(1, e^{iθ})` on `target`.
    pub fn phase(target: usize, theta: f64) -> Self {
        Self::new(
            vec![ONE, ZERO, ZERO, Complex64::from_polar(1.0, theta)],
            vec![target],
            Vec::new(),
        )
        .expect("phase gate is unitary")
    }

    /// `diag(1, e^{iθ})` on `target` when `control` is set.
    pub fn controlled_phase(control: usize, target: usize, theta: f64) -> Result<Self> {
        Self::phase(target, theta).with_controls(vec![control])
    }

    pub fn with_controls(mut self, controls: Vec<usize>) -> Result<Self> {
        self.controls = controls;
        Self::new(self.matrix, self.targets, self.controls)
    }

    pub fn adjoint(&self) -> Self {
        let dim = self.local_dim();
        let mut m = vec![ZERO; dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                m[j * dim + i] = self.matrix[i * dim + j].conj();
            }
        }
        Self {
            matrix: m,
            targets: self.targets.clone(),
            controls: self.controls.clone(),
        }
    }

    pub fn matrix(&self) -> &[Complex64] {
        &self.matrix
    }

    pub fn targets(&self) -> &[usize] {
        &self.targets
    }

    pub fn controls(&self) -> &[usize] {
        &self.controls
    }

    fn local_dim(&self) -> usize {
        1 << self.targets.len()
    }

    fn max_qubit(&self) -> usize {
        self.targets
            .iter()
            .chain(&self.controls)
            .copied()
            .max()
            .unwrap_or(0)
    }
}

/// Named gates of the universal set and the Pauli family.
///
/// `Y` is the real matrix `[[0, −1], [1, 0]]` (Z applied first, then X), which differs from the
/// usual physics Pauli-Y by a global factor of `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StandardGate {
    I,
    X,
    Y,
    Z,
    H,
    T,
    Cnot,
}

impl StandardGate {
    pub const ALL: [StandardGate; 7] = [
        StandardGate::I,
        StandardGate::X,
        StandardGate::Y,
        StandardGate::Z,
        StandardGate::H,
        StandardGate::T,
        StandardGate::Cnot,
    ];

    pub fn arity(self) -> usize {
        match self {
            StandardGate::Cnot => 2,
            _ => 1,
        }
    }

    /// Row-major matrix.
    pub fn matrix(self) -> Vec<Complex64> {
        let r = |x: f64| Complex64::new(x, 0.0);
        match self {
            StandardGate::I => vec![ONE, ZERO, ZERO, ONE],
            StandardGate::X => vec![ZERO, ONE, ONE, ZERO],
            StandardGate::Y => vec![ZERO, r(-1.0), ONE, ZERO],
            StandardGate::Z => vec![ONE, ZERO, ZERO, r(-1.0)],
            StandardGate::H => vec![
                r(FRAC_1_SQRT_2),
                r(FRAC_1_SQRT_2),
                r(FRAC_1_SQRT_2),
                r(-FRAC_1_SQRT_2),
            ],
            StandardGate::T => vec![ONE, ZERO, ZERO, Complex64::from_polar(1.0, FRAC_PI_4)],
            StandardGate::Cnot => {
                let mut m = vec![ZERO; 16];
                m[0] = ONE;
                m[5] = ONE;
                m[11] = ONE;
                m[14] = ONE;
                m
            }
        }
    }
}

impl FromStr for StandardGate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_uppercase().as_str() {
            "I" => StandardGate::I,
            "X" => StandardGate::X,
            "Y" => StandardGate::Y,
            "Z" => StandardGate::Z,
            "H" => StandardGate::H,
            "T" => StandardGate::T,
            "CNOT" | "CX" => StandardGate::Cnot,
            _ => return Err(Error::UnknownGate(s.to_string())),
        })
    }
}

/// The named gate on its default qubits: qubit 0, or control 1 / target 0 for CNOT.
pub fn standard_gate(name: &str) -> Result<GateSpec> {
    let gate: StandardGate = name.parse()?;
    let qubits: &[usize] = if gate.arity() == 2 { &[1, 0] } else { &[0] };
    GateSpec::standard(gate, qubits)
}

/// Inserts a zero bit at each position in `sorted_positions` (ascending).
#[inline]
fn deposit_zeros(mut x: usize, sorted_positions: &[usize]) -> usize {
    for &p in sorted_positions {
        let low = x & ((1 << p) - 1);
        x = (x >> p) << (p + 1) | low;
    }
    x
}

struct Kernel<'a> {
    matrix: &'a [Complex64],
    dim: usize,
    offsets: [usize; 4],
    sorted_targets: Vec<usize>,
    control_mask: usize,
}

impl Kernel<'_> {
    /// Applies the gate to all target groups inside `chunk`, whose first amplitude
    /// has global index `base`. Chunks must be aligned to `2^(max target + 1)`.
    fn run(&self, chunk: &mut [Complex64], base: usize) {
        let groups = chunk.len() >> self.sorted_targets.len();
        let mut local = [ZERO; 4];
        for g in 0..groups {
            let start = deposit_zeros(g, &self.sorted_targets);
            if (base + start) & self.control_mask != self.control_mask {
                continue;
            }
            for m in 0..self.dim {
                local[m] = chunk[start + self.offsets[m]];
            }
            for row in 0..self.dim {
                let coeffs = &self.matrix[row * self.dim..(row + 1) * self.dim];
                chunk[start + self.offsets[row]] =
                    coeffs.iter().zip(&local).map(|(c, a)| c * a).sum();
            }
        }
    }
}

/// Returns `U|ψ⟩` with `U` embedded on the gate's qubits.
///
/// Works by strided index arithmetic over amplitude groups; the full
/// `2^n × 2^n` operator is never formed.
pub fn apply_gate(state: &StateVector, gate: &GateSpec) -> Result<StateVector> {
    let n = state.num_qubits();
    if let Some(&q) = gate
        .targets
        .iter()
        .chain(&gate.controls)
        .find(|&&q| q >= n)
    {
        return Err(Error::QubitIndex {
            index: q,
            num_qubits: n,
        });
    }
    let k = gate.targets.len();
    let mut offsets = [0usize; 4];
    for (m, off) in offsets.iter_mut().enumerate().take(1 << k) {
        *off = gate
            .targets
            .iter()
            .enumerate()
            .map(|(p, &t)| ((m >> (k - 1 - p)) & 1) << t)
            .sum();
    }
    let mut sorted_targets = gate.targets.clone();
    sorted_targets.sort_unstable();
    let kernel = Kernel {
        matrix: &gate.matrix,
        dim: 1 << k,
        offsets,
        control_mask: gate.controls.iter().map(|&c| 1usize << c).sum(),
        sorted_targets,
    };

    let mut amps = state.amplitudes().to_vec();
    let chunk = 2usize << gate.targets.iter().max().copied().unwrap_or(0);
    if amps.len() >= PARALLEL_MIN_DIM && amps.len() > chunk {
        let min_chunks = (PARALLEL_MIN_DIM / 4 / chunk).max(1);
        amps.par_chunks_mut(chunk)
            .with_min_len(min_chunks)
            .enumerate()
            .for_each(|(c, slice)| kernel.run(slice, c * chunk));
    } else {
        for (c, slice) in amps.chunks_mut(chunk).enumerate() {
            kernel.run(slice, c * chunk);
        }
    }
    debug_assert!(gate.max_qubit() < n);
    Ok(StateVector::from_vec_unchecked(n, amps))
}

/// `H^{⊗n}` on every qubit of `state`.
pub fn hadamard_all(state: &StateVector) -> StateVector {
    (0..state.num_qubits()).fold(state.clone(), |s, q| {
        apply_gate(&s, &GateSpec::h(q)).expect("qubit index in range")
    })
}

/// Ordered gate list over a fixed register width.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Circuit {
    num_qubits: usize,
    gates: Vec<GateSpec>,
}

impl Circuit {
    pub fn new(num_qubits: usize) -> Self {
        Self {
            num_qubits,
            gates: Vec::new(),
        }
    }

    pub fn push(&mut self, gate: GateSpec) -> Result<&mut Self> {
        if let Some(&q) = gate
            .targets
            .iter()
            .chain(&gate.controls)
            .find(|&&q| q >= self.num_qubits)
        {
            return Err(Error::QubitIndex {
                index: q,
                num_qubits: self.num_qubits,
            });
        }
        self.gates.push(gate);
        Ok(self)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn gates(&self) -> &[GateSpec] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn apply(&self, state: &StateVector) -> Result<StateVector> {
        if state.num_qubits() != self.num_qubits {
            return Err(Error::WrongQubitCount {
                expected: self.num_qubits,
                found: state.num_qubits(),
            });
        }
        self.gates
            .iter()
            .try_fold(state.clone(), |s, g| apply_gate(&s, g))
    }

    /// Reversed sequence of adjoint gates.
    pub fn adjoint(&self) -> Circuit {
        Circuit {
            num_qubits: self.num_qubits,
            gates: self.gates.iter().rev().map(GateSpec::adjoint).collect(),
        }
    }
}
