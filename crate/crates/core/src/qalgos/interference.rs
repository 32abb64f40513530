use nalgebra::DMatrix;
use serde::Serialize;

use crate::hogg::{polar_unitary, unitarity_defect, CMatrix};
use crate::qcore::NORM_TOLERANCE;
use crate::{Complex64, Error, RandomSource, Result};

const DIM: usize = 4;

/// Two-step walk on four states. Entry `[i][j]` is the transition `i → j`;
/// `amp` holds amplitudes and `p`/`q` the matching probabilities `|amp|²`.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionModel {
    p: DMatrix<f64>,
    q: DMatrix<f64>,
    amp1: CMatrix,
    amp2: CMatrix,
}

fn probabilities(a: &CMatrix) -> DMatrix<f64> {
    a.map(|z| z.norm_sqr())
}

fn check_amplitudes(a: &CMatrix) -> Result<()> {
    if a.nrows() != DIM || a.ncols() != DIM {
        return Err(Error::Dimension {
            expected: DIM,
            found: a.nrows().max(a.ncols()),
        });
    }
    if let Some(i) = a.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::NonFinite(i));
    }
    let defect = unitarity_defect(a);
    if defect > NORM_TOLERANCE {
        return Err(Error::NotUnitary(defect));
    }
    Ok(())
}

fn check_stochastic(p: &DMatrix<f64>) -> Result<()> {
    if p.nrows() != DIM || p.ncols() != DIM {
        return Err(Error::Dimension {
            expected: DIM,
            found: p.nrows().max(p.ncols()),
        });
    }
    if p.iter().any(|&x| !(0.0..=1.0 + NORM_TOLERANCE).contains(&x)) {
        return Err(Error::InvalidInput("transition probabilities must lie in [0, 1]".into()));
    }
    for (i, row) in p.row_iter().enumerate() {
        let sum: f64 = row.iter().sum();
        if (sum - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::InvalidInput(format!("row {i} sums to {sum}")));
        }
    }
    Ok(())
}

fn lift(p: &DMatrix<f64>) -> Result<CMatrix> {
    check_stochastic(p)?;
    polar_unitary(&p.map(|x| Complex64::new(x.max(0.0).sqrt(), 0.0)))
}

impl TransitionModel {
    /// Both steps given as unitary amplitude matrices.
    pub fn from_amplitudes(amp1: CMatrix, amp2: CMatrix) -> Result<Self> {
        check_amplitudes(&amp1)?;
        check_amplitudes(&amp2)?;
        Ok(Self {
            p: probabilities(&amp1),
            q: probabilities(&amp2),
            amp1,
            amp2,
        })
    }

    /// Lifts row-stochastic matrices to amplitudes: entrywise square root,
    /// then the nearest unitary. `p` and `q` are recomputed from the result,
    /// so they match the input only when the square-root matrix is already
    /// unitary.
    pub fn from_stochastic(p: &DMatrix<f64>, q: &DMatrix<f64>) -> Result<Self> {
        Self::from_amplitudes(lift(p)?, lift(q)?)
    }

    /// Random model: polar factors of matrices with uniform complex entries.
    pub fn random(rng: &mut RandomSource) -> Result<Self> {
        let mut draw = || {
            let m = CMatrix::from_fn(DIM, DIM, |_, _| {
                Complex64::new(rng.next_f64() - 0.5, rng.next_f64() - 0.5)
            });
            polar_unitary(&m)
        };
        let a = draw()?;
        let b = draw()?;
        Self::from_amplitudes(a, b)
    }

    pub fn identity() -> Self {
        let id = CMatrix::identity(DIM, DIM);
        Self::from_amplitudes(id.clone(), id).expect("identity is unitary")
    }

    /// Both steps are `H ⊗ H`.
    pub fn hadamard() -> Self {
        let h = CMatrix::from_fn(DIM, DIM, |i, j| {
            let sign = if (i & j).count_ones() % 2 == 0 { 0.5 } else { -0.5 };
            Complex64::new(sign, 0.0)
        });
        Self::from_amplitudes(h.clone(), h).expect("H⊗H is unitary")
    }

    pub fn step1(&self) -> &DMatrix<f64> {
        &self.p
    }

    pub fn step2(&self) -> &DMatrix<f64> {
        &self.q
    }

    pub fn amp1(&self) -> &CMatrix {
        &self.amp1
    }

    pub fn amp2(&self) -> &CMatrix {
        &self.amp2
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct P0Comparison {
    /// `Σⱼ p₀ⱼ qⱼ₀`
    pub classical: f64,
    /// `|Σⱼ a₀ⱼ bⱼ₀|²`
    pub quantum: f64,
    /// `Σⱼ |a₀ⱼ|² |bⱼ₀|²`, the quantum walk observed after each step.
    pub measured_quantum: f64,
}

/// Probability of returning to state 0 after two steps.
pub fn classical_vs_quantum_p0(model: &TransitionModel) -> Result<P0Comparison> {
    let classical = (0..DIM).map(|j| model.p[(0, j)] * model.q[(j, 0)]).sum();
    let amplitude: Complex64 = (0..DIM).map(|j| model.amp1[(0, j)] * model.amp2[(j, 0)]).sum();
    let measured_quantum = (0..DIM)
        .map(|j| model.amp1[(0, j)].norm_sqr() * model.amp2[(j, 0)].norm_sqr())
        .sum();
    let out = P0Comparison {
        classical,
        quantum: amplitude.norm_sqr(),
        measured_quantum,
    };
    if (out.classical - out.measured_quantum).abs() > NORM_TOLERANCE {
        return Err(Error::Numerical(format!(
            "measured walk {} disagrees with classical {}",
            out.measured_quantum, out.classical
        )));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_never_branches() {
        let r = classical_vs_quantum_p0(&TransitionModel::identity()).unwrap();
        assert_eq!((r.classical, r.quantum), (1.0, 1.0));
    }

    #[test]
    fn hadamard_interferes() {
        let r = classical_vs_quantum_p0(&TransitionModel::hadamard()).unwrap();
        assert!((r.quantum - 1.0).abs() < 1e-12);
        assert!((r.classical - 0.25).abs() < 1e-12);
    }

    #[test]
    fn random_models_are_row_stochastic() {
        let mut rng = RandomSource::new(9);
        for _ in 0..20 {
            let m = TransitionModel::random(&mut rng).unwrap();
            for row in m.step1().row_iter().chain(m.step2().row_iter()) {
                assert!((row.sum() - 1.0).abs() < 1e-10);
            }
            let r = classical_vs_quantum_p0(&m).unwrap();
            assert!((r.classical - r.measured_quantum).abs() < 1e-10);
        }
    }

    #[test]
    fn stochastic_lift_of_uniform_matrix() {
        let p = DMatrix::from_element(DIM, DIM, 0.25);
        let m = TransitionModel::from_stochastic(&p, &p).unwrap();
        assert!(unitarity_defect(m.amp1()) < 1e-10);
        for row in m.step1().row_iter() {
            assert!((row.sum() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn rejects_non_stochastic() {
        let p = DMatrix::from_element(DIM, DIM, 0.3);
        assert!(TransitionModel::from_stochastic(&p, &p).is_err());
    }
}
