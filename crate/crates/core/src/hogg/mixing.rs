use nalgebra::DMatrix;
use num_complex::Complex64;

use super::csp::MAX_GROUND;
use crate::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;

const SVD_EPS: f64 = 1e-15;
const SVD_MAX_ITER: usize = 100_000;
/// Singular values below this mark a rank-deficient level block.
const RANK_TOLERANCE: f64 = 1e-9;
/// Allowed spread among entries that must share one `a_k` value.
const OVERLAP_TOLERANCE: f64 = 1e-9;

/// `max |M†M − I|`.
pub fn unitarity_defect(m: &CMatrix) -> f64 {
    let prod = m.adjoint() * m;
    let mut worst: f64 = 0.0;
    for j in 0..prod.ncols() {
        for i in 0..prod.nrows() {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((prod[(i, j)] - Complex64::new(target, 0.0)).norm());
        }
    }
    worst
}

/// Frobenius-nearest unitary to a square matrix: the polar factor `U·V†` of its SVD.
///
/// When the matrix is singular the polar factor is not unique; the zero
/// singular directions are paired by the singular vectors the decomposition
/// returns, which still completes `U·V†` to a unitary.
pub fn polar_unitary(w: &CMatrix) -> Result<CMatrix> {
    if !w.is_square() {
        return Err(Error::Dimension {
            expected: w.nrows(),
            found: w.ncols(),
        });
    }
    let svd = w
        .clone()
        .try_svd(true, true, SVD_EPS, SVD_MAX_ITER)
        .ok_or_else(|| Error::Numerical("SVD did not converge".into()))?;
    let (u, v_t) = (svd.u.expect("requested U"), svd.v_t.expect("requested V^T"));
    Ok(u * v_t)
}

/// Polar factor of a real matrix with full column rank (an isometry).
fn polar_isometry(b: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let svd = b
        .clone()
        .try_svd(true, true, SVD_EPS, SVD_MAX_ITER)
        .ok_or_else(|| Error::Numerical("SVD did not converge".into()))?;
    let smallest = svd.singular_values.iter().copied().fold(f64::INFINITY, f64::min);
    if smallest < RANK_TOLERANCE {
        return Err(Error::Numerical(format!(
            "level block is rank deficient (smallest singular value {smallest:.3e})"
        )));
    }
    Ok(svd.u.expect("requested U") * svd.v_t.expect("requested V^T"))
}

/// The raw map that moves amplitude from each set at level `j` to every
/// superset one element larger.
///
/// As a `2^N × 2^N` matrix: `W[r][s] = 1` when `|s| = j`, `|r| = j+1`, `s ⊂ r`;
/// columns of level-`j+1` sets are zero (nothing is carried out of the level
/// being filled); every other level maps to itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LevelAdvance {
    ground_size: usize,
    level: usize,
}

pub fn raw_level_advance(ground_size: usize, level: usize) -> Result<LevelAdvance> {
    if ground_size == 0 || ground_size > MAX_GROUND {
        return Err(Error::InvalidInput(format!(
            "ground set size {ground_size} outside 1..={MAX_GROUND}"
        )));
    }
    if level >= ground_size {
        return Err(Error::InvalidInput(format!(
            "level {level} has no level above it in a ground set of {ground_size}"
        )));
    }
    Ok(LevelAdvance { ground_size, level })
}

impl LevelAdvance {
    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn dim(&self) -> usize {
        1 << self.ground_size
    }

    pub fn entry(&self, r: u32, s: u32) -> f64 {
        let (lr, ls) = (r.count_ones() as usize, s.count_ones() as usize);
        let j = self.level;
        if ls == j {
            (lr == j + 1 && r & s == s) as u8 as f64
        } else if ls == j + 1 {
            0.0
        } else {
            (r == s) as u8 as f64
        }
    }

    pub fn to_dense(&self) -> CMatrix {
        let dim = self.dim();
        CMatrix::from_fn(dim, dim, |r, s| Complex64::new(self.entry(r as u32, s as u32), 0.0))
    }

    fn level_sets(&self, level: usize) -> Vec<u32> {
        (0..self.dim() as u32)
            .filter(|s| s.count_ones() as usize == level)
            .collect()
    }
}

/// One `a_k^{(j)}` coefficient: the mixing amplitude between a level-`j` set and a
/// level-`j+1` set that share `overlap` elements.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OverlapCoefficient {
    pub overlap: usize,
    pub value: f64,
}

/// Nearest unitary to a [`LevelAdvance`], stored in block form.
///
/// With `Q` the polar factor of the level block `B` (level `j` → level `j+1`,
/// full column rank), the operator is
///
/// ```text
///   level j   → level j+1 : Q
///   level j+1 → level j   : Qᵀ
///   level j+1 → level j+1 : I − Q·Qᵀ
///   other levels          : I
/// ```
///
/// The first row is the unique part of the polar factor of `W`; the rest is the
/// permutation-symmetric completion of `W`'s null space.
#[derive(Debug, Clone)]
pub struct MixingOperator {
    raw: LevelAdvance,
    lower: Vec<u32>,
    upper: Vec<u32>,
    rank: Vec<u32>,
    q: DMatrix<f64>,
}

/// Computes the nearest unitary to the raw level map `w`.
///
/// Fails when level `j+1` has fewer sets than level `j`: then no unitary can
/// carry level `j` into level `j+1` without leaving amplitude behind.
pub fn nearest_unitary(w: &LevelAdvance) -> Result<MixingOperator> {
    let lower = w.level_sets(w.level);
    let upper = w.level_sets(w.level + 1);
    if upper.len() < lower.len() {
        return Err(Error::InvalidInput(format!(
            "level {} has {} sets but level {} only {}; the advance cannot be unitary",
            w.level,
            lower.len(),
            w.level + 1,
            upper.len()
        )));
    }
    let mut rank = vec![0u32; w.dim()];
    for list in [&lower, &upper] {
        for (i, &s) in list.iter().enumerate() {
            rank[s as usize] = i as u32;
        }
    }
    let block = DMatrix::from_fn(upper.len(), lower.len(), |r, s| {
        w.entry(upper[r], lower[s])
    });
    let q = polar_isometry(&block)?;
    Ok(MixingOperator {
        raw: *w,
        lower,
        upper,
        rank,
        q,
    })
}

impl MixingOperator {
    pub fn for_level(ground_size: usize, level: usize) -> Result<Self> {
        nearest_unitary(&raw_level_advance(ground_size, level)?)
    }

    pub fn level(&self) -> usize {
        self.raw.level
    }

    pub fn ground_size(&self) -> usize {
        self.raw.ground_size
    }

    pub fn dim(&self) -> usize {
        self.raw.dim()
    }

    /// The raw level map this operator was derived from.
    pub fn raw(&self) -> &LevelAdvance {
        &self.raw
    }

    /// Isometry `Q` from level `j` (columns) to level `j+1` (rows), sets in ascending mask order.
    pub fn isometry(&self) -> &DMatrix<f64> {
        &self.q
    }

    pub fn entry(&self, r: u32, s: u32) -> f64 {
        let j = self.level();
        let (lr, ls) = (r.count_ones() as usize, s.count_ones() as usize);
        let (rr, rs) = (self.rank[r as usize] as usize, self.rank[s as usize] as usize);
        match (ls, lr) {
            (ls, lr) if ls == j && lr == j + 1 => self.q[(rr, rs)],
            (ls, _) if ls == j => 0.0,
            (ls, lr) if ls == j + 1 && lr == j => self.q[(rs, rr)],
            (ls, lr) if ls == j + 1 && lr == j + 1 => {
                let dot: f64 = self.q.row(rr).dot(&self.q.row(rs));
                (r == s) as u8 as f64 - dot
            }
            (ls, _) if ls == j + 1 => 0.0,
            _ => (r == s) as u8 as f64,
        }
    }

    pub fn to_dense(&self) -> CMatrix {
        let dim = self.dim();
        CMatrix::from_fn(dim, dim, |r, s| Complex64::new(self.entry(r as u32, s as u32), 0.0))
    }

    /// Applies the operator to a full `2^N` amplitude vector.
    pub fn apply(&self, amps: &[Complex64]) -> Result<Vec<Complex64>> {
        if amps.len() != self.dim() {
            return Err(Error::Dimension {
                expected: self.dim(),
                found: amps.len(),
            });
        }
        let zero = Complex64::new(0.0, 0.0);
        let x: Vec<Complex64> = self.lower.iter().map(|&s| amps[s as usize]).collect();
        let y: Vec<Complex64> = self.upper.iter().map(|&s| amps[s as usize]).collect();
        let (m, k) = (self.upper.len(), self.lower.len());
        // Qᵀ y
        let mut qt_y = vec![zero; k];
        for (c, slot) in qt_y.iter_mut().enumerate() {
            *slot = (0..m).map(|r| y[r] * self.q[(r, c)]).sum();
        }
        let mut out = amps.to_vec();
        for (c, &s) in self.lower.iter().enumerate() {
            out[s as usize] = qt_y[c];
        }
        for (r, &s) in self.upper.iter().enumerate() {
            // Q x + (I − Q Qᵀ) y
            let mix: Complex64 = (0..k).map(|c| (x[c] - qt_y[c]) * self.q[(r, c)]).sum();
            out[s as usize] = y[r] + mix;
        }
        Ok(out)
    }

    /// Reads the `a_k^{(j)}` coefficients off `Q`, checking that each entry depends
    /// only on the overlap `|r ∩ s|`.
    pub fn overlap_coefficients(&self) -> Result<Vec<OverlapCoefficient>> {
        let j = self.level();
        let mut seen: Vec<Option<(f64, f64)>> = vec![None; j + 1];
        for (r, &rm) in self.upper.iter().enumerate() {
            for (s, &sm) in self.lower.iter().enumerate() {
                let k = (rm & sm).count_ones() as usize;
                let v = self.q[(r, s)];
                let slot = &mut seen[k];
                *slot = Some(match *slot {
                    None => (v, v),
                    Some((lo, hi)) => (lo.min(v), hi.max(v)),
                });
            }
        }
        seen.into_iter()
            .enumerate()
            .filter_map(|(k, range)| range.map(|r| (k, r)))
            .map(|(overlap, (lo, hi))| {
                if hi - lo > OVERLAP_TOLERANCE {
                    Err(Error::Numerical(format!(
                        "mixing entries with overlap {overlap} differ by {:.3e}",
                        hi - lo
                    )))
                } else {
                    Ok(OverlapCoefficient {
                        overlap,
                        value: 0.5 * (lo + hi),
                    })
                }
            })
            .collect()
    }
}
