use std::fmt;
use std::sync::Arc;

use crate::qcore::MAX_QUBITS;
use crate::{Error, Result};

type Predicate = Arc<dyn Fn(usize) -> bool + Send + Sync>;

/// A total boolean function on `n`-bit inputs, lifted by the simulator to a
/// phase or bit oracle on basis states.
#[derive(Clone)]
pub struct Oracle {
    n: usize,
    predicate: Predicate,
    solution_count: usize,
}

impl fmt::Debug for Oracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Oracle")
            .field("n", &self.n)
            .field("solution_count", &self.solution_count)
            .finish_non_exhaustive()
    }
}

fn check_width(n: usize) -> Result<()> {
    if n == 0 || n > MAX_QUBITS {
        return Err(Error::QubitCount(n));
    }
    Ok(())
}

impl Oracle {
    /// Counts solutions by enumerating all `2^n` inputs.
    pub fn new(n: usize, predicate: impl Fn(usize) -> bool + Send + Sync + 'static) -> Result<Self> {
        check_width(n)?;
        let solution_count = (0..1usize << n).filter(|&x| predicate(x)).count();
        Ok(Self {
            n,
            predicate: Arc::new(predicate),
            solution_count,
        })
    }

    /// Trusts a caller-supplied solution count.
    pub fn with_solution_count(
        n: usize,
        predicate: impl Fn(usize) -> bool + Send + Sync + 'static,
        solution_count: usize,
    ) -> Result<Self> {
        check_width(n)?;
        if solution_count > 1 << n {
            return Err(Error::InvalidInput(format!(
                "{solution_count} solutions exceed the {}-element domain",
                1usize << n
            )));
        }
        Ok(Self {
            n,
            predicate: Arc::new(predicate),
            solution_count,
        })
    }

    pub fn from_marked(n: usize, marked: &[usize]) -> Result<Self> {
        check_width(n)?;
        if let Some(&x) = marked.iter().find(|&&x| x >> n != 0) {
            return Err(Error::InvalidInput(format!(
                "marked item {x} does not fit in {n} bits"
            )));
        }
        let mut set = marked.to_vec();
        set.sort_unstable();
        set.dedup();
        let k = set.len();
        Self::with_solution_count(n, move |x| set.binary_search(&x).is_ok(), k)
    }

    /// Truth table indexed by input; length must be a power of two.
    pub fn from_truth_table(table: Vec<bool>) -> Result<Self> {
        if !table.len().is_power_of_two() || table.len() < 2 {
            return Err(Error::InvalidInput(format!(
                "truth table length {} is not a power of two ≥ 2",
                table.len()
            )));
        }
        let n = table.len().trailing_zeros() as usize;
        let k = table.iter().filter(|&&b| b).count();
        Self::with_solution_count(n, move |x| table[x], k)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn eval(&self, x: usize) -> bool {
        (self.predicate)(x)
    }

    pub fn solution_count(&self) -> usize {
        self.solution_count
    }

    pub fn solutions(&self) -> Vec<usize> {
        (0..1usize << self.n).filter(|&x| self.eval(x)).collect()
    }
}
