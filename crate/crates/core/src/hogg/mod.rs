//! Quantum search heuristics over the lattice of partial assignments.
//!
//! A constraint problem is encoded as a ground set of variable–value pairs; a
//! lattice state holds one amplitude per subset of that ground set. Search
//! moves amplitude one level up the lattice per step through the nearest unitary
//! to the raw "add one pair" map, with phase adjustments steering interference
//! away from inconsistent sets. The HTH variant replaces the level map with
//! `H^{⊗N} · T · H^{⊗N}` over the whole subset space.

mod csp;
mod hth;
mod lattice;
mod mixing;

pub use csp::{consistency, ConsistencyReport, CspInstance, MAX_GROUND};
pub use hth::{hth_step, hth_trajectory, run_hth, HthMixer, HthRun};
pub use lattice::{
    evolve_by_overlap, initial_state, lattice_step, run_lattice, LatticeRun, LatticeState,
    LevelProbe, PhasePolicy, StepOrder,
};
pub use mixing::{
    nearest_unitary, polar_unitary, raw_level_advance, unitarity_defect, CMatrix, LevelAdvance,
    MixingOperator, OverlapCoefficient,
};
