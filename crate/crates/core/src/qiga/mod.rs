//! Quantum-inspired genetic algorithm for the travelling salesman problem.
//!
//! Several independent populations ("universes") evolve side by side.
//! Chromosomes at the same index in different universes occasionally
//! exchange genes by crossover ("interference").

mod ops;
mod run;
mod select;
mod tsp;

pub use ops::{crossover, interfere, mutate, swap_positions, InterferenceEvent};
pub use run::{run, GaParams, GaRun, GenerationLog, Multiverse, StopReason, Termination};
pub use select::{select, Selection};
pub use tsp::{tour_length, City, Tour, TspInstance};
