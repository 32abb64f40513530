use rayon::prelude::*;
use serde::Serialize;

use crate::qiga::{crossover, interfere, mutate, select, tour_length, Selection, Tour, TspInstance};
use crate::{Error, RandomSource, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GaParams {
    pub mutation_prob: f64,
    pub crossover_prob: f64,
    pub interference_prob: f64,
    pub universes: usize,
    pub population: usize,
    pub seed: u64,
    pub max_generations: usize,
    pub selection: Selection,
    /// Stop once the best tour has gone unimproved for
    /// `max(1, ⌈g*/2⌉)` generations, `g*` being when it was found.
    pub use_patience: bool,
}

impl Default for GaParams {
    fn default() -> Self {
        Self {
            mutation_prob: 0.3,
            crossover_prob: 0.8,
            interference_prob: 0.2,
            universes: 4,
            population: 20,
            seed: 0,
            max_generations: 5000,
            selection: Selection::Rank,
            use_patience: true,
        }
    }
}

impl GaParams {
    pub fn validate(&self) -> Result<()> {
        for (name, p) in [
            ("mutation_prob", self.mutation_prob),
            ("crossover_prob", self.crossover_prob),
            ("interference_prob", self.interference_prob),
        ] {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidInput(format!("{name} = {p} is outside [0, 1]")));
            }
        }
        if self.universes == 0 || self.population == 0 {
            return Err(Error::InvalidInput("universes and population must be positive".into()));
        }
        if self.max_generations == 0 {
            return Err(Error::InvalidInput("max_generations must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GenerationLog {
    pub generation: usize,
    pub best_length: f64,
    pub mean_length: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StopReason {
    Patience,
    GenerationCap,
}

/// The no-improvement stopping rule: after the best length first appears at
/// generation `g*`, stop once `max(1, ⌈g*/2⌉)` generations pass without a
/// strictly shorter tour.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Termination {
    best_length: f64,
    best_generation: usize,
}

impl Default for Termination {
    fn default() -> Self {
        Self {
            best_length: f64::INFINITY,
            best_generation: 0,
        }
    }
}

impl Termination {
    /// Records the best length seen at `generation`; true on improvement.
    pub fn observe(&mut self, generation: usize, length: f64) -> bool {
        if length < self.best_length {
            self.best_length = length;
            self.best_generation = generation;
            true
        } else {
            false
        }
    }

    pub fn best_length(&self) -> f64 {
        self.best_length
    }

    pub fn best_generation(&self) -> usize {
        self.best_generation
    }

    /// Generations without improvement needed before stopping.
    pub fn patience(&self) -> usize {
        self.best_generation.div_ceil(2).max(1)
    }

    pub fn fires_at(&self, generation: usize) -> bool {
        generation.saturating_sub(self.best_generation) >= self.patience()
    }
}

#[derive(Debug, Clone, PartialEq)]
struct Best {
    tour: Tour,
    termination: Termination,
}

/// All universes plus the best tour seen so far.
#[derive(Debug, Clone)]
pub struct Multiverse {
    instance: TspInstance,
    params: GaParams,
    universes: Vec<Vec<Tour>>,
    streams: Vec<RandomSource>,
    interference_rng: RandomSource,
    generation: usize,
    best: Best,
    log: Vec<GenerationLog>,
}

impl Multiverse {
    /// Random initial populations; each universe draws from its own stream.
    pub fn new(instance: TspInstance, params: GaParams) -> Result<Self> {
        params.validate()?;
        let master = RandomSource::new(params.seed);
        let mut streams: Vec<RandomSource> =
            (0..params.universes).map(|u| master.split(u as u64)).collect();
        let universes: Vec<Vec<Tour>> = streams
            .iter_mut()
            .map(|rng| (0..params.population).map(|_| instance.random_tour(rng)).collect())
            .collect();
        let interference_rng = master.split(params.universes as u64);
        let placeholder = Best {
            tour: universes[0][0].clone(),
            termination: Termination::default(),
        };
        let mut mv = Self {
            instance,
            params,
            universes,
            streams,
            interference_rng,
            generation: 0,
            best: placeholder,
            log: Vec::new(),
        };
        mv.record();
        Ok(mv)
    }

    fn record(&mut self) {
        let mut total = 0.0;
        let mut count = 0usize;
        let mut gen_best: Option<(f64, &Tour)> = None;
        for tour in self.universes.iter().flatten() {
            let len = tour_length(tour, &self.instance);
            total += len;
            count += 1;
            if gen_best.is_none_or(|(b, _)| len < b) {
                gen_best = Some((len, tour));
            }
        }
        let (len, tour) = gen_best.expect("non-empty populations");
        if self.best.termination.observe(self.generation, len) {
            self.best.tour = tour.clone();
        }
        self.log.push(GenerationLog {
            generation: self.generation,
            best_length: len,
            mean_length: total / count as f64,
        });
    }

    /// One generation: mutation and crossover within each universe,
    /// interference across universes, then selection over parents and
    /// offspring.
    pub fn step(&mut self) -> Result<()> {
        let p = self.params.clone();
        let mut offspring: Vec<Vec<Tour>> = self
            .universes
            .par_iter()
            .zip(self.streams.par_iter_mut())
            .map(|(parents, rng)| {
                (0..parents.len())
                    .map(|i| {
                        let mut child = parents[i].clone();
                        if rng.chance(p.mutation_prob) {
                            child = mutate(&child, rng);
                        }
                        if parents.len() > 1 && rng.chance(p.crossover_prob) {
                            let j = (i + 1 + rng.below(parents.len() - 1)) % parents.len();
                            child = crossover(&child, &parents[j]);
                        }
                        child
                    })
                    .collect()
            })
            .collect();
        interfere(&mut offspring, p.interference_prob, &mut self.interference_rng);
        let instance = &self.instance;
        self.universes = self
            .universes
            .par_iter()
            .zip(offspring.into_par_iter())
            .zip(self.streams.par_iter_mut())
            .map(|((parents, children), rng)| {
                let pool: Vec<Tour> = parents.iter().cloned().chain(children).collect();
                select(&pool, instance, p.population, p.selection, rng)
            })
            .collect();
        self.generation += 1;
        self.validate()?;
        self.record();
        Ok(())
    }

    /// Every chromosome is a permutation and every universe is full.
    pub fn validate(&self) -> Result<()> {
        let n = self.instance.len();
        for (u, pop) in self.universes.iter().enumerate() {
            if pop.len() != self.params.population {
                return Err(Error::Numerical(format!("universe {u} has {} members", pop.len())));
            }
            if let Some(t) = pop.iter().find(|t| !t.is_valid(n)) {
                return Err(Error::Numerical(format!("invalid tour {:?} in universe {u}", t.order())));
            }
        }
        Ok(())
    }

    pub fn stop_reason(&self) -> Option<StopReason> {
        if self.params.use_patience && self.best.termination.fires_at(self.generation) {
            return Some(StopReason::Patience);
        }
        (self.generation >= self.params.max_generations).then_some(StopReason::GenerationCap)
    }

    pub fn generation(&self) -> usize {
        self.generation
    }

    pub fn universes(&self) -> &[Vec<Tour>] {
        &self.universes
    }

    pub fn best_tour(&self) -> &Tour {
        &self.best.tour
    }

    pub fn best_length(&self) -> f64 {
        self.best.termination.best_length()
    }

    pub fn best_generation(&self) -> usize {
        self.best.termination.best_generation()
    }

    pub fn log(&self) -> &[GenerationLog] {
        &self.log
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GaRun {
    pub best_tour: Vec<String>,
    pub best_length: f64,
    pub best_generation: usize,
    pub generations: usize,
    pub stop_reason: StopReason,
    pub log: Vec<GenerationLog>,
}

pub fn run(instance: &TspInstance, params: &GaParams) -> Result<GaRun> {
    let mut mv = Multiverse::new(instance.clone(), params.clone())?;
    let stop_reason = loop {
        if let Some(reason) = mv.stop_reason() {
            break reason;
        }
        mv.step()?;
    };
    Ok(GaRun {
        best_tour: mv.best_tour().ids(instance).into_iter().map(String::from).collect(),
        best_length: mv.best_length(),
        best_generation: mv.best_generation(),
        generations: mv.generation(),
        stop_reason,
        log: mv.log,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn patience_rule() {
        let mut t = Termination::default();
        t.observe(0, 5.0);
        assert_eq!(t.patience(), 1);
        assert!(!t.fires_at(0) && t.fires_at(1));
        t.observe(10, 4.0);
        assert_eq!(t.patience(), 5);
        assert!(!t.observe(12, 4.0));
        assert!(!t.fires_at(14) && t.fires_at(15));
        t.observe(15, 3.0);
        assert_eq!(t.patience(), 8);
    }

    #[test]
    fn flat_landscape_stops_after_one_generation() {
        let inst = TspInstance::circle(3, 1.0).unwrap();
        let r = run(&inst, &GaParams::default()).unwrap();
        assert_eq!((r.best_generation, r.generations), (0, 1));
        assert_eq!(r.stop_reason, StopReason::Patience);
    }

    #[test]
    fn seeded_runs_repeat() {
        let inst = TspInstance::circle(8, 1.0).unwrap();
        let params = GaParams {
            seed: 77,
            ..GaParams::default()
        };
        assert_eq!(run(&inst, &params).unwrap(), run(&inst, &params).unwrap());
    }

    #[test]
    fn best_never_worsens() {
        let inst = TspInstance::circle(9, 1.0).unwrap();
        let params = GaParams {
            use_patience: false,
            max_generations: 40,
            seed: 3,
            ..GaParams::default()
        };
        let mut mv = Multiverse::new(inst, params).unwrap();
        let mut last = mv.best_length();
        while mv.stop_reason().is_none() {
            mv.step().unwrap();
            assert!(mv.best_length() <= last);
            last = mv.best_length();
        }
        assert_eq!(mv.generation(), 40);
        assert_eq!(mv.log().len(), 41);
    }

    #[test]
    fn rejects_bad_params() {
        let inst = TspInstance::circle(5, 1.0).unwrap();
        let bad = GaParams {
            mutation_prob: 1.5,
            ..GaParams::default()
        };
        assert!(run(&inst, &bad).is_err());
    }
}
