use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use qai_core::hogg::{
    consistency, run_hth, run_lattice, ConsistencyReport, CspInstance, HthMixer, PhasePolicy,
    StepOrder,
};
use qai_core::qalgos::{
    classical_vs_quantum_p0, default_iterations, deutsch_jozsa, grover_search,
    grover_search_ancilla, interferometer, qft, qft_gate_count, shor_factor, InterferometerSetup,
    Oracle, ShorStatus, TransitionModel,
};
use qai_core::qam::{recall_with, store, Diffusion, PartialPattern, PatternSet, RecallStatus};
use qai_core::qcore::bit_label;
use qai_core::qiga::{run as run_ga, GaParams, Selection, TspInstance};
use qai_core::{Complex64, RandomSource, StateVector};
use serde_json::{json, Value};

use crate::args::{
    Command, Common, DiffusionChoice, DjArgs, DjFunction, GroverArgs, HoggArgs, HthArgs,
    InterfereArgs, MixerChoice, OrderChoice, PolicyChoice, QamArgs, QftArgs, QgaArgs,
    SelectionChoice, ShorArgs,
};
use crate::output::{Report, Status, Table};

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::InterfereDemo(_) => "interfere-demo",
            Command::Dj(_) => "dj",
            Command::Grover(_) => "grover",
            Command::Qft(_) => "qft",
            Command::Shor(_) => "shor",
            Command::Hogg(_) => "hogg",
            Command::Hth(_) => "hth",
            Command::Qam(_) => "qam",
            Command::Qga(_) => "qga",
        }
    }

    pub fn common(&self) -> &Common {
        match self {
            Command::InterfereDemo(a) => &a.common,
            Command::Dj(a) => &a.common,
            Command::Grover(a) => &a.common,
            Command::Qft(a) => &a.common,
            Command::Shor(a) => &a.common,
            Command::Hogg(a) => &a.common,
            Command::Hth(a) => &a.common,
            Command::Qam(a) => &a.common,
            Command::Qga(a) => &a.common,
        }
    }

    /// Echo of every flag that affects the result, including the seed.
    pub fn config(&self) -> Result<Value> {
        let value = match self {
            Command::InterfereDemo(a) => serde_json::to_value(a),
            Command::Dj(a) => serde_json::to_value(a),
            Command::Grover(a) => serde_json::to_value(a),
            Command::Qft(a) => serde_json::to_value(a),
            Command::Shor(a) => serde_json::to_value(a),
            Command::Hogg(a) => serde_json::to_value(a),
            Command::Hth(a) => serde_json::to_value(a),
            Command::Qam(a) => serde_json::to_value(a),
            Command::Qga(a) => serde_json::to_value(a),
        };
        Ok(value?)
    }

    pub fn execute(&self) -> Result<Report> {
        match self {
            Command::InterfereDemo(a) => interfere_demo(a),
            Command::Dj(a) => dj(a),
            Command::Grover(a) => grover(a),
            Command::Qft(a) => qft_cmd(a),
            Command::Shor(a) => shor(a),
            Command::Hogg(a) => hogg(a),
            Command::Hth(a) => hth(a),
            Command::Qam(a) => qam(a),
            Command::Qga(a) => qga(a),
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn parse_file<T>(path: &Path, parse: impl Fn(&str) -> qai_core::Result<T>) -> Result<T> {
    let text = read(path)?;
    parse(&text).with_context(|| format!("{}: invalid input", path.display()))
}

fn curve_table(curve: &[(usize, f64)], header: &[&'static str]) -> Table {
    let mut table = Table::new(header);
    for &(t, p) in curve {
        table.push(vec![t.into(), p.into()]);
    }
    table
}

fn interfere_demo(a: &InterfereArgs) -> Result<Report> {
    let mut rng = RandomSource::new(a.common.seed);
    let setup = InterferometerSetup {
        splitters: a.splitters,
        block_path: a.block_path,
        mid_measurement: a.mid_measurement,
    };
    let stats = interferometer(setup, a.trials, &mut rng)?;
    let random = TransitionModel::random(&mut rng.split(1))?;
    let payload = json!({
        "detectors": stats,
        "p0": {
            "identity": classical_vs_quantum_p0(&TransitionModel::identity())?,
            "hadamard": classical_vs_quantum_p0(&TransitionModel::hadamard())?,
            "random": classical_vs_quantum_p0(&random)?,
        },
    });
    Report::new(Status::Ok, payload, None)
}

fn dj(a: &DjArgs) -> Result<Report> {
    let n = a.n;
    let oracle = match a.function {
        DjFunction::Zero => Oracle::new(n, |_| false)?,
        DjFunction::One => Oracle::new(n, |_| true)?,
        DjFunction::Parity => Oracle::new(n, |x: usize| x.count_ones() % 2 == 1)?,
        DjFunction::RandomBalanced => {
            if n == 0 || n > 20 {
                bail!("random-balanced needs 1 ≤ n ≤ 20");
            }
            let half = 1usize << (n - 1);
            let mut table: Vec<bool> = (0..2 * half).map(|x| x < half).collect();
            RandomSource::new(a.common.seed).split(1).shuffle(&mut table);
            Oracle::from_truth_table(table)?
        }
    };
    let mut rng = RandomSource::new(a.common.seed);
    let result = deutsch_jozsa(&oracle, &mut rng)?;
    let payload = json!({
        "n": n,
        "function": a.function,
        "solution_count": oracle.solution_count(),
        "verdict": result.verdict,
        "outcome": result.outcome,
        "p_zero": result.p_zero,
    });
    Report::new(Status::Ok, payload, None)
}

fn grover(a: &GroverArgs) -> Result<Report> {
    let oracle = Oracle::from_marked(a.n, &a.marked)?;
    let mut rng = RandomSource::new(a.common.seed);
    let run = grover_search(&oracle, a.iterations, &mut rng)?;
    let mut payload = serde_json::to_value(&run)?;
    if a.ancilla {
        let anc = grover_search_ancilla(&oracle, a.iterations, &mut rng.split(1))?;
        payload["ancilla"] = serde_json::to_value(anc)?;
    }
    let table = curve_table(&run.curve, &["iteration", "success_probability"]);
    Report::new(Status::Ok, payload, Some(table))
}

fn qft_cmd(a: &QftArgs) -> Result<Report> {
    let n = a.n;
    let (input, state) = match (a.basis, a.period) {
        (_, Some(0)) => bail!("period must be positive"),
        (_, Some(r)) => {
            let amps = (0..1usize << n)
                .map(|i| Complex64::new(if i % r == 0 { 1.0 } else { 0.0 }, 0.0))
                .collect();
            (format!("comb period {r}"), StateVector::normalized(n, amps)?)
        }
        (b, None) => {
            let b = b.unwrap_or(0);
            (format!("basis {}", bit_label(b, n)), StateVector::basis(n, b)?)
        }
    };
    let out = qft(&state)?;
    let mut table = Table::new(&["index", "probability"]);
    let mut support = Vec::new();
    for (c, amp) in out.amplitudes().iter().enumerate() {
        let p = amp.norm_sqr();
        if p > 1e-12 {
            table.push(vec![c.into(), p.into()]);
            support.push(json!({"index": c, "probability": p, "re": amp.re, "im": amp.im}));
        }
    }
    let payload = json!({
        "n": n,
        "input": input,
        "gate_count": qft_gate_count(n),
        "support": support,
    });
    Report::new(Status::Ok, payload, Some(table))
}

fn shor(a: &ShorArgs) -> Result<Report> {
    let mut rng = RandomSource::new(a.common.seed);
    let run = shor_factor(a.m, &mut rng, a.max_attempts)?;
    let status = match run.status {
        ShorStatus::Factored => Status::Ok,
        ShorStatus::Failed => Status::Failure,
    };
    Report::new(status, run, None)
}

fn policies(choice: PolicyChoice, report: &ConsistencyReport) -> Vec<PhasePolicy> {
    match choice {
        PolicyChoice::All => PhasePolicy::shipped(report),
        PolicyChoice::Sign => vec![PhasePolicy::inconsistent_sign(report)],
        PolicyChoice::Conflict => vec![PhasePolicy::conflict_phase(report)],
        PolicyChoice::Identity => vec![PhasePolicy::identity(report.ground_size())],
        PolicyChoice::Solutions => vec![PhasePolicy::from_predicate(
            "solutions",
            report.ground_size(),
            |s| report.is_solution(s),
        )],
    }
}

fn problem_summary(inst: &CspInstance, report: &ConsistencyReport) -> Value {
    json!({
        "num_vars": inst.num_vars(),
        "domain_size": inst.domain_size(),
        "ground_size": inst.ground_size(),
        "nogoods": inst.nogoods().len(),
        "solution_count": report.solution_count(),
    })
}

fn hogg(a: &HoggArgs) -> Result<Report> {
    let inst = parse_file(&a.input, CspInstance::parse)?;
    let report = consistency(&inst);
    let orders = match a.order {
        OrderChoice::Both => vec![StepOrder::PhaseThenMix, StepOrder::MixThenPhase],
        OrderChoice::PhaseThenMix => vec![StepOrder::PhaseThenMix],
        OrderChoice::MixThenPhase => vec![StepOrder::MixThenPhase],
    };
    let mut table = Table::new(&["policy", "order", "step", "level", "p_consistent"]);
    let mut runs = Vec::new();
    for policy in policies(a.policy, &report) {
        for &order in &orders {
            let run = run_lattice(&inst, &policy, a.level, order)?;
            let order_name = serde_json::to_value(order)?;
            for probe in &run.probes {
                table.push(vec![
                    run.policy.as_str().into(),
                    order_name.as_str().unwrap_or_default().into(),
                    probe.step.into(),
                    probe.level.into(),
                    probe.p_consistent.into(),
                ]);
            }
            runs.push(json!({
                "policy": run.policy,
                "order": order,
                "start_level": run.start_level,
                "final_level": run.final_level,
                "p_solution": run.p_solution,
                "baseline_uniform": run.baseline_uniform,
                "baseline_level": run.baseline_level,
                "beats_uniform_baseline": run.p_solution > run.baseline_uniform,
                "probes": run.probes,
            }));
        }
    }
    let payload = json!({"problem": problem_summary(&inst, &report), "runs": runs});
    Report::new(Status::Ok, payload, Some(table))
}

fn hth(a: &HthArgs) -> Result<Report> {
    let inst = parse_file(&a.input, CspInstance::parse)?;
    let report = consistency(&inst);
    let policy = match a.policy {
        PolicyChoice::All => bail!("hth runs a single policy; choose one of sign, conflict, identity, solutions"),
        choice => policies(choice, &report).remove(0),
    };
    let mixer = match a.mixer {
        MixerChoice::Zero => HthMixer::ZeroReflection,
        MixerChoice::Conflict => HthMixer::ConflictPhase,
    };
    let steps = a
        .steps
        .unwrap_or_else(|| default_iterations(inst.ground_size(), report.solution_count()));
    let run = run_hth(&inst, &policy, &mixer, steps)?;
    let curve: Vec<(usize, f64)> = run.curve.iter().copied().enumerate().collect();
    let payload = json!({
        "problem": problem_summary(&inst, &report),
        "policy": run.policy,
        "mixer": run.mixer,
        "steps": steps,
        "curve": curve,
        "p_solution": run.curve.last().copied().unwrap_or_default(),
        "baseline_uniform": report.solution_count() as f64 / (1u64 << inst.ground_size()) as f64,
    });
    Report::new(Status::Ok, payload, Some(curve_table(&curve, &["step", "p_solution"])))
}

fn qam(a: &QamArgs) -> Result<Report> {
    let patterns = parse_file(&a.patterns, PatternSet::parse)?;
    let query = PartialPattern::parse(&a.query).context("invalid query")?;
    if query.n() != patterns.n() {
        bail!("query has {} symbols but patterns have {}", query.n(), patterns.n());
    }
    let memory = store(&patterns)?;
    let diffusion = match a.diffusion {
        DiffusionChoice::Memory => Diffusion::AboutMemory,
        DiffusionChoice::Average => Diffusion::AboutAverage,
    };
    let mut rng = RandomSource::new(a.common.seed);
    let result = recall_with(&memory, &query, diffusion, a.iterations, &mut rng)?;
    let status = match result.status {
        RecallStatus::Recalled => Status::Ok,
        RecallStatus::NoMatch => Status::Failure,
    };
    let table = curve_table(&result.curve, &["iteration", "success_probability"]);
    let mut payload = serde_json::to_value(&result)?;
    payload["patterns"] = patterns
        .patterns()
        .iter()
        .map(|&p| bit_label(p, patterns.n()))
        .collect();
    Report::new(status, payload, Some(table))
}

fn qga(a: &QgaArgs) -> Result<Report> {
    let instance = parse_file(&a.input, TspInstance::parse)?;
    let params = GaParams {
        mutation_prob: a.mutation,
        crossover_prob: a.crossover,
        interference_prob: a.interference,
        universes: a.universes,
        population: a.population,
        seed: a.common.seed,
        max_generations: a.max_generations,
        selection: match a.selection {
            SelectionChoice::Rank => Selection::Rank,
            SelectionChoice::RankSpace => Selection::RankSpace,
        },
        use_patience: !a.no_patience,
    };
    let run = run_ga(&instance, &params)?;
    let mut table = Table::new(&["generation", "best_length", "mean_length"]);
    for entry in &run.log {
        table.push(vec![entry.generation.into(), entry.best_length.into(), entry.mean_length.into()]);
    }
    let payload = json!({
        "cities": instance.len(),
        "best_tour": run.best_tour.join(","),
        "best_length": run.best_length,
        "best_length_text": format!("{:.6}", run.best_length),
        "best_generation": run.best_generation,
        "generations": run.generations,
        "stop_reason": run.stop_reason,
        "log": run.log,
    });
    Report::new(Status::Ok, payload, Some(table))
}
