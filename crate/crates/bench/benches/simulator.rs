use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use qai_bench::{random_circuit, random_state};
use qai_core::hogg::MixingOperator;
use qai_core::qalgos::{grover_states, qft, Oracle};
use qai_core::qcore::{apply_gate, GateSpec, StandardGate};

fn gates(c: &mut Criterion) {
    let mut group = c.benchmark_group("apply_gate");
    for n in [10, 16, 20] {
        let state = random_state(n, 1);
        let h = GateSpec::standard(StandardGate::H, &[n / 2]).unwrap();
        let cnot = GateSpec::standard(StandardGate::Cnot, &[0, n - 1]).unwrap();
        group.bench_with_input(BenchmarkId::new("h", n), &state, |b, s| {
            b.iter(|| apply_gate(black_box(s), &h).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("cnot", n), &state, |b, s| {
            b.iter(|| apply_gate(black_box(s), &cnot).unwrap())
        });
    }
    group.finish();
}

fn circuits(c: &mut Criterion) {
    let circuit = random_circuit(12, 50, 3);
    let state = random_state(12, 4);
    c.bench_function("random_circuit/12x50", |b| {
        b.iter(|| circuit.apply(black_box(&state)).unwrap())
    });
}

fn fourier(c: &mut Criterion) {
    let mut group = c.benchmark_group("qft");
    for n in [8, 12, 16] {
        let state = random_state(n, 5);
        group.bench_with_input(BenchmarkId::from_parameter(n), &state, |b, s| {
            b.iter(|| qft(black_box(s)).unwrap())
        });
    }
    group.finish();
}

fn grover(c: &mut Criterion) {
    let mut group = c.benchmark_group("grover");
    for n in [8, 12] {
        let oracle = Oracle::from_marked(n, &[3]).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &oracle, |b, o| {
            b.iter(|| grover_states(black_box(o), 10).unwrap())
        });
    }
    group.finish();
}

fn mixing(c: &mut Criterion) {
    let mut group = c.benchmark_group("mixing");
    for (n, level) in [(6, 2), (8, 2), (10, 3)] {
        group.bench_function(BenchmarkId::new("build", n), |b| {
            b.iter(|| MixingOperator::for_level(black_box(n), level).unwrap())
        });
        let op = MixingOperator::for_level(n, level).unwrap();
        let state = random_state(n, 6);
        group.bench_function(BenchmarkId::new("apply", n), |b| {
            b.iter(|| op.apply(black_box(state.amplitudes())).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, gates, circuits, fourier, grover, mixing);
criterion_main!(benches);
