use proptest::prelude::*;
use qai_core::qalgos::{inversion_about_average, qft};
use qai_core::qiga::{crossover, mutate, Tour};
use qai_core::{Circuit, Complex64, GateSpec, RandomSource, StandardGate, StateVector};

fn gate_strategy(n: usize) -> impl Strategy<Value = GateSpec> {
    (0..StandardGate::ALL.len(), 0..n, 0..n).prop_filter_map("distinct qubits", move |(g, a, b)| {
        let gate = StandardGate::ALL[g];
        match gate.arity() {
            1 => GateSpec::standard(gate, &[a]).ok(),
            _ if a != b => GateSpec::standard(gate, &[a, b]).ok(),
            _ => None,
        }
    })
}

fn circuit_strategy() -> impl Strategy<Value = Circuit> {
    (2usize..=6).prop_flat_map(|n| {
        prop::collection::vec(gate_strategy(n), 0..30).prop_map(move |gates| {
            let mut c = Circuit::new(n);
            for g in gates {
                c.push(g).unwrap();
            }
            c
        })
    })
}

fn state_strategy(n: usize) -> impl Strategy<Value = StateVector> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1 << n)
        .prop_filter_map("nonzero", move |v| {
            let amps = v.into_iter().map(|(re, im)| Complex64::new(re, im)).collect();
            StateVector::normalized(n, amps).ok()
        })
}

fn tour_strategy(n: usize) -> impl Strategy<Value = Tour> {
    Just((0..n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Tour::new(v).unwrap())
}

proptest! {
    #[test]
    fn circuits_preserve_norm_and_reverse(c in circuit_strategy(), seed in any::<u64>()) {
        let n = c.num_qubits();
        let start = StateVector::basis(n, (seed as usize) % (1 << n)).unwrap();
        let out = c.apply(&start).unwrap();
        prop_assert!((out.norm_sqr() - 1.0).abs() < 1e-10);
        let back = c.adjoint().apply(&out).unwrap();
        prop_assert!(back.max_distance(&start) < 1e-9);
    }

    #[test]
    fn inversion_is_a_norm_preserving_involution(s in state_strategy(4)) {
        let once = inversion_about_average(&s);
        prop_assert!((once.norm_sqr() - 1.0).abs() < 1e-10);
        prop_assert!(inversion_about_average(&once).max_distance(&s) < 1e-9);
    }

    #[test]
    fn qft_preserves_norm(s in state_strategy(5)) {
        prop_assert!((qft(&s).unwrap().norm_sqr() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn ga_operators_keep_permutations(
        a in tour_strategy(9),
        b in tour_strategy(9),
        seed in any::<u64>(),
    ) {
        let mut rng = RandomSource::new(seed);
        prop_assert!(mutate(&a, &mut rng).is_valid(9));
        prop_assert!(crossover(&a, &b).is_valid(9));
        prop_assert!(crossover(&b, &a).is_valid(9));
    }
}
