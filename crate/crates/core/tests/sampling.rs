//! Statevector sampling and the repeated-measurement cut experiment.

use girth_qaoa::graph::{cut_value, named_graph};
use girth_qaoa::optimize::{optimize_depth, Mode};
use girth_qaoa::oracle::{
    bits_of, expectation, qaoa_state, sample, Observable, SamplingExperiment, Statevector, DEFAULT_MAX_QUBITS,
};
use girth_qaoa::{Engine, OptimizerConfig, ParamSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn heawood_p2_params() -> ParamSet {
    let cfg = OptimizerConfig::default();
    optimize_depth(&Engine::default(), Mode::Maxcut, 3, 2, &[], 4, &cfg).unwrap().params
}

#[test]
fn uniform_three_qubit_frequencies() {
    let state = Statevector::uniform(3);
    let n = 80_000;
    let mut counts = [0usize; 8];
    for bits in sample(&state, 17, n).unwrap() {
        let idx = bits.iter().enumerate().map(|(i, &b)| (b as usize) << i).sum::<usize>();
        counts[idx] += 1;
    }
    let expect = n as f64 / 8.0;
    let sigma = (n as f64 * (1.0 / 8.0) * (7.0 / 8.0)).sqrt();
    let mut chi2 = 0.0;
    for &c in &counts {
        assert!((c as f64 - expect).abs() < 5.0 * sigma, "{counts:?}");
        chi2 += (c as f64 - expect).powi(2) / expect;
    }
    // 7 degrees of freedom; 24.3 is the 0.999 quantile.
    assert!(chi2 < 24.3, "chi-square {chi2}");
}

#[test]
fn basis_state_and_reproducibility() {
    let state = Statevector::basis(4, 0b1010).unwrap();
    let draws = sample(&state, 1, 50).unwrap();
    assert!(draws.iter().all(|b| *b == bits_of(0b1010, 4)));
    let uniform = Statevector::uniform(5);
    assert_eq!(sample(&uniform, 9, 100).unwrap(), sample(&uniform, 9, 100).unwrap());
    assert!(sample(&uniform, 9, 0).is_err());
}

#[test]
fn random_states_are_normalized() {
    let g = named_graph("petersen", None).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..50 {
        let p = rng.gen_range(1..=3);
        let mut draw = || (0..p).map(|_| rng.gen_range(-3.0..3.0)).collect::<Vec<f64>>();
        let params = ParamSet::with_gamma_prime(3, draw(), draw(), draw()).unwrap();
        let state = qaoa_state(&g, &params, DEFAULT_MAX_QUBITS).unwrap();
        assert!((state.norm() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn zero_angles_and_global_flip() {
    let g = named_graph("cycle", Some(6)).unwrap();
    let uniform = qaoa_state(&g, &ParamSet::zeros(2, 2, false).unwrap(), DEFAULT_MAX_QUBITS).unwrap();
    assert!((expectation(&uniform, Observable::Cut(&g)).unwrap() - 3.0).abs() < 1e-12);
    let exp = SamplingExperiment::new(&g, &ParamSet::zeros(1, 2, false).unwrap(), DEFAULT_MAX_QUBITS).unwrap();
    assert_eq!(exp.run(200, 3).unwrap().best_cut, 6);

    let params = ParamSet::new(2, vec![0.4, -0.9], vec![0.7, 0.2]).unwrap();
    let state = qaoa_state(&g, &params, DEFAULT_MAX_QUBITS).unwrap();
    let probs = state.probabilities();
    let full = (1usize << 6) - 1;
    for x in 0..probs.len() {
        assert!((probs[x] - probs[x ^ full]).abs() < 1e-12);
    }
    for v in 0..6 {
        assert!(expectation(&state, Observable::Z(v)).unwrap().abs() < 1e-12);
    }
}

#[test]
fn heawood_edges_are_uniform_and_sampled_mean_matches() {
    let g = named_graph("heawood", None).unwrap();
    let params = heawood_p2_params();
    let per_edge = Engine::default().edge_expectation(&params).unwrap();
    let state = qaoa_state(&g, &params, DEFAULT_MAX_QUBITS).unwrap();
    for &(a, b) in g.edges() {
        let zz = expectation(&state, Observable::ZZ(a, b)).unwrap();
        assert!((zz - per_edge.zz).abs() < 1e-10);
    }
    let cut = expectation(&state, Observable::Cut(&g)).unwrap();
    assert!((cut - 21.0 * per_edge.c_edge).abs() < 1e-9);
    assert!((cut / 21.0 - 0.7559).abs() < 1e-4);

    let n = 20_000;
    let cuts: Vec<f64> = sample(&state, 99, n)
        .unwrap()
        .iter()
        .map(|b| cut_value(&g, b).unwrap() as f64)
        .collect();
    let mean = cuts.iter().sum::<f64>() / n as f64;
    let var = cuts.iter().map(|c| (c - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    assert!((mean - cut).abs() < 3.0 * (var / n as f64).sqrt(), "mean {mean} vs {cut}");
}

#[test]
fn repeated_measurement_reaches_threshold() {
    let g = named_graph("heawood", None).unwrap();
    let exp = SamplingExperiment::new(&g, &heawood_p2_params(), DEFAULT_MAX_QUBITS).unwrap();
    assert_eq!(exp.threshold(), 15);
    let trials = 300;
    let wins = (0..trials).filter(|&s| exp.run(21, s).unwrap().success).count();
    let sigma = (trials as f64 * (2.0 / 3.0) * (1.0 / 3.0)).sqrt();
    assert!(wins as f64 >= trials as f64 * 2.0 / 3.0 - 3.0 * sigma, "{wins}/{trials}");
    let report = exp.run(21, 0).unwrap();
    assert!(report.girth_condition_met && report.warning.is_none());
    assert_eq!(report.best_cut, *report.cut_values.iter().max().unwrap());
}

#[test]
fn low_girth_graph_gets_a_warning() {
    let g = named_graph("petersen", None).unwrap();
    let params = ParamSet::new(3, vec![0.2, 0.4], vec![0.5, 0.3]).unwrap();
    let report = SamplingExperiment::new(&g, &params, DEFAULT_MAX_QUBITS).unwrap().run(3, 1).unwrap();
    assert!(!report.girth_condition_met);
    assert!(report.warning.is_some());
}
