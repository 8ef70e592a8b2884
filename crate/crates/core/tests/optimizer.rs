use girth_qaoa::engine::mis_value_from;
use girth_qaoa::optimize::{evaluate, gradient, objective, optimize_depth, optimize_tables, Mode};
use girth_qaoa::{BoundCertificate, Engine, OptimizerConfig, RestartSchedule, TableOptions};

fn opts() -> TableOptions {
    TableOptions {
        schedule: RestartSchedule {
            shallow_restarts: 4,
            deep_restarts: 0,
            deep_from: 3,
        },
        ..TableOptions::default()
    }
}

#[test]
fn depth_one_optimum_is_stationary() {
    let engine = Engine::default();
    let r = optimize_depth(&engine, Mode::Maxcut, 3, 1, &[], 6, &OptimizerConfig::default()).unwrap();
    let f = objective(engine, Mode::Maxcut, 3);
    let x = [r.params.gamma[0], r.params.beta[0]];
    let g = gradient(&f, &x, 1e-6).unwrap();
    assert!(g.iter().map(|v| v * v).sum::<f64>().sqrt() < 1e-5);
    assert!((r.value - 0.6924).abs() < 1e-4);
}

#[test]
fn shallow_tables_are_consistent() {
    let tables = optimize_tables(4, 3, &Mode::ALL, &opts(), |_| {}).unwrap();
    let cut = &tables[&Mode::Maxcut];
    let two = &tables[&Mode::MisTwoParam];
    let three = &tables[&Mode::MisThreeParam];
    for p in 0..4 {
        assert!((two[p].value - (0.75 * cut[p].value - 0.25)).abs() < 1e-12);
        assert!(three[p].value >= two[p].value - 1e-9, "p = {}", p + 1);
        assert!(cut[p].value < 0.9351);
        if p > 0 {
            assert!(cut[p].value >= cut[p - 1].value - 1e-6);
        }
        for row in [&cut[p], &two[p], &three[p]] {
            let fresh = evaluate(&Engine::default(), row.mode, &row.params).unwrap();
            assert!((fresh - row.value).abs() <= 1e-12);
        }
        // The three-parameter objective with zero vertex field is the affine
        // map of the cut objective.
        let e = Engine::default().edge_expectation(&two[p].params).unwrap();
        assert!((mis_value_from(3, e.zz, e.z_single) - two[p].value).abs() < 1e-12);
    }
    let cert = BoundCertificate::from_results(&cut[1], Some(&three[1])).unwrap();
    cert.validate().unwrap();
    assert_eq!(cert.c_edge_bound, 0.7559);
    assert_eq!(cert.ir_two_param_bound, 0.3169);
}

#[test]
fn identical_seeds_give_identical_results() {
    let run = || optimize_tables(2, 3, &[Mode::MisThreeParam], &opts(), |_| {}).unwrap();
    assert_eq!(run(), run());
}
