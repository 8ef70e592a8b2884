//! Symmetry and normalization properties of the edge expectation.

use std::f64::consts::{FRAC_PI_2, PI};
use std::time::Instant;

use girth_qaoa::engine::{edge_expectation, level_step};
use girth_qaoa::message::unit_message;
use girth_qaoa::ParamSet;
use proptest::prelude::*;

fn angles(p: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-PI..PI, p)
}

fn param_set(max_p: usize) -> impl Strategy<Value = ParamSet> {
    (1..=max_p, 2usize..=5, any::<bool>()).prop_flat_map(|(p, d, with_gp)| {
        (angles(p), angles(p), angles(p)).prop_map(move |(g, b, gp)| {
            if with_gp {
                ParamSet::with_gamma_prime(d, g, gp, b).unwrap()
            } else {
                ParamSet::new(d, g, b).unwrap()
            }
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn normalized(params in param_set(6)) {
        let e = edge_expectation(&params).unwrap();
        prop_assert!((e.norm - 1.0).abs() < 1e-10);
        prop_assert!((-1.0 - 1e-12..=1.0 + 1e-12).contains(&e.zz));
        prop_assert!((-1e-12..=1.0 + 1e-12).contains(&e.c_edge));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn zero_beta_gives_half(params in param_set(4)) {
        let mut params = params;
        params.gamma_prime = None;
        params.beta.iter_mut().for_each(|b| *b = 0.0);
        prop_assert!((edge_expectation(&params).unwrap().c_edge - 0.5).abs() < 1e-12);
    }

    #[test]
    fn layer_periodicity(params in param_set(4), layer in 0usize..4) {
        let base = edge_expectation(&params).unwrap();
        let t = layer % params.p;
        let mut shifted = params.clone();
        shifted.gamma[t] += PI;
        shifted.beta[t] += PI;
        if let Some(gp) = shifted.gamma_prime.as_mut() {
            gp[t] += PI;
        }
        let e = edge_expectation(&shifted).unwrap();
        prop_assert!((e.zz - base.zz).abs() < 1e-12);
        prop_assert!((e.z_single - base.z_single).abs() < 1e-12);
    }

    #[test]
    fn sign_symmetry(params in param_set(4)) {
        let base = edge_expectation(&params).unwrap();
        let mut neg = params.clone();
        neg.gamma.iter_mut().for_each(|x| *x = -*x);
        neg.beta.iter_mut().for_each(|x| *x = -*x);
        if let Some(gp) = neg.gamma_prime.as_mut() {
            gp.iter_mut().for_each(|x| *x = -*x);
        }
        let e = edge_expectation(&neg).unwrap();
        prop_assert!((e.zz - base.zz).abs() < 1e-12);
        prop_assert!((e.z_single - base.z_single).abs() < 1e-12);
    }

    #[test]
    fn linear_term_vanishes_without_vertex_field(params in param_set(5)) {
        let mut params = params;
        if let Some(gp) = params.gamma_prime.as_mut() {
            gp.iter_mut().for_each(|x| *x = 0.0);
        }
        prop_assert!(edge_expectation(&params).unwrap().z_single.abs() < 1e-12);
    }

    #[test]
    fn mixer_half_period_for_cut(params in param_set(4), layer in 0usize..4) {
        // Global X parity commutes with the cost and with Z_i Z_j.
        let mut params = params;
        params.gamma_prime = None;
        let t = layer % params.p;
        let mut shifted = params.clone();
        shifted.beta[t] += FRAC_PI_2;
        let (a, b) = (edge_expectation(&params).unwrap(), edge_expectation(&shifted).unwrap());
        prop_assert!((a.zz - b.zz).abs() < 1e-12);
    }
}

#[test]
fn message_shape_and_cost_do_not_depend_on_degree() {
    let p = 6;
    let time = |d: usize| {
        let params = ParamSet::new(d, vec![0.3; p], vec![0.2; p]).unwrap();
        let start = Instant::now();
        let mut msg = unit_message(p).unwrap();
        for _ in 0..p {
            msg = level_step(&msg, &params).unwrap();
        }
        (msg.len(), start.elapsed().as_secs_f64())
    };
    // Warm up allocations and the thread pool.
    time(3);
    let (len3, t3) = time(3);
    let (len7, t7) = time(7);
    assert_eq!(len3, 4usize.pow(p as u32));
    assert_eq!(len3, len7);
    let ratio = t7.max(1e-4) / t3.max(1e-4);
    assert!((0.2..=5.0).contains(&ratio), "d = 7 took {t7}s against {t3}s for d = 3");
}
