use std::f64::consts::{FRAC_PI_2, PI};

use girth_qaoa::graph::{i2_value, i2_via_cut};
use girth_qaoa::optimize::mis_from_c_edge;
use girth_qaoa::oracle::{expectation, qaoa_state, tree_graph, Observable};
use girth_qaoa::{Engine, Graph, ParamSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use super::{args_map, emit_json};
use crate::config::Settings;
use crate::error::CliError;
use crate::manifest::RunManifest;
use crate::{Suite, VerifyArgs};

const TOLERANCE: f64 = 1e-10;

/// Degree and depth pairs whose edge-neighbourhood trees fit the dense simulator.
const ORACLE_PAIRS: [(usize, usize); 7] = [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (4, 1), (5, 1)];

#[derive(Debug, Serialize)]
struct Failure {
    check: String,
    case: usize,
    detail: String,
}

#[derive(Default)]
struct Tally {
    cases: usize,
    failures: Vec<Failure>,
}

impl Tally {
    fn record(&mut self, check: &str, case: usize, ok: bool, detail: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(Failure {
                check: check.to_string(),
                case,
                detail: detail(),
            });
        }
    }

    fn close(&mut self, check: &str, case: usize, got: f64, want: f64) {
        self.record(check, case, (got - want).abs() <= TOLERANCE, || {
            format!("got {got:.15}, expected {want:.15}")
        });
    }
}

fn random_params(rng: &mut ChaCha8Rng, d: usize, p: usize, with_gamma_prime: bool) -> Result<ParamSet, CliError> {
    let mut draw = || (0..p).map(|_| rng.gen_range(-PI..PI)).collect::<Vec<f64>>();
    let (gamma, beta, gp) = (draw(), draw(), draw());
    Ok(if with_gamma_prime {
        ParamSet::with_gamma_prime(d, gamma, gp, beta)?
    } else {
        ParamSet::new(d, gamma, beta)?
    })
}

fn oracle_suite(args: &VerifyArgs, rng: &mut ChaCha8Rng, tally: &mut Tally, max_qubits: usize) -> Result<(), CliError> {
    let engine = Engine::default();
    let pairs: Vec<_> = ORACLE_PAIRS
        .iter()
        .copied()
        .filter(|&(d, p)| args.d.map_or(true, |x| x == d) && args.p.map_or(true, |x| x == p))
        .collect();
    if pairs.is_empty() {
        return Err(CliError::usage(format!(
            "no oracle configuration matches the filter; available (d, p): {ORACLE_PAIRS:?}"
        )));
    }
    for (d, p) in pairs {
        let tree = tree_graph(d, p, max_qubits)?;
        for case in 0..args.cases as usize {
            let params = random_params(rng, d, p, case % 2 == 0)?;
            let exact = engine.edge_expectation(&params)?;
            let state = qaoa_state(&tree, &params, max_qubits)?;
            let label = format!("oracle d={d} p={p}");
            tally.close(&format!("{label} <ZZ>"), case, exact.zz, expectation(&state, Observable::ZZ(0, 1))?);
            tally.close(&format!("{label} <Z>"), case, exact.z_single, expectation(&state, Observable::Z(0))?);
        }
    }
    Ok(())
}

fn symmetry_suite(args: &VerifyArgs, rng: &mut ChaCha8Rng, tally: &mut Tally) -> Result<(), CliError> {
    let engine = Engine::default();
    for case in 0..args.cases as usize {
        let d = rng.gen_range(2..=5);
        let p = rng.gen_range(1..=3);
        let params = random_params(rng, d, p, false)?;
        let base = engine.edge_expectation(&params)?;

        tally.close("linear term vanishes without single-qubit phases", case, base.z_single, 0.0);

        let t = rng.gen_range(0..p);
        let mut shifted = params.clone();
        shifted.gamma[t] += PI;
        tally.close("gamma period pi", case, engine.c_edge(&shifted)?, base.c_edge);

        let mut shifted = params.clone();
        shifted.beta[t] += FRAC_PI_2;
        tally.close("beta period pi/2 for the cut", case, engine.c_edge(&shifted)?, base.c_edge);

        let negated = ParamSet::new(
            d,
            params.gamma.iter().map(|g| -g).collect(),
            params.beta.iter().map(|b| -b).collect(),
        )?;
        tally.close("global sign flip", case, engine.c_edge(&negated)?, base.c_edge);

        let mut flat = random_params(rng, d, p, true)?;
        flat.beta.iter_mut().for_each(|b| *b = 0.0);
        tally.close("zero mixer leaves <ZZ> at 0", case, engine.edge_expectation(&flat)?.zz, 0.0);
    }
    Ok(())
}

fn identity_suite(args: &VerifyArgs, rng: &mut ChaCha8Rng, tally: &mut Tally) -> Result<(), CliError> {
    let engine = Engine::default();
    for case in 0..200 {
        let d = rng.gen_range(2..=5);
        let p = rng.gen_range(1..=3);
        let params = random_params(rng, d, p, case % 2 == 0)?;
        tally.close("normalization", case, engine.edge_expectation(&params)?.norm, 1.0);
    }
    for case in 0..args.cases as usize {
        let n = 2 * rng.gen_range(2..=10);
        let g = Graph::random_regular(n, 3, rng)?;
        let bits: Vec<bool> = (0..n).map(|_| rng.gen()).collect();
        let (direct, via_cut) = (i2_value(&g, &bits)?, i2_via_cut(&g, &bits)?);
        tally.record("two-set count equals |V| - |E| + cut", case, direct == via_cut, || {
            format!("{direct} vs {via_cut} on {n} vertices")
        });

        let d = rng.gen_range(2..=5);
        let p = rng.gen_range(1..=3);
        let params = random_params(rng, d, p, false)?;
        let mis = engine.mis_edge_objective(&params)?;
        let affine = mis_from_c_edge(d, engine.c_edge(&params)?);
        tally.close("independence objective is affine in the cut at zero phase", case, mis, affine);
    }
    Ok(())
}

pub fn run(args: &VerifyArgs, settings: &Settings) -> Result<(), CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(settings.seed);
    let mut tally = Tally::default();
    let suite = match args.suite {
        Suite::Oracle => {
            oracle_suite(args, &mut rng, &mut tally, settings.max_qubits)?;
            "oracle"
        }
        Suite::Symmetry => {
            symmetry_suite(args, &mut rng, &mut tally)?;
            "symmetry"
        }
        Suite::Identity => {
            identity_suite(args, &mut rng, &mut tally)?;
            "identity"
        }
    };
    let passed = tally.failures.is_empty();

    let mut arguments = vec![("suite", suite.to_string()), ("cases", args.cases.to_string())];
    if let Some(d) = args.d {
        arguments.push(("d", d.to_string()));
    }
    if let Some(p) = args.p {
        arguments.push(("p", p.to_string()));
    }
    let mut manifest = RunManifest::start(
        "verify",
        settings.to_map(),
        args_map(&arguments),
        settings.seed,
        args.out.iter().cloned().collect(),
    );
    manifest.finish();
    let report = json!({
        "suite": suite,
        "seed": settings.seed,
        "passed": passed,
        "cases": tally.cases,
        "failures": tally.failures,
    });
    emit_json(args.out.as_deref(), report, &manifest)?;
    eprintln!(
        "{suite}: {} of {} checks passed",
        tally.cases - tally.failures.len(),
        tally.cases
    );
    if passed {
        Ok(())
    } else {
        Err(CliError::failed(format!("{} {suite} checks failed", tally.failures.len())))
    }
}
