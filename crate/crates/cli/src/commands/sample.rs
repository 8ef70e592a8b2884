use std::fs;
use std::path::Path;

use girth_qaoa::graph::max_certified_depth;
use girth_qaoa::oracle::SamplingExperiment;
use girth_qaoa::optimize::{optimize_table, Mode};
use girth_qaoa::{BoundCertificate, CertifiedDepth, ParamSet, ParamsDocument, SampleReport};
use serde_json::{json, Value};

use super::{args_map, emit_json, load_graph};
use crate::config::Settings;
use crate::error::CliError;
use crate::manifest::RunManifest;
use crate::SampleArgs;

/// Reads angles from a parameter document or from a bound certificate.
fn read_params(path: &Path) -> Result<ParamSet, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
    let value: Value = serde_json::from_str(&text)?;
    if value.get("girth_requirement").is_some() {
        let cert: BoundCertificate = serde_json::from_value(value)?;
        Ok(cert.params)
    } else {
        let doc: ParamsDocument = serde_json::from_value(value)?;
        Ok(doc.to_params()?)
    }
}

pub fn run(args: &SampleArgs, settings: &Settings) -> Result<(), CliError> {
    let (g, source) = load_graph(&args.source, args.size)?;
    let p = args.p as usize;

    let (params, params_source) = match &args.angles.params {
        Some(path) => {
            let params = read_params(path)?;
            if params.p != p {
                return Err(CliError::usage(format!(
                    "{} holds depth-{} angles but --p is {p}",
                    path.display(),
                    params.p
                )));
            }
            (params, format!("file:{}", path.display()))
        }
        None => {
            let d = g.regular_degree().ok_or_else(|| {
                CliError::usage("--auto needs a regular graph to pick the degree of the optimized angles")
            })?;
            let opts = settings.table_options();
            opts.engine.budget().check(p)?;
            eprintln!("optimizing depth-{p} MaxCut angles for degree {d}");
            let rows = optimize_table(p, d, Mode::Maxcut, &opts)?;
            let best = rows.last().expect("one row per depth");
            (best.params.clone(), "auto".to_string())
        }
    };

    let certified = match g.regular_degree() {
        Some(_) => Some(max_certified_depth(&g)?),
        None => None,
    };
    if let Some(CertifiedDepth::Bounded(max)) = certified {
        if p > max {
            eprintln!(
                "warning: depth {p} exceeds the certified depth {max} of this graph; \
                 the tree-based guarantee does not apply"
            );
        }
    }

    let experiment = SamplingExperiment::new(&g, &params, settings.max_qubits)?;
    let repetitions = args.repetitions as usize;
    // Experiment k uses seed + k, so experiment 0 reproduces a single run.
    let reports = (0..args.experiments)
        .map(|k| experiment.run(repetitions, settings.seed.wrapping_add(k)))
        .collect::<Result<Vec<SampleReport>, _>>()?;
    let successes = reports.iter().filter(|r| r.success).count();

    let mut manifest = RunManifest::start(
        "sample",
        settings.to_map(),
        args_map(&[
            ("source", source.clone()),
            ("p", p.to_string()),
            ("params", params_source.clone()),
            ("repetitions", repetitions.to_string()),
            ("experiments", args.experiments.to_string()),
        ]),
        settings.seed,
        args.out.iter().cloned().collect(),
    );
    manifest.finish();

    let certified_value = match certified {
        Some(CertifiedDepth::Bounded(max)) => json!(max),
        _ => Value::Null,
    };
    let report = json!({
        "source": source,
        "vertices": g.vertex_count(),
        "edges": g.edge_count(),
        "p": p,
        "params_source": params_source,
        "params": params,
        "max_certified_depth": certified_value,
        "expected_cut": experiment.expected_cut(),
        "threshold": experiment.threshold(),
        "success_count": successes,
        "success_fraction": successes as f64 / reports.len() as f64,
        "reports": reports,
    });
    emit_json(args.out.as_deref(), report, &manifest)?;
    eprintln!(
        "expected cut {:.4}, threshold {}, {successes}/{} experiments reached it",
        experiment.expected_cut(),
        experiment.threshold(),
        args.experiments
    );
    Ok(())
}
