use girth_qaoa::optimize::{optimize_tables, Mode};
use girth_qaoa::BoundCertificate;
use serde_json::{json, Value};

use super::{args_map, emit_json, outputs};
use crate::config::Settings;
use crate::error::CliError;
use crate::manifest::RunManifest;
use crate::BoundArgs;

pub fn run(args: &BoundArgs, settings: &Settings) -> Result<(), CliError> {
    let p = args.p as usize;
    let mode: Mode = args.mode.into();
    let opts = settings.table_options();
    opts.engine.budget().check(p)?;

    let modes = match mode {
        Mode::Maxcut => vec![Mode::Maxcut],
        other => vec![Mode::Maxcut, other],
    };
    let tables = optimize_tables(p, settings.d, &modes, &opts, |r| {
        eprintln!("  {} p={} value={:.6}", r.mode, r.params.p, r.value);
    })?;
    let last = |m: Mode| tables.get(&m).and_then(|rows| rows.last());
    let maxcut = last(Mode::Maxcut).expect("maxcut rows are always computed");
    let cert = BoundCertificate::from_results(maxcut, last(Mode::MisThreeParam))?;
    cert.validate()?;
    let chosen = last(mode).expect("requested mode was optimized");

    let (quantity, bound) = match mode {
        Mode::Maxcut => ("cut fraction", cert.c_edge_bound),
        Mode::MisTwoParam => ("independence ratio", cert.ir_two_param_bound),
        Mode::MisThreeParam => (
            "independence ratio",
            cert.ir_three_param_bound.expect("three-parameter bound present"),
        ),
    };
    let statement = format!(
        "every {}-regular graph of girth >= {} has {quantity} >= {bound:.4}",
        cert.d, cert.girth_requirement
    );

    let mut manifest = RunManifest::start(
        "bound",
        settings.to_map(),
        args_map(&[("p", p.to_string()), ("mode", mode.to_string())]),
        settings.seed,
        outputs(&[&args.out, &args.params_out]),
    );
    manifest.finish();

    let mut doc = serde_json::to_value(&cert)?;
    if let Value::Object(map) = &mut doc {
        map.insert("mode".into(), json!(mode));
        map.insert("bound".into(), json!(bound));
        map.insert("statement".into(), json!(statement));
        map.insert("optimization".into(), serde_json::to_value(chosen)?);
    }
    emit_json(args.out.as_deref(), doc, &manifest)?;
    if let Some(path) = &args.params_out {
        emit_json(Some(path), serde_json::to_value(chosen.to_document())?, &manifest)?;
    }
    if args.out.is_some() {
        println!("{statement}");
    } else {
        eprintln!("{statement}");
    }
    Ok(())
}
