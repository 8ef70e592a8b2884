use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use girth_qaoa::optimize::{optimize_tables, Mode};
use girth_qaoa::truncate4;
use serde_json::json;

use super::{args_map, emit_csv, emit_json, outputs};
use crate::config::Settings;
use crate::error::CliError;
use crate::manifest::RunManifest;
use crate::TableArgs;

/// Horizontal reference lines for the plot data. These are literature
/// constants, not computed here.
pub const REFERENCE_LINES: [(&str, f64); 4] = [
    ("large-girth limit of the explicit classical MaxCut bound", 0.8918),
    ("best known lower bound on the large-girth max-cut fraction", 0.912),
    ("upper bound on the cut fraction of large random cubic graphs", 0.9351),
    ("best known independence ratio bound for large-girth cubic graphs", 0.4453),
];

pub fn run(args: &TableArgs, settings: &Settings) -> Result<(), CliError> {
    let p_max = args.p_max as usize;
    let mut modes: Vec<Mode> = Vec::new();
    for m in &args.modes {
        let m = Mode::from(*m);
        if !modes.contains(&m) {
            modes.push(m);
        }
    }
    if modes.is_empty() {
        return Err(CliError::usage("at least one mode is required"));
    }
    let opts = settings.table_options();
    opts.engine.budget().check(p_max)?;

    // Maxcut rows always run: the two-parameter rows are derived from them
    // and the three-parameter rows start from them.
    let mut run_modes = modes.clone();
    if !run_modes.contains(&Mode::Maxcut) {
        run_modes.push(Mode::Maxcut);
    }
    let mut seconds: BTreeMap<(Mode, usize), f64> = BTreeMap::new();
    let mut last = Instant::now();
    let tables = optimize_tables(p_max, settings.d, &run_modes, &opts, |r| {
        let now = Instant::now();
        let elapsed = match r.mode {
            Mode::MisTwoParam => seconds.get(&(Mode::Maxcut, r.params.p)).copied().unwrap_or(0.0),
            _ => now.duration_since(last).as_secs_f64(),
        };
        last = now;
        seconds.insert((r.mode, r.params.p), elapsed);
        eprintln!("  {} p={} value={:.6} ({elapsed:.2} s)", r.mode, r.params.p, r.value);
    })?;

    let mut manifest = RunManifest::start(
        "table",
        settings.to_map(),
        args_map(&[
            ("p_max", p_max.to_string()),
            ("modes", modes.iter().map(|m| m.as_str()).collect::<Vec<_>>().join(",")),
        ]),
        settings.seed,
        outputs(&[&args.out, &args.plot_out, &args.json_out]),
    );
    manifest.finish();

    let mut csv = String::from("p,mode,value,truncated_bound,seconds,evaluations\n");
    let mut plot = String::from("series,label,p,inv_p,value\n");
    for mode in &modes {
        for r in &tables[mode] {
            let p = r.params.p;
            let secs = seconds.get(&(*mode, p)).copied().unwrap_or(0.0);
            let _ = writeln!(
                csv,
                "{p},{mode},{},{:.4},{secs:.3},{}",
                r.value,
                truncate4(r.value),
                r.evaluations
            );
            let _ = writeln!(plot, "{mode},,{p},{},{}", 1.0 / p as f64, r.value);
        }
    }
    for (label, value) in REFERENCE_LINES {
        let _ = writeln!(plot, "reference,{label},,,{value}");
    }

    emit_csv(args.out.as_deref(), &csv, &manifest)?;
    if let Some(path) = &args.plot_out {
        emit_csv(Some(path), &plot, &manifest)?;
    }
    if let Some(path) = &args.json_out {
        let results: Vec<_> = modes.iter().flat_map(|m| tables[m].iter()).collect();
        emit_json(Some(path), json!({ "results": results }), &manifest)?;
    }
    Ok(())
}
