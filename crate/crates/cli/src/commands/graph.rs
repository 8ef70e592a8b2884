use girth_qaoa::graph::{
    brute_force_maxcut_assignment, edge_coloring, girth, is_proper_edge_coloring, max_certified_depth,
};
use girth_qaoa::{CertifiedDepth, Girth};
use serde_json::{json, Value};

use super::{args_map, emit_json, load_graph};
use crate::config::Settings;
use crate::error::CliError;
use crate::manifest::RunManifest;
use crate::{GraphAction, GraphArgs};

pub fn run(args: &GraphArgs, settings: &Settings) -> Result<(), CliError> {
    let (g, source) = load_graph(&args.source, args.size)?;
    let (action, result): (&str, Value) = match args.action {
        GraphAction::Girth => {
            let value = match girth(&g) {
                Girth::Finite(len) => json!(len),
                Girth::Infinite => json!(null),
            };
            ("girth", json!({ "girth": value, "acyclic": value.is_null() }))
        }
        GraphAction::Color => {
            let colors = edge_coloring(&g);
            let count = colors.iter().max().map_or(0, |c| c + 1);
            let proper = is_proper_edge_coloring(&g, &colors);
            (
                "color",
                json!({
                    "color_count": count,
                    "max_degree": g.max_degree(),
                    "proper": proper,
                    "colors": colors,
                }),
            )
        }
        GraphAction::Maxdepth => {
            let depth = max_certified_depth(&g)?;
            let value = match depth {
                CertifiedDepth::Bounded(p) => json!(p),
                CertifiedDepth::Unbounded => json!(null),
            };
            (
                "maxdepth",
                json!({
                    "degree": g.regular_degree(),
                    "max_certified_depth": value,
                    "unbounded": matches!(depth, CertifiedDepth::Unbounded),
                }),
            )
        }
        GraphAction::Brute => {
            let (cut, bits) = brute_force_maxcut_assignment(&g, settings.brute_force_cap)?;
            let side: Vec<u8> = bits.iter().map(|&b| u8::from(b)).collect();
            let fraction = if g.edge_count() == 0 { 0.0 } else { cut as f64 / g.edge_count() as f64 };
            (
                "brute",
                json!({ "max_cut": cut, "cut_fraction": fraction, "assignment": side }),
            )
        }
    };

    let mut manifest = RunManifest::start(
        "graph",
        settings.to_map(),
        args_map(&[("source", source.clone()), ("action", action.to_string())]),
        settings.seed,
        args.out.iter().cloned().collect(),
    );
    manifest.finish();
    let report = json!({
        "source": source,
        "vertices": g.vertex_count(),
        "edges": g.edge_count(),
        "action": action,
        "result": result,
    });
    emit_json(args.out.as_deref(), report, &manifest)
}
