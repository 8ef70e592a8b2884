pub mod bound;
pub mod graph;
pub mod sample;
pub mod table;
pub mod verify;

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use girth_qaoa::graph::named_graph;
use girth_qaoa::{parse_graph, Graph};
use serde_json::Value;

use crate::error::CliError;
use crate::manifest::RunManifest;
use crate::GraphSource;

/// Writes `value` (with the manifest attached) to `path` plus a manifest
/// sidecar, or to stdout when no path is given.
pub fn emit_json(path: Option<&Path>, value: Value, manifest: &RunManifest) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(&manifest.attach(value))? + "\n";
    match path {
        Some(p) => {
            fs::write(p, text)?;
            manifest.write_sidecar(p)?;
        }
        None => print!("{text}"),
    }
    Ok(())
}

/// Writes CSV text prefixed with the manifest comment line.
pub fn emit_csv(path: Option<&Path>, body: &str, manifest: &RunManifest) -> Result<(), CliError> {
    let text = manifest.csv_comment() + body;
    match path {
        Some(p) => {
            fs::write(p, text)?;
            manifest.write_sidecar(p)?;
        }
        None => print!("{text}"),
    }
    Ok(())
}

pub fn outputs(paths: &[&Option<PathBuf>]) -> Vec<PathBuf> {
    paths.iter().filter_map(|p| (*p).clone()).collect()
}

/// Loads a graph and describes its source for the manifest.
pub fn load_graph(source: &GraphSource, size: Option<usize>) -> Result<(Graph, String), CliError> {
    match (&source.file, &source.named) {
        (Some(path), _) => {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
            let g = parse_graph(&text).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
            Ok((g, format!("file:{}", path.display())))
        }
        (None, Some(name)) => {
            let g = named_graph(name, size)?;
            let label = match size {
                Some(n) => format!("named:{name}({n})"),
                None => format!("named:{name}"),
            };
            Ok((g, label))
        }
        (None, None) => Err(CliError::usage("a graph source (--file or --named) is required")),
    }
}

pub fn args_map(pairs: &[(&str, String)]) -> BTreeMap<String, String> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}
