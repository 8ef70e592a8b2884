//! Standard small graphs used as fixtures.

use super::Graph;
use crate::error::{Error, Result};

pub const NAMED_GRAPHS: &[&str] = &[
    "cycle",
    "k33",
    "petersen",
    "heawood",
    "pappus",
    "moebius_kantor",
    "mcgee",
    "tutte_coxeter",
];

/// Hamiltonian cycle on `n` vertices plus the chords `i -> i + shifts[i % len]`.
fn lcf(n: usize, shifts: &[i64]) -> Graph {
    let mut edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    for i in 0..n {
        let j = (i as i64 + shifts[i % shifts.len()]).rem_euclid(n as i64) as usize;
        if i < j {
            edges.push((i, j));
        }
    }
    Graph::new(n, edges).expect("LCF notation describes a simple graph")
}

/// Builds a named graph. `size` is required for `cycle` and ignored otherwise.
pub fn named_graph(name: &str, size: Option<usize>) -> Result<Graph> {
    let g = match name {
        "cycle" => {
            let n = size.ok_or_else(|| {
                Error::InvalidParameter("cycle needs a size".into())
            })?;
            if n < 3 {
                return Err(Error::InvalidParameter(format!("cycle needs n >= 3, got {n}")));
            }
            Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))?
        }
        "k33" | "complete_bipartite" => {
            Graph::new(6, (0..3).flat_map(|u| (3..6).map(move |v| (u, v))))?
        }
        "petersen" => {
            let outer = (0..5).map(|i| (i, (i + 1) % 5));
            let spokes = (0..5).map(|i| (i, i + 5));
            let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
            Graph::new(10, outer.chain(spokes).chain(inner))?
        }
        "heawood" => lcf(14, &[5, -5]),
        "pappus" => lcf(18, &[5, 7, -7, 7, -7, -5]),
        "moebius_kantor" => lcf(16, &[5, -5]),
        "mcgee" => lcf(24, &[12, 7, -7]),
        "tutte_coxeter" => lcf(30, &[-13, -9, 7, -7, 9, 13]),
        other => {
            return Err(Error::InvalidInput(format!(
                "unknown graph `{other}`; known: {}",
                NAMED_GRAPHS.join(", ")
            )))
        }
    };
    Ok(g)
}
