//! Simple undirected graphs and the classical graph-side procedures.

mod brute;
mod coloring;
mod cost;
mod girth;
mod named;

use std::collections::HashSet;
use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};

pub use brute::{brute_force_maxcut, brute_force_maxcut_assignment, DEFAULT_BRUTE_FORCE_CAP};
pub use coloring::{edge_coloring, is_proper_edge_coloring};
pub use cost::{
    complement, cut_value, i1_value, i2_value, i2_via_cut, is_independent, repair_independent,
    repair_independent_with, two_independent_sets, RepairRule,
};
pub use girth::{girth, max_certified_depth, CertifiedDepth, Girth};
pub use named::{named_graph, NAMED_GRAPHS};

/// Undirected graph without self-loops or parallel edges. Vertices are `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph, rejecting self-loops, duplicate edges and out-of-range endpoints.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut seen = HashSet::new();
        let mut list = Vec::new();
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidInput(format!(
                    "edge ({u}, {v}) has an endpoint outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::InvalidInput(format!("self-loop at vertex {u}")));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::InvalidInput(format!("duplicate edge ({u}, {v})")));
            }
            list.push((u, v));
            adj[u].push(v);
            adj[v].push(u);
        }
        Ok(Graph { n, edges: list, adj })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// `Some(d)` when every vertex has degree `d`.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.adj.first().map_or(0, Vec::len);
        self.adj.iter().all(|a| a.len() == d).then_some(d)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].contains(&v)
    }

    /// Sorted degree sequence, largest first.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.adj.iter().map(Vec::len).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    /// Serializes to the edge-list format read by [`parse_graph`].
    pub fn to_edge_list(&self) -> String {
        let mut s = format!("n {}\n", self.n);
        for (u, v) in &self.edges {
            let _ = writeln!(s, "{u} {v}");
        }
        s
    }

    /// Uniformly random `d`-regular simple graph by the configuration model
    /// with restarts.
    pub fn random_regular<R: Rng>(n: usize, d: usize, rng: &mut R) -> Result<Self> {
        if n * d % 2 != 0 || d >= n {
            return Err(Error::InvalidParameter(format!(
                "no simple {d}-regular graph on {n} vertices"
            )));
        }
        'attempt: for _ in 0..10_000 {
            let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
            stubs.shuffle(rng);
            let mut seen = HashSet::new();
            let mut edges = Vec::with_capacity(stubs.len() / 2);
            for pair in stubs.chunks(2) {
                let (u, v) = (pair[0], pair[1]);
                if u == v || !seen.insert((u.min(v), u.max(v))) {
                    continue 'attempt;
                }
                edges.push((u, v));
            }
            return Graph::new(n, edges);
        }
        Err(Error::Numeric(format!(
            "failed to sample a simple {d}-regular graph on {n} vertices"
        )))
    }
}

/// Parses the edge-list format: one `u v` pair per line, optional `n <count>`
/// header, `#` comments and blank lines ignored. Without a header the vertex
/// count is one more than the largest id.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut declared: Option<usize> = None;
    let mut edges = Vec::new();
    let mut seen = HashSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: String| Error::Parse {
            line: line_no,
            message,
        };
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields[0] == "n" {
            if fields.len() != 2 || declared.is_some() || !edges.is_empty() {
                return Err(err("vertex-count header must be a single leading `n <count>` line".into()));
            }
            declared = Some(
                fields[1]
                    .parse()
                    .map_err(|_| err(format!("bad vertex count `{}`", fields[1])))?,
            );
            continue;
        }
        if fields.len() != 2 {
            return Err(err(format!("expected `u v`, found `{line}`")));
        }
        let parse = |s: &str| -> Result<usize> {
            s.parse()
                .map_err(|_| err(format!("`{s}` is not a nonnegative integer")))
        };
        let (u, v) = (parse(fields[0])?, parse(fields[1])?);
        if u == v {
            return Err(err(format!("self-loop at vertex {u}")));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(err(format!("duplicate edge ({u}, {v})")));
        }
        if let Some(n) = declared {
            if u >= n || v >= n {
                return Err(err(format!("vertex id out of range for n = {n}")));
            }
        }
        edges.push((u, v));
    }
    let n = declared.unwrap_or_else(|| {
        edges
            .iter()
            .map(|&(u, v)| u.max(v) + 1)
            .max()
            .unwrap_or(0)
    });
    Graph::new(n, edges)
}
