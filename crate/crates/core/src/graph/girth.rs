use std::collections::VecDeque;
use std::fmt;

use super::Graph;
use crate::error::{Error, Result};

/// Length of the shortest cycle, or `Infinite` for forests.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Girth {
    Finite(usize),
    Infinite,
}

impl fmt::Display for Girth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Girth::Finite(g) => write!(f, "{g}"),
            Girth::Infinite => f.write_str("infinite"),
        }
    }
}

/// Largest QAOA depth whose edge neighbourhoods are all trees.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertifiedDepth {
    Bounded(usize),
    Unbounded,
}

impl fmt::Display for CertifiedDepth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CertifiedDepth::Bounded(p) => write!(f, "{p}"),
            CertifiedDepth::Unbounded => f.write_str("unbounded"),
        }
    }
}

impl CertifiedDepth {
    pub fn admits(&self, p: usize) -> bool {
        match self {
            CertifiedDepth::Bounded(max) => p <= *max,
            CertifiedDepth::Unbounded => true,
        }
    }
}

/// Shortest cycle length by breadth-first search from every vertex.
///
/// From a root, a non-tree edge `(u, w)` closes a closed walk of length
/// `dist[u] + dist[w] + 1` which contains a cycle no longer than that; a root
/// lying on a shortest cycle attains it exactly.
pub fn girth(g: &Graph) -> Girth {
    let n = g.vertex_count();
    let mut best = usize::MAX;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for root in 0..n {
        dist.fill(usize::MAX);
        parent.fill(usize::MAX);
        queue.clear();
        dist[root] = 0;
        queue.push_back(root);
        while let Some(u) = queue.pop_front() {
            // Nothing reachable from here can beat the current best.
            if 2 * dist[u] >= best {
                break;
            }
            for &w in g.neighbors(u) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if parent[u] != w {
                    best = best.min(dist[u] + dist[w] + 1);
                }
            }
        }
    }
    if best == usize::MAX {
        Girth::Infinite
    } else {
        Girth::Finite(best)
    }
}

/// `floor((girth - 2) / 2)` for a regular graph; unbounded for forests.
pub fn max_certified_depth(g: &Graph) -> Result<CertifiedDepth> {
    if g.regular_degree().is_none() {
        return Err(Error::InvalidInput(
            "certified depth is defined for regular graphs only".into(),
        ));
    }
    Ok(match girth(g) {
        Girth::Finite(len) => CertifiedDepth::Bounded((len - 2) / 2),
        Girth::Infinite => CertifiedDepth::Unbounded,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named_graph;

    /// Shortest cycle through exhaustive simple-path search; only for tiny graphs.
    fn exhaustive_girth(g: &Graph) -> Girth {
        fn dfs(g: &Graph, start: usize, u: usize, len: usize, on: &mut [bool], best: &mut usize) {
            for &w in g.neighbors(u) {
                if w == start && len >= 3 {
                    *best = (*best).min(len);
                } else if !on[w] && w > start && len + 1 < *best {
                    on[w] = true;
                    dfs(g, start, w, len + 1, on, best);
                    on[w] = false;
                }
            }
        }
        let mut best = usize::MAX;
        let mut on = vec![false; g.vertex_count()];
        for s in 0..g.vertex_count() {
            on[s] = true;
            dfs(g, s, s, 1, &mut on, &mut best);
            on[s] = false;
        }
        if best == usize::MAX {
            Girth::Infinite
        } else {
            Girth::Finite(best)
        }
    }

    #[test]
    fn cycles() {
        for n in 3..=20 {
            assert_eq!(girth(&named_graph("cycle", Some(n)).unwrap()), Girth::Finite(n));
        }
    }

    #[test]
    fn forests_are_infinite() {
        let path = Graph::new(5, [(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        assert_eq!(girth(&path), Girth::Infinite);
        let star = Graph::new(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(girth(&star), Girth::Infinite);
        assert_eq!(girth(&Graph::new(0, []).unwrap()), Girth::Infinite);
    }

    #[test]
    fn named_graphs_match_exhaustive_search() {
        for (name, expected) in [("petersen", 5), ("heawood", 6), ("k33", 4), ("moebius_kantor", 6)] {
            let g = named_graph(name, None).unwrap();
            assert_eq!(exhaustive_girth(&g), Girth::Finite(expected), "{name}");
            assert_eq!(girth(&g), Girth::Finite(expected), "{name}");
        }
    }

    #[test]
    fn certified_depths() {
        let heawood = named_graph("heawood", None).unwrap();
        assert_eq!(max_certified_depth(&heawood).unwrap(), CertifiedDepth::Bounded(2));
        // girth 36 corresponds to p = 17
        let c36 = named_graph("cycle", Some(36)).unwrap();
        assert_eq!(max_certified_depth(&c36).unwrap(), CertifiedDepth::Bounded(17));
        let matching = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(max_certified_depth(&matching).unwrap(), CertifiedDepth::Unbounded);
        let path = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        assert!(matches!(max_certified_depth(&path), Err(Error::InvalidInput(_))));
    }
}
