//! Edge coloring: König's alternating-path method with `max_degree` colors on
//! bipartite graphs, Misra–Gries with at most `max_degree + 1` colors otherwise.

use std::collections::HashMap;

use super::Graph;

struct State<'g> {
    g: &'g Graph,
    index: HashMap<(usize, usize), usize>,
    color: Vec<Option<usize>>,
    /// `at[v][c]` is the neighbour joined to `v` by the edge of color `c`.
    at: Vec<Vec<Option<usize>>>,
}

impl<'g> State<'g> {
    fn edge(&self, u: usize, v: usize) -> usize {
        self.index[&(u.min(v), u.max(v))]
    }

    fn color_of(&self, u: usize, v: usize) -> Option<usize> {
        self.color[self.edge(u, v)]
    }

    fn free(&self, v: usize, c: usize) -> bool {
        self.at[v][c].is_none()
    }

    fn first_free(&self, v: usize) -> usize {
        self.at[v]
            .iter()
            .position(Option::is_none)
            .expect("a vertex with an uncolored edge has a free color")
    }

    fn set(&mut self, u: usize, v: usize, c: usize) {
        let e = self.edge(u, v);
        debug_assert!(self.color[e].is_none());
        self.color[e] = Some(c);
        self.at[u][c] = Some(v);
        self.at[v][c] = Some(u);
    }

    fn unset(&mut self, u: usize, v: usize) {
        let e = self.edge(u, v);
        if let Some(c) = self.color[e].take() {
            self.at[u][c] = None;
            self.at[v][c] = None;
        }
    }

    /// Maximal fan of `u` starting at the uncolored edge `(u, v)`.
    fn fan(&self, u: usize, v: usize) -> Vec<usize> {
        let mut fan = vec![v];
        loop {
            let last = *fan.last().unwrap();
            let next = self.g.neighbors(u).iter().copied().find(|&w| {
                !fan.contains(&w)
                    && self
                        .color_of(u, w)
                        .is_some_and(|c| self.free(last, c))
            });
            match next {
                Some(w) => fan.push(w),
                None => return fan,
            }
        }
    }

    /// Swaps colors `c` and `d` along the maximal alternating path leaving `u`
    /// by its `d` edge (`c` is free at `u`).
    fn invert_path(&mut self, u: usize, c: usize, d: usize) {
        let mut path = Vec::new();
        let (mut cur, mut col) = (u, d);
        while let Some(next) = self.at[cur][col] {
            path.push((cur, next, col));
            cur = next;
            col = if col == d { c } else { d };
        }
        for &(a, b, _) in &path {
            self.unset(a, b);
        }
        for &(a, b, col) in &path {
            self.set(a, b, if col == d { c } else { d });
        }
    }
}

fn is_bipartite(g: &Graph) -> bool {
    let mut side = vec![None; g.vertex_count()];
    let mut stack = Vec::new();
    for s in 0..g.vertex_count() {
        if side[s].is_some() {
            continue;
        }
        side[s] = Some(false);
        stack.push(s);
        while let Some(u) = stack.pop() {
            let su = side[u].unwrap();
            for &w in g.neighbors(u) {
                match side[w] {
                    None => {
                        side[w] = Some(!su);
                        stack.push(w);
                    }
                    Some(sw) if sw == su => return false,
                    Some(_) => {}
                }
            }
        }
    }
    true
}

/// Proper edge coloring with colors `0..=max_degree` (`0..max_degree` when
/// `g` is bipartite), one entry per edge of `g.edges()`.
pub fn edge_coloring(g: &Graph) -> Vec<usize> {
    let bipartite = is_bipartite(g);
    let k = g.max_degree() + usize::from(!bipartite);
    let mut st = State {
        g,
        index: g
            .edges()
            .iter()
            .enumerate()
            .map(|(i, &(u, v))| ((u.min(v), u.max(v)), i))
            .collect(),
        color: vec![None; g.edge_count()],
        at: vec![vec![None; k]; g.vertex_count()],
    };
    if bipartite {
        color_bipartite(&mut st);
    } else {
        color_misra_gries(&mut st);
    }
    st.color
        .into_iter()
        .map(|c| c.expect("every edge is colored"))
        .collect()
}

/// Each endpoint of an uncolored edge misses some color. If `u` misses `a`
/// and `v` misses `b` but not `a`, the `a`/`b` path out of `v` cannot reach
/// `u` in a bipartite graph, so swapping it frees `a` at both ends.
fn color_bipartite(st: &mut State<'_>) {
    for &(u, v) in st.g.edges() {
        let a = st.first_free(u);
        if !st.free(v, a) {
            let b = st.first_free(v);
            st.invert_path(v, b, a);
        }
        st.set(u, v, a);
    }
}

fn color_misra_gries(st: &mut State<'_>) {
    for &(u, v) in st.g.edges() {
        let fan = st.fan(u, v);
        let c = st.first_free(u);
        let d = st.first_free(*fan.last().unwrap());
        if c != d {
            st.invert_path(u, c, d);
        }
        // Shortest prefix of the fan that is still a fan and ends where d is free.
        let mut end = None;
        for i in 0..fan.len() {
            if i > 0 {
                let linked = st
                    .color_of(u, fan[i])
                    .is_some_and(|col| st.free(fan[i - 1], col));
                if !linked {
                    break;
                }
            }
            if st.free(fan[i], d) {
                end = Some(i);
                break;
            }
        }
        let end = end.expect("fan prefix with a free color exists after path inversion");
        let shifted: Vec<usize> = (1..=end)
            .map(|j| st.color_of(u, fan[j]).expect("fan edges past the first are colored"))
            .collect();
        for &w in &fan[..=end] {
            st.unset(u, w);
        }
        for (j, &col) in shifted.iter().enumerate() {
            st.set(u, fan[j], col);
        }
        st.set(u, fan[end], d);
    }
}

/// True when no two edges sharing an endpoint have the same color.
pub fn is_proper_edge_coloring(g: &Graph, colors: &[usize]) -> bool {
    if colors.len() != g.edge_count() {
        return false;
    }
    let mut used: HashMap<(usize, usize), usize> = HashMap::new();
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        for x in [u, v] {
            if used.insert((x, colors[e]), e).is_some() {
                return false;
            }
        }
    }
    true
}
