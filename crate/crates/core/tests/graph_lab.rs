//! Property tests for the graph-side procedures.

use girth_qaoa::graph::{
    brute_force_maxcut_assignment, complement, cut_value, edge_coloring, girth, i1_value, i2_value,
    i2_via_cut, is_independent, is_proper_edge_coloring, named_graph, repair_independent,
    repair_independent_with, two_independent_sets, RepairRule, DEFAULT_BRUTE_FORCE_CAP,
};
use girth_qaoa::{Girth, Graph};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random simple graph on `n` vertices with maximum degree at most `max_deg`.
fn bounded_degree_graph(n: usize, max_deg: usize, density: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut deg = vec![0; n];
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if deg[u] < max_deg && deg[v] < max_deg && rng.gen_bool(density) {
                deg[u] += 1;
                deg[v] += 1;
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).unwrap()
}

fn graph_and_bits() -> impl Strategy<Value = (Graph, Vec<bool>)> {
    (2usize..=16, 1usize..=6, 0.05f64..0.9, any::<u64>()).prop_flat_map(|(n, k, dens, seed)| {
        let g = bounded_degree_graph(n, k, dens, seed);
        (Just(g), prop::collection::vec(any::<bool>(), n))
    })
}

fn indicator(n: usize, set: &[usize]) -> Vec<bool> {
    let mut bits = vec![false; n];
    set.iter().for_each(|&v| bits[v] = true);
    bits
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn repair_and_split_guarantees((g, bits) in graph_and_bits(), seed in any::<u64>()) {
        let n = g.vertex_count();
        let i1 = i1_value(&g, &bits).unwrap();
        for rule in [RepairRule::Deterministic, RepairRule::Random { seed }] {
            let set = repair_independent_with(&g, &bits, rule).unwrap();
            prop_assert!(is_independent(&g, &set));
            prop_assert!(set.len() as i64 >= i1);
            prop_assert!(i1_value(&g, &indicator(n, &set)).unwrap() >= i1);
            prop_assert!(set.iter().all(|&v| bits[v]));
        }

        let (a, b) = two_independent_sets(&g, &bits).unwrap();
        prop_assert!(is_independent(&g, &a) && is_independent(&g, &b));
        prop_assert!(a.iter().all(|v| !b.contains(v)));
        let i2 = i2_value(&g, &bits).unwrap();
        prop_assert!((a.len() + b.len()) as i64 >= i2);

        prop_assert_eq!(i2, i2_via_cut(&g, &bits).unwrap());
        prop_assert_eq!(i2, n as i64 - g.edge_count() as i64 + cut_value(&g, &bits).unwrap() as i64);
        prop_assert_eq!(cut_value(&g, &bits).unwrap(), cut_value(&g, &complement(&bits)).unwrap());
    }
}

#[test]
fn already_independent_input_is_unchanged() {
    let g = named_graph("cycle", Some(6)).unwrap();
    let bits = [true, false, true, false, true, false];
    assert_eq!(repair_independent(&g, &bits).unwrap(), vec![0, 2, 4]);
}

#[test]
fn cycle_girths() {
    for n in 3..=20 {
        let g = named_graph("cycle", Some(n)).unwrap();
        assert_eq!(girth(&g), Girth::Finite(n));
    }
    for (name, want) in [("petersen", 5), ("heawood", 6), ("mcgee", 7)] {
        assert_eq!(girth(&named_graph(name, None).unwrap()), Girth::Finite(want), "{name}");
    }
}

#[test]
fn colorings_of_random_graphs() {
    for seed in 0..200 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(2..=24);
        let max_deg = rng.gen_range(1..=6);
        let g = bounded_degree_graph(n, max_deg, rng.gen_range(0.1..0.9), seed);
        let colors = edge_coloring(&g);
        assert!(is_proper_edge_coloring(&g, &colors), "seed {seed}");
        let used = colors.iter().max().map_or(0, |c| c + 1);
        assert!(used <= g.max_degree() + 1, "seed {seed}: {used} colors, max degree {}", g.max_degree());
    }
}

#[test]
fn independence_from_maximum_cut_on_cubic_graphs() {
    let mut graphs: Vec<Graph> = ["k33", "petersen", "heawood", "pappus", "moebius_kantor", "mcgee"]
        .iter()
        .map(|name| named_graph(name, None).unwrap())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for n in [8, 10, 12, 16, 20] {
        graphs.push(Graph::random_regular(n, 3, &mut rng).unwrap());
    }
    for g in graphs {
        let (cut, bits) = brute_force_maxcut_assignment(&g, DEFAULT_BRUTE_FORCE_CAP).unwrap();
        let (a, b) = two_independent_sets(&g, &bits).unwrap();
        let w = (a.len() + b.len()) as f64 / g.vertex_count() as f64;
        let bound = 1.5 * cut as f64 / g.edge_count() as f64 - 0.5;
        assert!(w >= bound - 1e-12, "w = {w} below {bound}");
    }
}

#[test]
fn petersen_cut_meets_depth_one_bound() {
    let g = named_graph("petersen", None).unwrap();
    let (cut, bits) = brute_force_maxcut_assignment(&g, DEFAULT_BRUTE_FORCE_CAP).unwrap();
    assert_eq!(cut, 12);
    assert_eq!(cut_value(&g, &bits).unwrap(), 12);
    assert!(cut as f64 / g.edge_count() as f64 >= 0.6924);
}
