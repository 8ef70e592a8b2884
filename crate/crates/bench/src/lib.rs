//! Benchmarks for the tree contraction live in `benches/`.
