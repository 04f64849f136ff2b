//! Criterion benchmarks for `metacyc`; see `benches/`.
