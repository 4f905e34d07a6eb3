//! Criterion benchmarks for `golden-core` live in `benches/`.
