//! Criterion benchmarks for mim-core live under `benches/`.
