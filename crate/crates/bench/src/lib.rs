//! Criterion benchmarks for `futaki-core`; see `benches/`.
