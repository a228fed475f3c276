//! Criterion benchmarks for `zeta-core`; see `benches/`.
