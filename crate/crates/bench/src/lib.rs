//! Criterion benchmarks for `eqku-core`; see `benches/`.
