//! Criterion benchmarks for `qinv-core`; see `benches/`.
