//! Criterion benchmarks for `parcoh-core`; see `benches/`.
