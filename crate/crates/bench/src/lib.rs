//! Criterion benchmarks for malcev-core live in `benches/`.
