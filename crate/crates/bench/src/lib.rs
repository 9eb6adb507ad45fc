//! Criterion benchmarks for `infogain`; see `benches/`.
