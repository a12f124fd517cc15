//! Benchmarks for the globular kernel live in `benches/`.
