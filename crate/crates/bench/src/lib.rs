//! Benchmarks for the crsing library live in `benches/`.
