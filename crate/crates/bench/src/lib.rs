//! Benchmarks for `fuchsia-core`; see `benches/`.
