//! Benchmark helpers; see `benches/engine.rs` for the suites.
