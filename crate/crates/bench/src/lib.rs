//! Benchmarks for vbclass live under benches/.
