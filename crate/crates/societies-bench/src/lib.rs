//! Benchmark harness package. The measurements live in `benches/`;
//! everything they exercise comes from the `societies` crate.
