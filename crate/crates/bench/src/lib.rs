//! Benchmark-only crate; see benches/wordball.rs.
