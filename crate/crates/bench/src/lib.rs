//! Benchmarks for the exact linear algebra, PBW rewriting and cohomology kernels.
//! Run with `cargo bench -p colorhom-bench`.
