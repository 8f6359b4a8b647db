//! Criterion benchmarks for slides, rectification, censuses, structure
//! constant tables and the d-complete checker. Run with `cargo bench -p kjdt-bench`.
