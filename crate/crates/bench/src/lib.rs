//! Criterion benchmarks for the `symshare` kernels; see `benches/kernels.rs`.
