//! Criterion benchmarks for the bicanon kernels live in `benches/`.
