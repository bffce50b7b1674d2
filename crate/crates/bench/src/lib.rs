//! Criterion benchmarks for the series evaluators, exact ladder algebra,
//! selector kernels, PV quadrature and pairings; see `benches/kernels.rs`.
