//! Criterion benchmarks for `wavicle`; see `benches/`.
