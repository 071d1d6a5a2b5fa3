//! Workload sizes shared by the criterion benchmarks.

/// q-order used for series-heavy benchmarks.
pub const Q_ORDER: usize = 20;
/// z-order used for R-matrix benchmarks.
pub const Z_ORDER: usize = 10;
