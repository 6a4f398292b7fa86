//! Inputs shared by the benchmarks.

use gtseq::grid::cube;

/// The bottom row `1, 2, ..., n`.
pub fn staircase(n: usize) -> Vec<i64> {
    (1..=n as i64).collect()
}

/// Every point of `{lo..=hi}^n`.
pub fn grid(n: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    cube(n, lo, hi)
}
