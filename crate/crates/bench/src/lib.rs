//! Shared inputs for the benchmarks.

use lgquantum::partition::{all_strict, Partition};

/// Every ordered pair in `D_n × D_n`.
pub fn strict_pairs(n: usize) -> Vec<(Partition, Partition)> {
    let d = all_strict(n);
    d.iter()
        .flat_map(|a| d.iter().map(move |b| (a.clone(), b.clone())))
        .collect()
}
