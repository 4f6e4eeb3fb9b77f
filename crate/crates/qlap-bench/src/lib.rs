//! Shared fixtures for the benchmark targets.

use qlap_core::Graph;

/// Deterministic connected graph: a cycle with chords at stride `n/3`.
pub fn chorded_cycle(n: usize) -> Graph {
    let mut pairs: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    let stride = (n / 3).max(2);
    for i in (0..n).step_by(3) {
        pairs.push((i, (i + stride) % n));
    }
    Graph::from_edge_list(n, &pairs).unwrap()
}

pub fn petersen() -> Graph {
    let mut pairs = Vec::new();
    for i in 0..5 {
        pairs.push((i, (i + 1) % 5));
        pairs.push((5 + i, 5 + (i + 2) % 5));
        pairs.push((i, 5 + i));
    }
    Graph::from_edge_list(10, &pairs).unwrap()
}
