//! Small named graphs used by the test suites and benchmarks.

use crate::graph::Graph;

/// Cycle C_n, `n >= 3`.
pub fn cycle(n: usize) -> Graph {
    let pairs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edge_list(n, &pairs).unwrap()
}

/// Complete graph K_n.
pub fn complete(n: usize) -> Graph {
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            pairs.push((i, j));
        }
    }
    Graph::from_edge_list(n, &pairs).unwrap()
}

/// Path graph 0 - 1 - ... - (n-1).
pub fn path_graph(n: usize) -> Graph {
    let pairs: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
    Graph::from_edge_list(n, &pairs).unwrap()
}

/// Star K_{1,k}: center 0 with `k` leaves.
pub fn star(k: usize) -> Graph {
    let pairs: Vec<_> = (1..=k).map(|leaf| (0, leaf)).collect();
    Graph::from_edge_list(k + 1, &pairs).unwrap()
}

/// The Petersen graph: outer 5-cycle 0..4, inner pentagram 5..9, spokes.
pub fn petersen() -> Graph {
    let mut pairs = Vec::new();
    for i in 0..5 {
        pairs.push((i, (i + 1) % 5));
        pairs.push((5 + i, 5 + (i + 2) % 5));
        pairs.push((i, 5 + i));
    }
    Graph::from_edge_list(10, &pairs).unwrap()
}

/// Triangular prism: triangles {0,1,2} and {3,4,5} joined by rungs i - i+3.
pub fn prism() -> Graph {
    Graph::from_edge_list(
        6,
        &[
            (0, 1),
            (0, 2),
            (1, 2),
            (3, 4),
            (3, 5),
            (4, 5),
            (0, 3),
            (1, 4),
            (2, 5),
        ],
    )
    .unwrap()
}
