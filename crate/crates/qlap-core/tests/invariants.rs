//! Property tests over randomly generated graphs.

use proptest::prelude::*;
use qlap_core::{automorphism_group, bracket, load_graph, merge_orientations, path_orbits, Graph};

/// Random simple graph on `n` vertices from a boolean upper triangle.
fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut pairs = Vec::new();
            let mut idx = 0;
            for i in 0..n {
                for j in (i + 1)..n {
                    if bits[idx] {
                        pairs.push((i, j));
                    }
                    idx += 1;
                }
            }
            Graph::from_edge_list(n, &pairs).unwrap()
        })
    })
}

/// Like `arb_graph` but connected: a random spanning tree plus extras.
fn arb_connected_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(|n| {
        let tree = prop::collection::vec(any::<prop::sample::Index>(), n - 1);
        let extra = prop::collection::vec(any::<bool>(), n * (n - 1) / 2);
        (tree, extra).prop_map(move |(parents, bits)| {
            let mut pairs = Vec::new();
            for v in 1..n {
                pairs.push((parents[v - 1].index(v), v));
            }
            let mut idx = 0;
            for i in 0..n {
                for j in (i + 1)..n {
                    if bits[idx] {
                        pairs.push((i, j));
                    }
                    idx += 1;
                }
            }
            Graph::from_edge_list(n, &pairs).unwrap()
        })
    })
}

fn to_edge_list_text(g: &Graph) -> String {
    let mut s = format!("{}\n", g.vertex_count());
    for (u, v) in g.edges() {
        s.push_str(&format!("{u} {v}\n"));
    }
    s
}

fn to_matrix_text(g: &Graph) -> String {
    let n = g.vertex_count();
    let mut s = format!("{n}\n");
    for i in 0..n {
        let row: Vec<&str> = (0..n)
            .map(|j| if g.adjacent(i, j) { "1" } else { "0" })
            .collect();
        s.push_str(&row.join(" "));
        s.push('\n');
    }
    s
}

proptest! {
    #[test]
    fn handshake_and_directed_edge_count(g in arb_graph(12)) {
        prop_assert_eq!(g.volume(), 2 * g.edges().len());
        let directed = g.enumerate_paths(1, usize::MAX).unwrap();
        prop_assert_eq!(directed.len(), g.volume());
    }

    #[test]
    fn both_text_formats_parse_to_the_same_graph(g in arb_graph(10)) {
        let from_edges = load_graph(&to_edge_list_text(&g)).unwrap();
        let from_matrix = load_graph(&to_matrix_text(&g)).unwrap();
        prop_assert_eq!(&from_edges, &g);
        prop_assert_eq!(&from_matrix, &g);
    }

    #[test]
    fn path_spaces_closed_under_reversal(g in arb_graph(8)) {
        for alpha in 0..=2usize {
            let paths = g.enumerate_paths(alpha, usize::MAX).unwrap();
            let set: std::collections::HashSet<_> = paths.iter().cloned().collect();
            for p in &paths {
                prop_assert!(set.contains(&p.reversed()));
            }
        }
    }

    #[test]
    fn bfs_family_covers_every_vertex_at_bfs_distance(g in arb_connected_graph(10)) {
        let dist = g.bfs_distances(0);
        let family = g.bfs_shortest_path_family(0).unwrap();
        prop_assert_eq!(family.len(), g.vertex_count() - 1);
        for p in &family {
            prop_assert_eq!(Some(p.len()), dist[p.last()]);
        }
    }

    #[test]
    fn brackets_are_sound_on_random_graphs(g in arb_connected_graph(7)) {
        let group = automorphism_group(&g, 1 << 20).unwrap();
        for alpha in 0..=2usize {
            let b = bracket(&g, &group, 1, alpha, 1_000_000).unwrap();
            prop_assert!(b.lower.refines(&b.upper));
            if b.exact {
                prop_assert_eq!(&b.lower, &b.upper);
            }
        }
    }

    #[test]
    fn orbit_merge_is_consistent_on_random_graphs(g in arb_connected_graph(8)) {
        let group = automorphism_group(&g, 1 << 20).unwrap();
        let directed = g.enumerate_paths(1, usize::MAX).unwrap();
        let orbits = path_orbits(&g, &group, 1, usize::MAX).unwrap();
        let merged = merge_orientations(&directed, &orbits);
        prop_assert!(orbits.refines(&merged));
        let total: usize = merged.blocks.iter().map(Vec::len).sum();
        prop_assert_eq!(total, g.volume());
    }
}
