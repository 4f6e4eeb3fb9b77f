//! Graph ingestion, validation, basic metrics, and path-space enumeration.
//!
//! Graphs are finite, simple, undirected, and loop-free; vertices are
//! `0..n`. Two text formats are accepted: an edge list (first line `n`,
//! then `u v` lines) and a dense 0/1 adjacency matrix (first line `n`,
//! then `n` rows of `n` tokens). Duplicate edge lines are idempotent.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// A validated simple undirected graph.
///
/// The adjacency matrix is symmetric with zero diagonal and 0/1 entries;
/// the edge list and neighbor lists are kept consistent with it. All
/// operations are pure, a `Graph` is immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<bool>,
    edges: Vec<(usize, usize)>,
    neighbors: Vec<Vec<usize>>,
}

/// An ordered adjacent pair. `src != dst` and the edge exists in the graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DirectedEdge {
    pub src: usize,
    pub dst: usize,
}

impl DirectedEdge {
    /// Canonical unordered form: endpoints sorted ascending.
    pub fn unordered(self) -> (usize, usize) {
        if self.src <= self.dst {
            (self.src, self.dst)
        } else {
            (self.dst, self.src)
        }
    }
}

/// A walk `(v_0, ..., v_alpha)` with consecutive vertices adjacent.
///
/// Vertices may repeat; only consecutive adjacency is required. A single
/// vertex is a path of length 0.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Path {
    vertices: Vec<usize>,
}

// A length-0 path is a single vertex, so `len` counts edges and there is
// no meaningful empty state.
#[allow(clippy::len_without_is_empty)]
impl Path {
    /// Validates consecutive adjacency against `g`.
    pub fn new(g: &Graph, vertices: Vec<usize>) -> Result<Path> {
        if vertices.is_empty() {
            return Err(Error::Parse {
                line: 0,
                message: "a path needs at least one vertex".into(),
            });
        }
        for &v in &vertices {
            if v >= g.n {
                return Err(Error::Range { index: v, n: g.n });
            }
        }
        for w in vertices.windows(2) {
            if !g.adjacent(w[0], w[1]) {
                return Err(Error::Parse {
                    line: 0,
                    message: format!("vertices {} and {} are not adjacent", w[0], w[1]),
                });
            }
        }
        Ok(Path { vertices })
    }

    /// Number of edges, i.e. `vertices.len() - 1`.
    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn first(&self) -> usize {
        self.vertices[0]
    }

    pub fn last(&self) -> usize {
        *self.vertices.last().unwrap()
    }

    pub fn reversed(&self) -> Path {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        Path { vertices }
    }

    /// Directed edges traversed by the path, in order.
    pub fn steps(&self) -> impl Iterator<Item = DirectedEdge> + '_ {
        self.vertices.windows(2).map(|w| DirectedEdge {
            src: w[0],
            dst: w[1],
        })
    }
}

/// Deterministic neighbor exploration order for shortest-path selection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TieBreak {
    /// Neighbors in ascending vertex order (the default fixed choice).
    #[default]
    Ascending,
    /// Neighbors in descending order; used to check choice-independence.
    Descending,
}

impl Graph {
    /// Builds a graph from an unordered edge list, validating all invariants.
    pub fn from_edge_list(n: usize, pairs: &[(usize, usize)]) -> Result<Graph> {
        let mut adj = vec![false; n * n];
        for &(u, v) in pairs {
            if u >= n {
                return Err(Error::Range { index: u, n });
            }
            if v >= n {
                return Err(Error::Range { index: v, n });
            }
            if u == v {
                return Err(Error::Loop { vertex: u });
            }
            adj[u * n + v] = true;
            adj[v * n + u] = true;
        }
        Ok(Self::from_adj_unchecked(n, adj))
    }

    fn from_adj_unchecked(n: usize, adj: Vec<bool>) -> Graph {
        let mut edges = Vec::new();
        let mut neighbors = vec![Vec::new(); n];
        for i in 0..n {
            for j in 0..n {
                if adj[i * n + j] {
                    neighbors[i].push(j);
                    if i < j {
                        edges.push((i, j));
                    }
                }
            }
        }
        Graph {
            n,
            adj,
            edges,
            neighbors,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Unordered edges as sorted `(i, j)` pairs with `i < j`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adj[i * self.n + j]
    }

    /// Sorted neighbor list of `i`.
    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.neighbors[i]
    }

    /// Degree of vertex `i`: the number of edges at `i`.
    pub fn degree(&self, i: usize) -> Result<usize> {
        if i >= self.n {
            return Err(Error::Range {
                index: i,
                n: self.n,
            });
        }
        Ok(self.neighbors[i].len())
    }

    /// Sum of all degrees, equal to twice the edge count.
    pub fn volume(&self) -> usize {
        self.neighbors.iter().map(Vec::len).sum()
    }

    pub fn is_regular(&self) -> bool {
        self.n == 0
            || self
                .neighbors
                .iter()
                .all(|nb| nb.len() == self.neighbors[0].len())
    }

    /// BFS distances from `root`; `None` marks unreachable vertices.
    pub fn bfs_distances(&self, root: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        dist[root] = Some(0);
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &v in &self.neighbors[u] {
                if dist[v].is_none() {
                    dist[v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.bfs_distances(0).iter().all(Option::is_some)
    }

    /// Maximum over vertex pairs of the BFS distance.
    pub fn diameter(&self) -> Result<usize> {
        let mut max = 0;
        for root in 0..self.n {
            for (v, d) in self.bfs_distances(root).iter().enumerate() {
                match d {
                    Some(d) => max = max.max(*d),
                    None => {
                        return Err(Error::Disconnected {
                            from: root,
                            unreachable: v,
                        })
                    }
                }
            }
        }
        Ok(max)
    }

    /// All walks of length `alpha` with consecutive adjacency, in
    /// lexicographic order of their vertex sequences.
    ///
    /// Aborts with `CapacityExceeded` once more than `cap` paths exist.
    pub fn enumerate_paths(&self, alpha: usize, cap: usize) -> Result<Vec<Path>> {
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(alpha + 1);
        for start in 0..self.n {
            current.push(start);
            self.extend_paths(alpha, cap, &mut current, &mut out)?;
            current.pop();
        }
        Ok(out)
    }

    fn extend_paths(
        &self,
        alpha: usize,
        cap: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<Path>,
    ) -> Result<()> {
        if current.len() == alpha + 1 {
            if out.len() == cap {
                return Err(Error::CapacityExceeded {
                    cap,
                    found: out.len(),
                });
            }
            out.push(Path {
                vertices: current.clone(),
            });
            return Ok(());
        }
        let last = *current.last().unwrap();
        for i in 0..self.neighbors[last].len() {
            let v = self.neighbors[last][i];
            current.push(v);
            self.extend_paths(alpha, cap, current, out)?;
            current.pop();
        }
        Ok(())
    }

    /// One fixed shortest path from `root` to every other vertex.
    ///
    /// The choice is pinned by BFS with parent-pointer reconstruction,
    /// exploring neighbors in ascending vertex order. Paths are returned
    /// sorted by (length, target).
    pub fn bfs_shortest_path_family(&self, root: usize) -> Result<Vec<Path>> {
        self.bfs_shortest_path_family_with(root, TieBreak::Ascending)
    }

    /// Like [`Graph::bfs_shortest_path_family`] with an explicit tie-break
    /// order, for checking that downstream quantities do not depend on the
    /// fixed choice.
    pub fn bfs_shortest_path_family_with(&self, root: usize, tie: TieBreak) -> Result<Vec<Path>> {
        if root >= self.n {
            return Err(Error::Range {
                index: root,
                n: self.n,
            });
        }
        let mut parent: Vec<Option<usize>> = vec![None; self.n];
        let mut dist = vec![None; self.n];
        dist[root] = Some(0usize);
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            let mut visit = |v: usize| {
                if dist[v].is_none() {
                    dist[v] = Some(du + 1);
                    parent[v] = Some(u);
                    queue.push_back(v);
                }
            };
            match tie {
                TieBreak::Ascending => self.neighbors[u].iter().for_each(|&v| visit(v)),
                TieBreak::Descending => self.neighbors[u].iter().rev().for_each(|&v| visit(v)),
            }
        }
        let mut family = Vec::with_capacity(self.n.saturating_sub(1));
        for (target, d) in dist.iter().enumerate() {
            if target == root {
                continue;
            }
            if d.is_none() {
                return Err(Error::Disconnected {
                    from: root,
                    unreachable: target,
                });
            }
            let mut vertices = vec![target];
            let mut v = target;
            while let Some(p) = parent[v] {
                vertices.push(p);
                v = p;
            }
            vertices.reverse();
            family.push(Path { vertices });
        }
        family.sort_by_key(|p| (p.len(), p.last()));
        Ok(family)
    }
}

/// Parses a graph from edge-list or adjacency-matrix text.
///
/// The format is detected from the body: exactly `n` data lines of `n`
/// 0/1 tokens each is a matrix, anything else is an edge list. Blank
/// lines and `#` comments are skipped.
pub fn load_graph(source: &str) -> Result<Graph> {
    let mut lines = source
        .lines()
        .enumerate()
        .map(|(idx, line)| (idx + 1, line.split('#').next().unwrap_or("").trim()))
        .filter(|(_, line)| !line.is_empty());

    let (first_no, first) = lines.next().ok_or_else(|| Error::Parse {
        line: 0,
        message: "empty input".into(),
    })?;
    let n: usize = first.parse().map_err(|_| Error::Parse {
        line: first_no,
        message: format!("expected vertex count, got {first:?}"),
    })?;
    if n == 0 {
        return Err(Error::Parse {
            line: first_no,
            message: "vertex count must be positive".into(),
        });
    }

    let body: Vec<(usize, Vec<&str>)> = lines
        .map(|(no, line)| (no, line.split_whitespace().collect()))
        .collect();

    let looks_like_matrix = body.len() == n
        && body
            .iter()
            .all(|(_, toks)| toks.len() == n && toks.iter().all(|t| *t == "0" || *t == "1"));

    if looks_like_matrix {
        parse_matrix(n, &body)
    } else {
        parse_edge_list(n, &body)
    }
}

fn parse_edge_list(n: usize, body: &[(usize, Vec<&str>)]) -> Result<Graph> {
    let mut pairs = Vec::with_capacity(body.len());
    for (no, toks) in body {
        if toks.len() != 2 {
            return Err(Error::Parse {
                line: *no,
                message: format!("expected `u v`, got {} tokens", toks.len()),
            });
        }
        let parse = |t: &str| -> Result<usize> {
            t.parse().map_err(|_| Error::Parse {
                line: *no,
                message: format!("invalid vertex index {t:?}"),
            })
        };
        pairs.push((parse(toks[0])?, parse(toks[1])?));
    }
    Graph::from_edge_list(n, &pairs)
}

fn parse_matrix(n: usize, body: &[(usize, Vec<&str>)]) -> Result<Graph> {
    let mut adj = vec![false; n * n];
    for (i, (no, toks)) in body.iter().enumerate() {
        for (j, tok) in toks.iter().enumerate() {
            let bit = match *tok {
                "0" => false,
                "1" => true,
                other => {
                    return Err(Error::Parse {
                        line: *no,
                        message: format!("matrix entries must be 0 or 1, got {other:?}"),
                    })
                }
            };
            adj[i * n + j] = bit;
        }
    }
    for i in 0..n {
        if adj[i * n + i] {
            return Err(Error::Loop { vertex: i });
        }
        for j in (i + 1)..n {
            if adj[i * n + j] != adj[j * n + i] {
                return Err(Error::Asymmetry { i, j });
            }
        }
    }
    Ok(Graph::from_adj_unchecked(n, adj))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::test_graphs::*;

    #[test]
    fn parses_k3_edge_list() {
        let g = load_graph("3\n0 1\n1 2\n0 2").unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edges().len(), 3);
    }

    #[test]
    fn rejects_loop() {
        assert_eq!(load_graph("2\n0 0").unwrap_err(), Error::Loop { vertex: 0 });
    }

    #[test]
    fn rejects_out_of_range_index() {
        assert!(matches!(
            load_graph("3\n0 5").unwrap_err(),
            Error::Range { index: 5, n: 3 }
        ));
    }

    #[test]
    fn parses_c4_adjacency_matrix() {
        let g = load_graph("4\n0 1 0 1\n1 0 1 0\n0 1 0 1\n1 0 1 0").unwrap();
        for i in 0..4 {
            assert_eq!(g.degree(i).unwrap(), 2);
        }
        assert_eq!(g, cycle(4));
    }

    #[test]
    fn rejects_asymmetric_matrix() {
        let err = load_graph("3\n0 1 0\n0 0 1\n0 1 0").unwrap_err();
        assert!(matches!(err, Error::Asymmetry { .. }));
    }

    #[test]
    fn duplicate_edges_are_idempotent() {
        let g = load_graph("3\n0 1\n1 0\n0 1\n1 2").unwrap();
        assert_eq!(g.edges(), &[(0, 1), (1, 2)]);
    }

    #[test]
    fn degrees_and_volume() {
        assert_eq!(complete(4).degree(0).unwrap(), 3);
        assert_eq!(cycle(5).degree(2).unwrap(), 2);
        for i in 0..10 {
            assert_eq!(petersen().degree(i).unwrap(), 3);
        }
        assert_eq!(cycle(6).volume(), 12);
        assert_eq!(complete(4).volume(), 12);
        assert_eq!(petersen().volume(), 30);
    }

    #[test]
    fn diameters() {
        assert_eq!(complete(5).diameter().unwrap(), 1);
        assert_eq!(cycle(6).diameter().unwrap(), 3);
        assert_eq!(petersen().diameter().unwrap(), 2);
    }

    #[test]
    fn diameter_of_disconnected_graph_fails() {
        let g = Graph::from_edge_list(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(matches!(g.diameter(), Err(Error::Disconnected { .. })));
    }

    #[test]
    fn enumerates_directed_edges_as_length_one_paths() {
        let paths = complete(3).enumerate_paths(1, usize::MAX).unwrap();
        assert_eq!(paths.len(), 6);
    }

    #[test]
    fn c4_paths_of_length_two_match_enumeration_oracle() {
        // Oracle: scan all 4^3 vertex triples for consecutive adjacency.
        // 8 straight paths plus 8 backtracking ones, since walks may
        // revisit vertices.
        let g = cycle(4);
        let mut count = 0;
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    if g.adjacent(a, b) && g.adjacent(b, c) {
                        count += 1;
                    }
                }
            }
        }
        assert_eq!(count, 16);
        assert_eq!(g.enumerate_paths(2, usize::MAX).unwrap().len(), count);
    }

    #[test]
    fn length_zero_paths_are_vertices() {
        let g = petersen();
        let paths = g.enumerate_paths(0, usize::MAX).unwrap();
        assert_eq!(paths.len(), 10);
        assert!(paths.iter().enumerate().all(|(i, p)| p.vertices() == [i]));
    }

    #[test]
    fn capacity_exceeded_carries_count() {
        let err = complete(4).enumerate_paths(3, 10).unwrap_err();
        assert_eq!(err, Error::CapacityExceeded { cap: 10, found: 10 });
    }

    #[test]
    fn bfs_family_matches_fixed_tie_break() {
        let fam = cycle(4).bfs_shortest_path_family(0).unwrap();
        let got: Vec<&[usize]> = fam.iter().map(Path::vertices).collect();
        assert_eq!(got, vec![&[0, 1][..], &[0, 3], &[0, 1, 2]]);

        let fam = complete(3).bfs_shortest_path_family(0).unwrap();
        let got: Vec<&[usize]> = fam.iter().map(Path::vertices).collect();
        assert_eq!(got, vec![&[0, 1][..], &[0, 2]]);

        let fam = path_graph(3).bfs_shortest_path_family(0).unwrap();
        let got: Vec<&[usize]> = fam.iter().map(Path::vertices).collect();
        assert_eq!(got, vec![&[0, 1][..], &[0, 1, 2]]);
    }

    #[test]
    fn bfs_family_lengths_equal_bfs_distance_and_cover_all() {
        for g in [cycle(7), petersen(), prism()] {
            let dist = g.bfs_distances(0);
            let fam = g.bfs_shortest_path_family(0).unwrap();
            assert_eq!(fam.len(), g.vertex_count() - 1);
            let mut seen = vec![false; g.vertex_count()];
            for p in &fam {
                assert_eq!(p.first(), 0);
                assert_eq!(Some(p.len()), dist[p.last()]);
                seen[p.last()] = true;
            }
            assert!(seen.iter().skip(1).all(|&s| s));
        }
    }

    #[test]
    fn handshake_identity() {
        for g in [cycle(5), complete(6), petersen(), star(3), prism()] {
            assert_eq!(g.volume(), 2 * g.edges().len());
        }
    }

    #[test]
    fn path_space_closed_under_reversal() {
        let g = prism();
        for alpha in 0..=3 {
            let paths = g.enumerate_paths(alpha, usize::MAX).unwrap();
            let set: std::collections::HashSet<_> = paths.iter().cloned().collect();
            for p in &paths {
                assert!(set.contains(&p.reversed()));
            }
        }
    }
}
