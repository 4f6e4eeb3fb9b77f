//! Exact automorphism groups at desk scale, their orbits on vertices,
//! directed edges and paths, and the classical index.
//!
//! The group is found by backtracking over image assignments with a
//! degree-profile invariant for pruning, and is enumerated in full:
//! orbit computations on path spaces need every element, and the sizes
//! involved stay small for the graphs this tool targets (n <= 16 or so).

use crate::error::{Error, Result};
use crate::graph::{Graph, Path};
use crate::partition::{DisjointSets, Ground, Partition};
use num_rational::Ratio;

/// Default backtracking node budget.
pub const DEFAULT_NODE_BUDGET: usize = 10_000_000;
/// Default cap on the group order.
pub const DEFAULT_ORDER_LIMIT: usize = 1_000_000;

/// A fully enumerated permutation group acting on `0..n`.
///
/// Elements are image tuples in lexicographic order; `generators` is a
/// subset sufficient to generate the group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationGroup {
    pub n: usize,
    pub elements: Vec<Vec<usize>>,
    pub generators: Vec<Vec<usize>>,
}

impl PermutationGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

/// Enumerates `Aut(g)` with the default node budget.
pub fn automorphism_group(g: &Graph, limit: usize) -> Result<PermutationGroup> {
    automorphism_group_with_budget(g, limit, DEFAULT_NODE_BUDGET)
}

/// Enumerates `Aut(g)`, failing with `LimitExceeded` when the order grows
/// past `limit` and `BudgetExceeded` when the search visits more than
/// `budget` nodes.
pub fn automorphism_group_with_budget(
    g: &Graph,
    limit: usize,
    budget: usize,
) -> Result<PermutationGroup> {
    let n = g.vertex_count();

    // Vertex invariant: (degree, sorted multiset of neighbor degrees).
    let invariant: Vec<(usize, Vec<usize>)> = (0..n)
        .map(|v| {
            let mut nd: Vec<usize> = g
                .neighbors(v)
                .iter()
                .map(|&w| g.neighbors(w).len())
                .collect();
            nd.sort_unstable();
            (g.neighbors(v).len(), nd)
        })
        .collect();

    let mut elements = Vec::new();
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let mut nodes = 0usize;
    search(
        g,
        &invariant,
        0,
        &mut image,
        &mut used,
        &mut nodes,
        budget,
        limit,
        &mut elements,
    )?;

    let generators = find_generators(n, &elements);
    Ok(PermutationGroup {
        n,
        elements,
        generators,
    })
}

#[allow(clippy::too_many_arguments)]
fn search(
    g: &Graph,
    invariant: &[(usize, Vec<usize>)],
    v: usize,
    image: &mut Vec<usize>,
    used: &mut Vec<bool>,
    nodes: &mut usize,
    budget: usize,
    limit: usize,
    elements: &mut Vec<Vec<usize>>,
) -> Result<()> {
    let n = g.vertex_count();
    if v == n {
        if elements.len() == limit {
            return Err(Error::LimitExceeded { limit });
        }
        elements.push(image.clone());
        return Ok(());
    }
    // Candidates ascending keeps the element list lexicographic.
    'cand: for w in 0..n {
        if used[w] || invariant[v] != invariant[w] {
            continue;
        }
        *nodes += 1;
        if *nodes > budget {
            return Err(Error::BudgetExceeded { budget });
        }
        for (u, &img) in image.iter().enumerate().take(v) {
            if g.adjacent(v, u) != g.adjacent(w, img) {
                continue 'cand;
            }
        }
        image[v] = w;
        used[w] = true;
        let r = search(
            g,
            invariant,
            v + 1,
            image,
            used,
            nodes,
            budget,
            limit,
            elements,
        );
        image[v] = usize::MAX;
        used[w] = false;
        r?;
    }
    Ok(())
}

fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    // (a * b)(x) = a(b(x))
    b.iter().map(|&x| a[x]).collect()
}

fn find_generators(n: usize, elements: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let identity: Vec<usize> = (0..n).collect();
    let mut generated: std::collections::HashSet<Vec<usize>> =
        std::collections::HashSet::from([identity]);
    let mut generators = Vec::new();
    for e in elements {
        if generated.contains(e) {
            continue;
        }
        generators.push(e.clone());
        // Re-close under the enlarged generating set.
        let mut frontier: Vec<Vec<usize>> = generated.iter().cloned().collect();
        while let Some(x) = frontier.pop() {
            for gen in &generators {
                let y = compose(gen, &x);
                if generated.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
    }
    generators
}

/// Orbit partition of the vertex set.
pub fn vertex_orbits(group: &PermutationGroup) -> Partition {
    let mut dsu = DisjointSets::new(group.n);
    for sigma in &group.elements {
        for (v, &w) in sigma.iter().enumerate() {
            dsu.union(v, w);
        }
    }
    dsu.into_partition(Ground {
        alpha: 0,
        size: group.n,
    })
}

/// Orbit partition of the directed edges (as length-1 paths, lex order).
pub fn edge_orbits(g: &Graph, group: &PermutationGroup) -> Result<Partition> {
    path_orbits(g, group, 1, usize::MAX)
}

/// Orbit partition of `E^alpha` under the coordinatewise action.
pub fn path_orbits(
    g: &Graph,
    group: &PermutationGroup,
    alpha: usize,
    cap: usize,
) -> Result<Partition> {
    let paths = g.enumerate_paths(alpha, cap)?;
    let index: std::collections::HashMap<&[usize], usize> = paths
        .iter()
        .enumerate()
        .map(|(i, p)| (p.vertices(), i))
        .collect();
    let mut dsu = DisjointSets::new(paths.len());
    let mut mapped = Vec::with_capacity(alpha + 1);
    for sigma in &group.elements {
        for (i, p) in paths.iter().enumerate() {
            mapped.clear();
            mapped.extend(p.vertices().iter().map(|&v| sigma[v]));
            dsu.union(i, index[mapped.as_slice()]);
        }
    }
    Ok(dsu.into_partition(Ground {
        alpha,
        size: paths.len(),
    }))
}

/// True when the automorphism group has a single vertex orbit.
pub fn is_vertex_transitive(g: &Graph) -> Result<bool> {
    let group = automorphism_group(g, DEFAULT_ORDER_LIMIT)?;
    Ok(vertex_orbits(&group).block_count() == 1)
}

/// Merges each block with the block of the reversed elements, so that
/// orientation pairs `{(i,j), (j,i)}` always land in one block.
pub fn merge_orientations(paths: &[Path], partition: &Partition) -> Partition {
    let index: std::collections::HashMap<&[usize], usize> = paths
        .iter()
        .enumerate()
        .map(|(i, p)| (p.vertices(), i))
        .collect();
    let mut dsu = DisjointSets::new(paths.len());
    for block in &partition.blocks {
        for &x in &block[1..] {
            dsu.union(block[0], x);
        }
    }
    for (i, p) in paths.iter().enumerate() {
        let rev = p.reversed();
        dsu.union(i, index[rev.vertices()]);
    }
    dsu.into_partition(partition.ground)
}

/// The classical index: volume over twice the smallest unordered edge
/// orbit, computed exactly.
///
/// Orbits are taken on directed edges and orientation pairs merged, so the
/// denominator `2 * min |E_i|` is the smallest merged block size.
pub fn classical_index(g: &Graph, group: &PermutationGroup) -> Result<Ratio<i64>> {
    if g.edges().is_empty() {
        return Err(Error::IsolatedVertex { vertex: 0 });
    }
    let directed = g.enumerate_paths(1, usize::MAX)?;
    let orbits = edge_orbits(g, group)?;
    let merged = merge_orientations(&directed, &orbits);
    Ok(Ratio::new(
        g.volume() as i64,
        merged.min_block_size() as i64,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::test_graphs::*;

    /// Brute-force oracle: filter all n! permutations (n <= 8).
    fn brute_force_aut(g: &Graph) -> Vec<Vec<usize>> {
        let n = g.vertex_count();
        assert!(n <= 8);
        let mut out = Vec::new();
        let mut perm: Vec<usize> = (0..n).collect();
        permute(&mut perm, 0, &mut |p| {
            let ok = (0..n).all(|i| (0..n).all(|j| g.adjacent(i, j) == g.adjacent(p[i], p[j])));
            if ok {
                out.push(p.to_vec());
            }
        });
        out.sort();
        out
    }

    fn permute(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
        if k == p.len() {
            f(p);
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            permute(p, k + 1, f);
            p.swap(k, i);
        }
    }

    #[test]
    fn group_orders_match_brute_force() {
        for (g, want) in [
            (cycle(5), 10),
            (complete(4), 24),
            (star(3), 6),
            (prism(), 12),
            (path_graph(3), 2),
        ] {
            let brute = brute_force_aut(&g);
            assert_eq!(brute.len(), want);
            let group = automorphism_group(&g, DEFAULT_ORDER_LIMIT).unwrap();
            assert_eq!(group.elements, brute);
        }
    }

    #[test]
    fn petersen_group_order_is_120() {
        let group = automorphism_group(&petersen(), DEFAULT_ORDER_LIMIT).unwrap();
        assert_eq!(group.order(), 120);
    }

    #[test]
    fn group_axioms_hold_on_element_list() {
        for g in [cycle(6), prism(), petersen()] {
            let group = automorphism_group(&g, DEFAULT_ORDER_LIMIT).unwrap();
            assert!(group.order() <= 10_000);
            let set: std::collections::HashSet<_> = group.elements.iter().cloned().collect();
            assert_eq!(set.len(), group.order());
            assert!(set.contains(&(0..group.n).collect::<Vec<_>>()));
            for a in &group.elements {
                let mut inv = vec![0; group.n];
                for (x, &y) in a.iter().enumerate() {
                    inv[y] = x;
                }
                assert!(set.contains(&inv));
                for b in &group.elements {
                    assert!(set.contains(&compose(a, b)));
                }
            }
        }
    }

    #[test]
    fn generators_generate_the_group() {
        let group = automorphism_group(&petersen(), DEFAULT_ORDER_LIMIT).unwrap();
        let closure = find_generators(group.n, &group.elements);
        assert_eq!(closure, group.generators);
        assert!(group.generators.len() <= 10);
        let mut generated: std::collections::HashSet<Vec<usize>> =
            std::collections::HashSet::from([(0..group.n).collect::<Vec<usize>>()]);
        let mut frontier: Vec<Vec<usize>> = generated.iter().cloned().collect();
        while let Some(x) = frontier.pop() {
            for gen in &group.generators {
                let y = compose(gen, &x);
                if generated.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        assert_eq!(generated.len(), group.order());
    }

    #[test]
    fn vertex_orbit_shapes() {
        let single = vertex_orbits(&automorphism_group(&cycle(6), 1 << 20).unwrap());
        assert_eq!(single.block_count(), 1);

        let star_orbits = vertex_orbits(&automorphism_group(&star(3), 1 << 20).unwrap());
        assert_eq!(star_orbits.blocks, vec![vec![0], vec![1, 2, 3]]);

        let path_orbits = vertex_orbits(&automorphism_group(&path_graph(3), 1 << 20).unwrap());
        assert_eq!(path_orbits.blocks, vec![vec![0, 2], vec![1]]);
    }

    #[test]
    fn orbit_sizes_divide_group_order() {
        for g in [cycle(5), star(4), prism(), petersen()] {
            let group = automorphism_group(&g, DEFAULT_ORDER_LIMIT).unwrap();
            for p in [
                vertex_orbits(&group),
                edge_orbits(&g, &group).unwrap(),
                path_orbits(&g, &group, 2, usize::MAX).unwrap(),
            ] {
                for b in &p.blocks {
                    assert_eq!(group.order() % b.len(), 0, "orbit size {}", b.len());
                }
            }
        }
    }

    #[test]
    fn edge_orbit_shapes() {
        let g = cycle(4);
        let group = automorphism_group(&g, 1 << 20).unwrap();
        assert_eq!(edge_orbits(&g, &group).unwrap().block_count(), 1);

        let g = star(3);
        let group = automorphism_group(&g, 1 << 20).unwrap();
        let orbits = edge_orbits(&g, &group).unwrap();
        assert_eq!(orbits.block_count(), 2);
        let sizes: Vec<usize> = orbits.blocks.iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![3, 3]);

        let g = petersen();
        let group = automorphism_group(&g, DEFAULT_ORDER_LIMIT).unwrap();
        let orbits = edge_orbits(&g, &group).unwrap();
        assert_eq!(orbits.block_count(), 1);
        assert_eq!(orbits.blocks[0].len(), 30);
    }

    #[test]
    fn edge_orbits_merge_into_orientation_pairs_summing_to_volume() {
        for g in [cycle(5), star(3), prism(), petersen()] {
            let group = automorphism_group(&g, DEFAULT_ORDER_LIMIT).unwrap();
            let directed = g.enumerate_paths(1, usize::MAX).unwrap();
            let orbits = edge_orbits(&g, &group).unwrap();
            let merged = merge_orientations(&directed, &orbits);
            assert!(orbits.refines(&merged));
            let total: usize = merged.blocks.iter().map(Vec::len).sum();
            assert_eq!(total, g.volume());
            for b in &merged.blocks {
                assert_eq!(b.len() % 2, 0);
            }
        }
    }

    #[test]
    fn path_orbits_at_length_one_equal_edge_orbits() {
        for g in [cycle(6), star(3), prism()] {
            let group = automorphism_group(&g, DEFAULT_ORDER_LIMIT).unwrap();
            assert_eq!(
                path_orbits(&g, &group, 1, usize::MAX).unwrap(),
                edge_orbits(&g, &group).unwrap()
            );
        }
    }

    #[test]
    fn path_orbit_shapes_length_two() {
        // C4: backtracking paths (i,j,i) split from straight paths (i,j,k).
        let g = cycle(4);
        let group = automorphism_group(&g, 1 << 20).unwrap();
        let orbits = path_orbits(&g, &group, 2, usize::MAX).unwrap();
        let paths = g.enumerate_paths(2, usize::MAX).unwrap();
        assert_eq!(orbits.block_count(), 2);
        for block in &orbits.blocks {
            let backtracking = paths[block[0]].vertices()[0] == paths[block[0]].vertices()[2];
            for &i in block {
                let v = paths[i].vertices();
                assert_eq!(v[0] == v[2], backtracking);
            }
        }

        // Path graph 0-1-2: (0,1,2) and (2,1,0) together, backtracks apart.
        let g = path_graph(3);
        let group = automorphism_group(&g, 1 << 20).unwrap();
        let orbits = path_orbits(&g, &group, 2, usize::MAX).unwrap();
        let paths = g.enumerate_paths(2, usize::MAX).unwrap();
        let idx = |v: &[usize]| paths.iter().position(|p| p.vertices() == v).unwrap();
        assert!(orbits.same_block(idx(&[0, 1, 2]), idx(&[2, 1, 0])));
        assert!(!orbits.same_block(idx(&[0, 1, 0]), idx(&[0, 1, 2])));
        assert!(orbits.same_block(idx(&[0, 1, 0]), idx(&[2, 1, 2])));
    }

    #[test]
    fn transitivity_flags() {
        assert!(is_vertex_transitive(&cycle(7)).unwrap());
        assert!(!is_vertex_transitive(&star(3)).unwrap());
        assert!(is_vertex_transitive(&petersen()).unwrap());
    }

    #[test]
    fn vertex_transitive_graphs_are_regular_with_degree_volume_over_n() {
        for g in [cycle(5), complete(4), petersen(), prism()] {
            assert!(is_vertex_transitive(&g).unwrap());
            assert!(g.is_regular());
            assert_eq!(g.degree(0).unwrap(), g.volume() / g.vertex_count());
        }
    }

    #[test]
    fn classical_index_values() {
        for g in [cycle(5), complete(4), petersen()] {
            let group = automorphism_group(&g, DEFAULT_ORDER_LIMIT).unwrap();
            assert_eq!(classical_index(&g, &group).unwrap(), Ratio::from_integer(1));
        }
        let g = star(3);
        let group = automorphism_group(&g, 1 << 20).unwrap();
        assert_eq!(classical_index(&g, &group).unwrap(), Ratio::from_integer(1));

        // Prism: 6 triangle edges vs 3 rungs, volume 18 so ind = 18/6 = 3.
        let g = prism();
        let group = automorphism_group(&g, 1 << 20).unwrap();
        assert_eq!(classical_index(&g, &group).unwrap(), Ratio::from_integer(3));
    }

    #[test]
    fn budget_and_limit_errors() {
        let err = automorphism_group_with_budget(&petersen(), DEFAULT_ORDER_LIMIT, 50).unwrap_err();
        assert_eq!(err, Error::BudgetExceeded { budget: 50 });
        let err = automorphism_group(&complete(4), 10).unwrap_err();
        assert_eq!(err, Error::LimitExceeded { limit: 10 });
    }
}
