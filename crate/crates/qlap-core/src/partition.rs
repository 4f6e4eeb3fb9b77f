//! Partitions of indexed ground sets (vertices, directed edges, paths).
//!
//! Every ground set is a lexicographically ordered list of paths; length-0
//! paths are vertices and length-1 paths are directed edges. Partitions are
//! stored in canonical form so structural equality is plain `==`.

use serde::{Deserialize, Serialize};

/// The ground set a partition lives on: paths of a fixed length.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ground {
    pub alpha: usize,
    pub size: usize,
}

impl std::fmt::Display for Ground {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.alpha {
            0 => write!(f, "{} vertices", self.size),
            1 => write!(f, "{} directed edges", self.size),
            a => write!(f, "{} paths of length {}", self.size, a),
        }
    }
}

/// A partition of `0..ground.size` into disjoint nonempty blocks.
///
/// Canonical form: each block sorted ascending, blocks ordered by their
/// smallest element, `block_of[x]` the index of the block containing `x`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partition {
    pub ground: Ground,
    pub blocks: Vec<Vec<usize>>,
    pub block_of: Vec<usize>,
}

impl Partition {
    /// Builds the canonical partition induced by arbitrary block labels.
    pub fn from_labels(ground: Ground, labels: &[usize]) -> Partition {
        assert_eq!(labels.len(), ground.size);
        let mut first_seen: Vec<(usize, usize)> = Vec::new(); // (label, first element)
        for (x, &l) in labels.iter().enumerate() {
            if !first_seen.iter().any(|&(seen, _)| seen == l) {
                first_seen.push((l, x));
            }
        }
        first_seen.sort_by_key(|&(_, first)| first);
        let mut renumber = std::collections::HashMap::new();
        for (id, &(l, _)) in first_seen.iter().enumerate() {
            renumber.insert(l, id);
        }
        let mut blocks = vec![Vec::new(); first_seen.len()];
        let mut block_of = vec![0; labels.len()];
        for (x, &l) in labels.iter().enumerate() {
            let id = renumber[&l];
            blocks[id].push(x);
            block_of[x] = id;
        }
        Partition {
            ground,
            blocks,
            block_of,
        }
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn min_block_size(&self) -> usize {
        self.blocks.iter().map(Vec::len).min().unwrap_or(0)
    }

    /// True when every block of `self` lies inside a single block of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        self.ground == coarser.ground
            && self.blocks.iter().all(|b| {
                let target = coarser.block_of[b[0]];
                b.iter().all(|&x| coarser.block_of[x] == target)
            })
    }

    pub fn same_block(&self, x: usize, y: usize) -> bool {
        self.block_of[x] == self.block_of[y]
    }
}

/// Union-find over `0..n`, path-halving with union by size.
#[derive(Debug, Clone)]
pub struct DisjointSets {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl DisjointSets {
    pub fn new(n: usize) -> DisjointSets {
        DisjointSets {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, x: usize, y: usize) {
        let (mut rx, mut ry) = (self.find(x), self.find(y));
        if rx == ry {
            return;
        }
        if self.size[rx] < self.size[ry] {
            std::mem::swap(&mut rx, &mut ry);
        }
        self.parent[ry] = rx;
        self.size[rx] += self.size[ry];
    }

    /// Canonical partition of the current components.
    pub fn into_partition(mut self, ground: Ground) -> Partition {
        let labels: Vec<usize> = (0..self.parent.len()).map(|x| self.find(x)).collect();
        Partition::from_labels(ground, &labels)
    }
}
