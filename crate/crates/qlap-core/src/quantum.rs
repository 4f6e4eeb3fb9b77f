//! Certified two-sided brackets for the k-equivalence relation on paths.
//!
//! Deciding whether two equal-length paths are k-equivalent means deciding
//! that a product of generators is nonzero in a universal C*-algebra; no
//! algorithm for that is known. What we can compute are certified brackets:
//!
//! * a lower (finer) partition — classical automorphism orbits, which are
//!   always contained in the k-equivalence classes;
//! * an upper (coarser) partition — the greatest fixed point of necessary
//!   non-vanishing conditions, so it can only merge, never split, true
//!   classes.
//!
//! When the two sides coincide the relation is pinned exactly. The closure
//! rules and why each is necessary:
//!
//! * base pattern: a nonzero product forces, for every position pair, the
//!   same adjacency bit (edge/non-edge products vanish) and the same
//!   equality pattern (row and column orthogonality of a magic unitary);
//! * (a) reversal: generator products of bounded length commute with their
//!   reversals, and reversing a path preserves pathhood;
//! * (b) restriction: a product with a vanishing contiguous sub-product
//!   vanishes, by the orthogonality lemma after summing over rows;
//! * (c) extension: summing a one-step extension over all partner
//!   extensions telescopes, by magic unitarity, back to the original
//!   product — so a surviving pair must admit a surviving extension on
//!   either end, in both roles;
//! * (d) transitivity holds for lengths up to `2k+1`, which justifies the
//!   final transitive closure on each level.
//!
//! `k` enters through the exploration depth: levels are built up to length
//! `2k+1`, so deeper vanishing patterns feed back into shorter paths.

use crate::automorphism::{merge_orientations, PermutationGroup};
use crate::error::{Error, Result};
use crate::graph::{Graph, Path};
use crate::partition::{DisjointSets, Ground, Partition};
use crate::rational::Rational;
use serde::{Deserialize, Serialize};

/// Edge-class counting convention for `r_k`.
///
/// `Directed` counts classes of directed edges with orientation pairs
/// merged, which makes `ind_k` agree with the classical index whenever the
/// relation matches classical orbits. `Unordered` counts plain unordered
/// classes, the literal reading of the definition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    #[default]
    Directed,
    Unordered,
}

impl std::fmt::Display for Convention {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Convention::Directed => write!(f, "directed"),
            Convention::Unordered => write!(f, "unordered"),
        }
    }
}

/// Deterministic elimination order of the fixed-point iteration.
///
/// The fixed point itself is order-independent (the rules are monotone);
/// running both orders and comparing is a cheap self-check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PassOrder {
    #[default]
    Forward,
    Reverse,
}

/// Which closure rule eliminated a pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KillRule {
    /// Adjacency or equality pattern mismatch; never alive to begin with.
    BasePattern,
    Reversal,
    Restriction,
    ExtensionRight,
    ExtensionLeft,
}

impl std::fmt::Display for KillRule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            KillRule::BasePattern => "base_pattern",
            KillRule::Reversal => "reversal",
            KillRule::Restriction => "restriction",
            KillRule::ExtensionRight => "extension_right",
            KillRule::ExtensionLeft => "extension_left",
        };
        write!(f, "{s}")
    }
}

/// Diagnostic for a pair of equal-length paths.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompatibilityWitness {
    pub p: Path,
    pub q: Path,
    pub status: WitnessStatus,
    pub killing_rule: Option<KillRule>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessStatus {
    ClassicallyEquivalent,
    ClosureAlive,
    ClosureKilled,
}

/// A two-sided bracket of the k-equivalence classes on `E^alpha`.
///
/// `lower` refines `upper`; the true relation lies between them, so
/// `exact` certifies it completely.
#[derive(Debug, Clone, PartialEq)]
pub struct PartitionBracket {
    pub k: usize,
    pub alpha: usize,
    pub paths: Vec<Path>,
    pub lower: Partition,
    pub upper: Partition,
    pub exact: bool,
}

/// Necessary condition for a nonzero generator product over `(p, q)`:
/// every position pair carries the same adjacency bit and the same
/// equality pattern.
pub fn base_compatible(g: &Graph, p: &Path, q: &Path) -> Result<bool> {
    if p.len() != q.len() {
        return Err(Error::LengthMismatch {
            a: p.len(),
            b: q.len(),
        });
    }
    let pv = p.vertices();
    let qv = q.vertices();
    for s in 0..pv.len() {
        for t in (s + 1)..pv.len() {
            if g.adjacent(pv[s], pv[t]) != g.adjacent(qv[s], qv[t]) {
                return Ok(false);
            }
            if (pv[s] == pv[t]) != (qv[s] == qv[t]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Packed adjacency/equality pattern of a path; two paths are base
/// compatible exactly when their signatures agree.
fn signature(g: &Graph, vertices: &[usize]) -> u64 {
    debug_assert!(
        vertices.len() <= 8,
        "signature packs at most 28 position pairs"
    );
    let mut sig = 0u64;
    let mut bit = 0;
    for s in 0..vertices.len() {
        for t in (s + 1)..vertices.len() {
            if g.adjacent(vertices[s], vertices[t]) {
                sig |= 1 << bit;
            }
            if vertices[s] == vertices[t] {
                sig |= 1 << (bit + 1);
            }
            bit += 2;
        }
    }
    sig
}

/// Square bit grid over a signature class.
#[derive(Debug, Clone)]
struct BitGrid {
    size: usize,
    bits: Vec<u64>,
}

impl BitGrid {
    fn all_alive(size: usize) -> BitGrid {
        BitGrid {
            size,
            bits: vec![u64::MAX; (size * size).div_ceil(64)],
        }
    }

    fn get(&self, i: usize, j: usize) -> bool {
        let idx = i * self.size + j;
        self.bits[idx / 64] >> (idx % 64) & 1 == 1
    }

    fn clear(&mut self, i: usize, j: usize) {
        let idx = i * self.size + j;
        self.bits[idx / 64] &= !(1 << (idx % 64));
    }
}

/// One path length in the closure state.
struct Level {
    paths: Vec<Path>,
    /// signature class of each path
    class_of: Vec<u32>,
    /// members of each class, ascending path index
    classes: Vec<Vec<u32>>,
    pos_in_class: Vec<u32>,
    alive: Vec<BitGrid>,
    kill: Vec<Vec<u8>>,
    rev: Vec<u32>,
    window_lo: Vec<u32>,
    window_hi: Vec<u32>,
    ext_right: Vec<Vec<u32>>,
    ext_left: Vec<Vec<u32>>,
}

const ALIVE: u8 = 0;

fn rule_code(rule: KillRule) -> u8 {
    match rule {
        KillRule::BasePattern => 1,
        KillRule::Reversal => 2,
        KillRule::Restriction => 3,
        KillRule::ExtensionRight => 4,
        KillRule::ExtensionLeft => 5,
    }
}

fn rule_from_code(code: u8) -> Option<KillRule> {
    match code {
        1 => Some(KillRule::BasePattern),
        2 => Some(KillRule::Reversal),
        3 => Some(KillRule::Restriction),
        4 => Some(KillRule::ExtensionRight),
        5 => Some(KillRule::ExtensionLeft),
        _ => None,
    }
}

fn find_path(paths: &[Path], vertices: &[usize]) -> u32 {
    paths
        .binary_search_by(|p| p.vertices().cmp(vertices))
        .expect("extension or window of a path is a path") as u32
}

/// The closure fixed point over all levels `0..=depth`.
pub struct Closure {
    pub k: usize,
    /// Deepest level actually explored, `min(2k+1, cap-limited depth)`.
    pub depth: usize,
    levels: Vec<Level>,
}

impl Closure {
    /// Runs the elimination to its fixed point.
    ///
    /// Levels are built for every length up to `2k+1`; lengths above
    /// `alpha` whose path count exceeds `cap` are dropped (that only
    /// coarsens the result, which stays a sound upper side), while an
    /// over-cap level at or below `alpha` is an error.
    pub fn compute(
        g: &Graph,
        k: usize,
        alpha: usize,
        cap: usize,
        order: PassOrder,
    ) -> Result<Closure> {
        assert!(k >= 1, "k must be at least 1");
        if alpha > 2 * k + 1 {
            return Err(Error::LengthMismatch {
                a: alpha,
                b: 2 * k + 1,
            });
        }
        let target = 2 * k + 1;
        let mut per_level_paths = Vec::with_capacity(target + 1);
        for beta in 0..=target {
            match g.enumerate_paths(beta, cap) {
                Ok(paths) => per_level_paths.push(paths),
                Err(Error::CapacityExceeded { cap, found }) if beta > alpha => {
                    let _ = (cap, found);
                    break;
                }
                Err(e) => return Err(e),
            }
        }
        let depth = per_level_paths.len() - 1;

        let mut levels: Vec<Level> = Vec::with_capacity(depth + 1);
        for (beta, paths) in per_level_paths.iter().enumerate() {
            levels.push(build_level(g, beta, paths, &per_level_paths));
        }

        let mut changed = true;
        while changed {
            changed = false;
            let level_order: Vec<usize> = match order {
                PassOrder::Forward => (0..=depth).collect(),
                PassOrder::Reverse => (0..=depth).rev().collect(),
            };
            for beta in level_order {
                changed |= sweep_level(&mut levels, beta, depth, order);
            }
        }

        Ok(Closure { k, depth, levels })
    }

    fn level(&self, alpha: usize) -> &Level {
        &self.levels[alpha]
    }

    pub fn paths(&self, alpha: usize) -> &[Path] {
        &self.level(alpha).paths
    }

    /// Whether the pair survived elimination (before transitive closure).
    pub fn pair_alive(&self, alpha: usize, i: usize, j: usize) -> bool {
        pair_alive(self.level(alpha), i, j)
    }

    /// Partition of `E^alpha` after transitive closure of the surviving
    /// relation; valid because `alpha <= 2k+1`.
    pub fn partition(&self, alpha: usize) -> Partition {
        let level = self.level(alpha);
        let mut dsu = DisjointSets::new(level.paths.len());
        for members in &level.classes {
            for (ci, &i) in members.iter().enumerate() {
                for &j in &members[ci + 1..] {
                    if pair_alive(level, i as usize, j as usize) {
                        dsu.union(i as usize, j as usize);
                    }
                }
            }
        }
        dsu.into_partition(Ground {
            alpha,
            size: level.paths.len(),
        })
    }

    /// Diagnostic for a pair of paths of the same length.
    pub fn witness(
        &self,
        g: &Graph,
        lower: &Partition,
        alpha: usize,
        i: usize,
        j: usize,
    ) -> CompatibilityWitness {
        let _ = g;
        let level = self.level(alpha);
        let (p, q) = (level.paths[i].clone(), level.paths[j].clone());
        if lower.same_block(i, j) {
            return CompatibilityWitness {
                p,
                q,
                status: WitnessStatus::ClassicallyEquivalent,
                killing_rule: None,
            };
        }
        if level.class_of[i] != level.class_of[j] {
            return CompatibilityWitness {
                p,
                q,
                status: WitnessStatus::ClosureKilled,
                killing_rule: Some(KillRule::BasePattern),
            };
        }
        let c = level.class_of[i] as usize;
        let (li, lj) = (
            level.pos_in_class[i] as usize,
            level.pos_in_class[j] as usize,
        );
        let code = level.kill[c][li * level.classes[c].len() + lj];
        match rule_from_code(code) {
            Some(rule) => CompatibilityWitness {
                p,
                q,
                status: WitnessStatus::ClosureKilled,
                killing_rule: Some(rule),
            },
            None => CompatibilityWitness {
                p,
                q,
                status: WitnessStatus::ClosureAlive,
                killing_rule: None,
            },
        }
    }
}

fn build_level(g: &Graph, beta: usize, paths: &[Path], all: &[Vec<Path>]) -> Level {
    let m = paths.len();
    let mut sig_first: Vec<(u64, u32)> = Vec::new();
    let mut class_of = vec![0u32; m];
    for (i, p) in paths.iter().enumerate() {
        let sig = signature(g, p.vertices());
        let id = match sig_first.iter().position(|&(s, _)| s == sig) {
            Some(pos) => pos as u32,
            None => {
                sig_first.push((sig, i as u32));
                (sig_first.len() - 1) as u32
            }
        };
        class_of[i] = id;
    }
    let mut classes = vec![Vec::new(); sig_first.len()];
    let mut pos_in_class = vec![0u32; m];
    for (i, &c) in class_of.iter().enumerate() {
        pos_in_class[i] = classes[c as usize].len() as u32;
        classes[c as usize].push(i as u32);
    }
    let alive: Vec<BitGrid> = classes
        .iter()
        .map(|c| BitGrid::all_alive(c.len()))
        .collect();
    let kill: Vec<Vec<u8>> = classes
        .iter()
        .map(|c| vec![ALIVE; c.len() * c.len()])
        .collect();

    let rev: Vec<u32> = paths
        .iter()
        .map(|p| {
            let mut v = p.vertices().to_vec();
            v.reverse();
            find_path(paths, &v)
        })
        .collect();

    let (window_lo, window_hi) = if beta == 0 {
        (Vec::new(), Vec::new())
    } else {
        let below = &all[beta - 1];
        let lo = paths
            .iter()
            .map(|p| find_path(below, &p.vertices()[..beta]))
            .collect();
        let hi = paths
            .iter()
            .map(|p| find_path(below, &p.vertices()[1..]))
            .collect();
        (lo, hi)
    };

    let (ext_right, ext_left) = if beta + 1 < all.len() {
        let above = &all[beta + 1];
        let right = paths
            .iter()
            .map(|p| {
                let mut v = p.vertices().to_vec();
                v.push(0);
                g.neighbors(p.last())
                    .iter()
                    .map(|&w| {
                        *v.last_mut().unwrap() = w;
                        find_path(above, &v)
                    })
                    .collect()
            })
            .collect();
        let left = paths
            .iter()
            .map(|p| {
                let mut v = vec![0];
                v.extend_from_slice(p.vertices());
                g.neighbors(p.first())
                    .iter()
                    .map(|&w| {
                        v[0] = w;
                        find_path(above, &v)
                    })
                    .collect()
            })
            .collect();
        (right, left)
    } else {
        (Vec::new(), Vec::new())
    };

    Level {
        paths: paths.to_vec(),
        class_of,
        classes,
        pos_in_class,
        alive,
        kill,
        rev,
        window_lo,
        window_hi,
        ext_right,
        ext_left,
    }
}

fn pair_alive(level: &Level, i: usize, j: usize) -> bool {
    let (ci, cj) = (level.class_of[i], level.class_of[j]);
    ci == cj
        && level.alive[ci as usize].get(
            level.pos_in_class[i] as usize,
            level.pos_in_class[j] as usize,
        )
}

/// One elimination pass over a level. Returns whether anything was killed.
fn sweep_level(levels: &mut [Level], beta: usize, depth: usize, order: PassOrder) -> bool {
    let mut changed = false;
    let class_count = levels[beta].classes.len();
    for c in 0..class_count {
        let size = levels[beta].classes[c].len();
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        for li in 0..size {
            for lj in (li + 1)..size {
                pairs.push((li, lj));
            }
        }
        if order == PassOrder::Reverse {
            pairs.reverse();
        }
        for (li, lj) in pairs {
            if !levels[beta].alive[c].get(li, lj) {
                continue;
            }
            let i = levels[beta].classes[c][li] as usize;
            let j = levels[beta].classes[c][lj] as usize;
            if let Some(rule) = check_pair(levels, beta, depth, i, j) {
                let level = &mut levels[beta];
                level.alive[c].clear(li, lj);
                level.alive[c].clear(lj, li);
                level.kill[c][li * size + lj] = rule_code(rule);
                level.kill[c][lj * size + li] = rule_code(rule);
                changed = true;
            }
        }
    }
    changed
}

/// Applies rules (a)-(c) to one surviving pair; `None` means it survives.
fn check_pair(levels: &[Level], beta: usize, depth: usize, i: usize, j: usize) -> Option<KillRule> {
    let level = &levels[beta];

    // (a) reversal
    if !pair_alive(level, level.rev[i] as usize, level.rev[j] as usize) {
        return Some(KillRule::Reversal);
    }

    // (b) restriction to the two maximal windows; shorter windows follow
    // by induction through the levels below.
    if beta > 0 {
        let below = &levels[beta - 1];
        if !pair_alive(
            below,
            level.window_lo[i] as usize,
            level.window_lo[j] as usize,
        ) || !pair_alive(
            below,
            level.window_hi[i] as usize,
            level.window_hi[j] as usize,
        ) {
            return Some(KillRule::Restriction);
        }
    }

    // (c) every one-step extension of either path must admit a surviving
    // partner extension of the other, on both ends.
    if beta < depth {
        let above = &levels[beta + 1];
        let survives = |exts_a: &[u32], exts_b: &[u32]| {
            exts_a.iter().all(|&a| {
                exts_b
                    .iter()
                    .any(|&b| pair_alive(above, a as usize, b as usize))
            })
        };
        if !survives(&level.ext_right[i], &level.ext_right[j])
            || !survives(&level.ext_right[j], &level.ext_right[i])
        {
            return Some(KillRule::ExtensionRight);
        }
        if !survives(&level.ext_left[i], &level.ext_left[j])
            || !survives(&level.ext_left[j], &level.ext_left[i])
        {
            return Some(KillRule::ExtensionLeft);
        }
    }

    None
}

/// The upper-side partition of `E^alpha` for the given `k`.
pub fn closure_partition(g: &Graph, k: usize, alpha: usize, cap: usize) -> Result<Partition> {
    Ok(Closure::compute(g, k, alpha, cap, PassOrder::Forward)?.partition(alpha))
}

/// Computes the full bracket: classical orbits below, closure above.
pub fn bracket(
    g: &Graph,
    group: &PermutationGroup,
    k: usize,
    alpha: usize,
    cap: usize,
) -> Result<PartitionBracket> {
    let lower = crate::automorphism::path_orbits(g, group, alpha, cap)?;
    let closure = Closure::compute(g, k, alpha, cap, PassOrder::Forward)?;
    let upper = closure.partition(alpha);
    let paths = closure.levels[alpha].paths.clone();
    let exact = lower == upper;
    Ok(PartitionBracket {
        k,
        alpha,
        paths,
        lower,
        upper,
        exact,
    })
}

/// `[r_lo, r_hi]` enclosing the true `r_k = min_i |E_i^k|` on directed
/// edges; requires a bracket at `alpha = 1`.
///
/// Under the `Directed` convention orientation pairs are merged before
/// taking the minimum, so a relation matching classical orbits reproduces
/// the classical index. `Unordered` divides merged sizes by two.
pub fn r_k_bracket(bracket: &PartitionBracket, convention: Convention) -> (usize, usize) {
    assert_eq!(bracket.alpha, 1, "r_k lives on directed edges");
    let merged_min = |p: &Partition| merge_orientations(&bracket.paths, p).min_block_size();
    let (lo, hi) = (merged_min(&bracket.lower), merged_min(&bracket.upper));
    match convention {
        Convention::Directed => (lo, hi),
        Convention::Unordered => (lo / 2, hi / 2),
    }
}

/// Per-`k` row of the monotonicity report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonotonicityRow {
    pub k: usize,
    pub upper_blocks: usize,
    pub r_lower: usize,
    pub r_upper: usize,
    /// `[volume/r_upper, volume/r_lower]` estimate of `ind_k`.
    pub ind_interval: (Rational, Rational),
}

/// Result of checking the chain behavior in `k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonotonicityReport {
    pub alpha: usize,
    pub rows: Vec<MonotonicityRow>,
    /// Non-monotone steps; any entry indicates an implementation bug.
    pub violations: Vec<String>,
}

impl MonotonicityReport {
    pub fn is_monotone(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Verifies that upper partitions refine monotonically as `k` grows, that
/// the `r_k` estimates never increase, and that the `ind_k` estimates
/// never decrease (becoming no better than the classical index).
pub fn monotonicity_check(
    g: &Graph,
    group: &PermutationGroup,
    k_max: usize,
    cap: usize,
) -> Result<MonotonicityReport> {
    if g.edges().is_empty() {
        return Err(Error::IsolatedVertex { vertex: 0 });
    }
    let alpha = 1;
    let volume = g.volume() as i64;
    let mut rows: Vec<MonotonicityRow> = Vec::new();
    let mut violations = Vec::new();
    let mut previous: Option<(usize, Partition)> = None;
    for k in 1..=k_max {
        let b = bracket(g, group, k, alpha, cap)?;
        let (r_lo, r_hi) = r_k_bracket(&b, Convention::Directed);
        let ind_interval = (
            Rational(num_rational::Ratio::new(volume, r_hi as i64)),
            Rational(num_rational::Ratio::new(volume, r_lo as i64)),
        );
        if let Some((prev_k, prev_upper)) = &previous {
            let prev = rows.last().unwrap();
            if !b.upper.refines(prev_upper) {
                violations.push(format!(
                    "upper partition at k={k} does not refine the one at k={prev_k}"
                ));
            }
            if r_hi > prev.r_upper {
                violations.push(format!(
                    "r_{k} upper estimate {r_hi} exceeds r_{prev_k} estimate {}",
                    prev.r_upper
                ));
            }
            if ind_interval.0 < prev.ind_interval.0 {
                violations.push(format!(
                    "ind_{k} lower estimate {} drops below ind_{prev_k} estimate {}",
                    ind_interval.0, prev.ind_interval.0
                ));
            }
        }
        previous = Some((k, b.upper.clone()));
        rows.push(MonotonicityRow {
            k,
            upper_blocks: b.upper.block_count(),
            r_lower: r_lo,
            r_upper: r_hi,
            ind_interval,
        });
    }
    Ok(MonotonicityReport {
        alpha,
        rows,
        violations,
    })
}
