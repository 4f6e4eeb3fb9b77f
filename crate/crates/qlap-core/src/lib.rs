//! Normalized Laplacian spectra of finite simple connected graphs,
//! classical automorphism orbits, certified brackets of the k-equivalence
//! relation on path spaces, and the spectral-gap lower bounds they yield
//! for vertex-transitive graphs.
//!
//! The pieces compose in one pipeline:
//!
//! 1. [`graph`] loads and validates a graph and enumerates its path spaces;
//! 2. [`spectral`] builds the normalized Laplacian and computes its full
//!    spectrum with a cyclic Jacobi solver;
//! 3. [`automorphism`] enumerates `Aut(g)` exactly and its orbits on
//!    vertices, directed edges and paths;
//! 4. [`quantum`] brackets the k-equivalence classes between classical
//!    orbits and a closure fixed point of necessary vanishing conditions;
//! 5. [`bounds`] turns the brackets into certified and candidate lower
//!    bounds on the spectral gap, with exact rational bookkeeping.

#![forbid(unsafe_code)]

pub mod automorphism;
pub mod bounds;
pub mod error;
pub mod graph;
pub mod partition;
pub mod quantum;
pub mod rational;
pub mod spectral;
pub mod test_graphs;

pub use automorphism::{
    automorphism_group, automorphism_group_with_budget, classical_index, edge_orbits,
    is_vertex_transitive, merge_orientations, path_orbits, vertex_orbits, PermutationGroup,
};
pub use bounds::{
    count_ne, count_ne_with_family, evaluate_bounds, ind_k_interval, verify_class_constancy,
    verify_inequality_chain, BoundReport, BracketSide, ChainReport, ConstancyReport, EdgePathCount,
    NeCounts, PathRelation, RelationLevel,
};
pub use error::{Error, Result};
pub use graph::{load_graph, DirectedEdge, Graph, Path, TieBreak};
pub use partition::{DisjointSets, Ground, Partition};
pub use quantum::{
    base_compatible, bracket, closure_partition, monotonicity_check, r_k_bracket, Closure,
    CompatibilityWitness, Convention, KillRule, MonotonicityReport, MonotonicityRow,
    PartitionBracket, PassOrder, WitnessStatus,
};
pub use rational::Rational;
pub use spectral::{
    build_laplacian, eigen_decompose, harmonic_quotient, lambda1, LaplacianMatrix, SpectralResult,
    DEFAULT_TOL, MAX_SWEEPS,
};
