//! Canonical labeling and automorphism groups of colored graphs by
//! individualization-refinement.
//!
//! The crate is organized bottom-up:
//!
//! - [`graph`]: colored graphs, ordered partitions, permutations.
//! - [`refine`]: equitable refinement with traces, quotient graphs.
//! - [`multirefine`]: refinement that also respects node individualizations.
//! - [`group`]: Schreier-Sims permutation groups.
//! - [`search`]: canonical forms, automorphism groups, isomorphism tests.
//! - [`io`], [`generators`], [`cli`]: file format, benchmark families and the
//!   command-line front end.

pub mod cli;
pub mod error;
pub mod generators;
pub mod graph;
pub mod group;
pub mod io;
pub mod multirefine;
pub mod refine;
pub mod search;

pub use error::{Error, Result};
pub use graph::{ColoredGraph, OrderedPartition, Permutation};
pub use group::PermutationGroup;
pub use io::{parse_graph, write_graph};
pub use multirefine::{multi_refine, respects_individualizations, select_target_cell, MultiRefineResult};
pub use search::{
    are_isomorphic, are_isomorphic_with, automorphism_group, automorphism_group_with, brute_force_canonical,
    canonical_encoding, canonical_form, canonical_form_with, AutomorphismGroup, CanonicalForm, SearchOptions,
    SearchStats,
};
