//! Classification of amalgams of finite groups over a fixed graph.
//!
//! An amalgam attaches a finite group to every vertex and every edge of a
//! graph, with injective inclusion maps from vertex groups into incident edge
//! groups. This crate classifies all amalgams sharing the groups and image
//! subgroups of a reference amalgam, up to isomorphism, by translating them
//! into pointings of a reference graph of groups and deciding pointing
//! isomorphism. Specialized classifiers cover the two classical closed forms
//! (double cosets for amalgams of two groups, an explicit equivalence
//! relation for the triangle), and a Bass-Serre word engine computes
//! fundamental groups of pointings for rigid instances.
//!
//! Everything is exhaustive and deterministic: groups are permutation groups
//! with fully enumerated element tables, searches are budget-guarded, and all
//! representatives are canonical minima, so repeated runs produce identical
//! reports.

pub mod amalgam;
pub mod classifiers;
pub mod corpus;
pub mod crosscheck;
pub mod instance;

pub mod error;
pub mod graph;
pub mod group;
pub mod homo;
pub mod perm;
pub mod pointing;
pub mod rigid;
pub mod words;

pub use error::{Error, Result};
pub use group::{FiniteGroup, Subgroup};
pub use perm::Perm;
