//! Berge cycles in uniform hypergraphs.
//!
//! - [`hypergraph`], [`walk`], [`format`]: representation, Berge walks, `.bhg` files.
//! - [`thresholds`]: minimum-degree bounds for long and hamiltonian Berge cycles.
//! - [`constructions`]: extremal examples and seeded random instances.
//! - [`solver`]: exact search, used as the oracle for everything else.
//! - [`lemmas`]: exhaustive checks of the cycle-position lemmas.
//! - [`engine`]: best cycle/path pair improvement heuristic.
//! - [`verify`]: sweeps that check the thresholds against the solver.

pub mod constructions;
pub mod engine;
pub mod format;
pub mod hypergraph;
pub mod lemmas;
pub mod solver;
pub mod thresholds;
pub mod verify;
pub mod walk;

pub use hypergraph::{degree_profile, validate, DegreeProfile, HypergraphError, UniformHypergraph};
pub use walk::{validate_walk, BergeWalk, WalkKind, WalkViolation};
