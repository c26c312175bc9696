//! Exact computation in the group of birational selfmaps of a factorial
//! nodal quartic threefold.
//!
//! The group is generated by biregular automorphisms together with
//! birational involutions centered in nodes (`τ_P`), in lines through one
//! or two nodes (`τ_L`), and in conjugate node pairs (`τ_{P1P2}`). This
//! crate models that calculus over exact rational arithmetic:
//!
//! * [`incidence`] — combinatorial configurations of nodes and marked lines;
//! * [`degree`] — degree vectors `(μ, ν_•)` and the linear action of every
//!   involution on them;
//! * [`untwist`] — detection of non-canonical centers and the
//!   degree-decreasing descent that factors a map into generators;
//! * [`word`] — words in the generators modulo the relation presentation,
//!   with an exact per-cluster normal form;
//! * [`elliptic`] — a chord–tangent group-law engine on plane cubics used
//!   to validate the reflection semantics on actual curves;
//! * [`lattice`] — (−2)-curve configurations, negative-(semi)definiteness,
//!   and ADE / affine Dynkin recognition;
//! * [`quartic`] — exact multivariate polynomial verification of quartic
//!   equations against incidence data;
//! * [`cli`] — the `birquartic` command-line entry point.
//!
//! All arithmetic is exact: `BigRational` coefficients, prime fields for
//! curve sampling, integer lattices. There is no floating point anywhere.

pub mod cli;
pub mod degree;
pub mod elliptic;
pub mod exec;
pub mod incidence;
pub mod lattice;
pub mod linalg;
pub mod quartic;
pub mod rat;
pub mod rng;
pub mod sweeps;
pub mod untwist;
pub mod word;

mod error;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
