//! Lower-bound toolkit for quantum query complexity at desk scale.
//!
//! The crate is organized around explicit partial functions
//! ([`PartialFunction`]): boolean or short-output functions given by a
//! truth table over a finite domain of bitstrings. On top of those it
//! provides
//!
//! * combinatorial complexity measures (certificate complexity, block
//!   sensitivity) computed exactly by exhaustive search ([`measures`]),
//! * the adversary bound family: spectral, unweighted (relation),
//!   weighted (pair/triple schemes), minimax schedules, cost-weighted
//!   variants, and a deterministic heuristic optimizer for adversary
//!   matrices ([`adversary`]),
//! * exact and approximate polynomial degree via Möbius interpolation
//!   and LP feasibility, with exact rational arithmetic on small
//!   instances ([`poly`]),
//! * a state-vector simulator for oracle-model query algorithms that
//!   instruments the progress measure and distinguishability checks the
//!   bounds are built on ([`sim`]).
//!
//! Everything is deterministic: iterative solvers start from fixed
//! vectors, searches take explicit seeds, and all tolerances live in
//! [`tol`].

pub mod adversary;
pub mod function;
pub mod measures;
pub mod poly;
pub mod sim;
pub mod tol;

mod error;

pub use error::{Error, Result};
pub use function::{PartialFunction, Word};
