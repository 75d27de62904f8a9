//! Decomposition engine for C4-free odd-signable graphs.
//!
//! The crate detects the class-defining forbidden structures (C4, theta,
//! prism, even wheel), finds the wheel-derived "forcer" configurations that
//! guarantee clique star cutsets, decomposes graphs along laminar families of
//! skewed separations via central bags, and extracts certified balanced
//! separators end to end. Brute-force oracles at small scale back every
//! nontrivial claim.

pub mod detect;
pub mod graph;
pub mod laminar;
pub mod oracle;
pub mod pipeline;
pub mod separation;
pub mod twojoin;
pub mod wheels;

pub use graph::{Graph, HoleRecord, PathRecord, Rational, VertexSet, WeightAssignment};
