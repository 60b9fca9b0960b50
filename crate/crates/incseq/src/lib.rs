//! Combinatorics of s-increasing and s-comparable tuple sequences: core
//! types, grid views, deterministic constructions, exact search, a continuous
//! cuboid relaxation, decomposability checking, and hypergraph encodings.
//!
//! The central objects are [`family::Family`] — a sequence of r-tuples in an
//! integer box together with a strictness parameter `s` and a validation
//! [`family::Mode`] — and [`grid::LabelledGrid`], the two-dimensional labelled
//! view of an arity-3 family.

pub mod construct;
pub mod continuous;
pub mod decompose;
pub mod error;
pub mod family;
pub mod gf;
pub mod grid;
pub mod hypergraph;
pub mod search;
