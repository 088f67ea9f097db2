//! Pyramids of one-dimensional pieces.
//!
//! A piece of length `a` occupies the open interval `]s, s+a[` at some
//! integer level. Heaps are built by dropping pieces onto a horizontal axis;
//! a pyramid is a heap with a single bottom piece. This crate enumerates
//! pyramids, implements the bijections between right pyramids, positive
//! strings, generalized Dyck paths and `a`-ary trees, factorizes walks into
//! admissible compositions, computes the exact counting series and their
//! asymptotics, checks the transfer-matrix identities behind the count, and
//! counts flat LEGO structures together with growth-constant estimates.
//!
//! Every identity is checked in exact arithmetic; floating point only
//! appears where the quantity itself is irrational (asymptotes, Monte Carlo
//! estimates, fitted growth rates).

pub mod bigmath;
pub mod bijections;
pub mod error;
pub mod heap;
pub mod lego;
pub mod series;
pub mod transfer;

pub use error::{Error, Result};
pub use heap::{Heap, Piece, PieceLength, Pyramid, PyramidClass};

/// Default cap on the number of objects an exhaustive generator may emit.
pub const DEFAULT_BUDGET: u64 = 100_000_000;
