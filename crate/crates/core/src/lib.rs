//! Exhaustive verification toolkit for the five-valued Boolean functions
//! `f_{λ,μ}` and `g_{λ,μ}` on GF(2^2m).
//!
//! Everything here is pure computation and builds without `std` (an
//! allocator is required). The `parallel` feature spreads truth-table
//! construction, transforms and per-`μ` runs over a rayon pool; results are
//! bit-identical with or without it.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod bits;
pub mod boolfun;
pub mod constructions;
pub mod error;
pub mod expsums;
pub mod gf2n;
pub mod kloosterman;
pub mod par;
pub mod poly;
pub mod report;
pub mod verify;
pub mod walsh;

pub use error::{Error, Result};
pub use gf2n::{create_ctx, BinaryField, FieldCtx, FieldElem, Subfield, Subgroup, TraceField};
