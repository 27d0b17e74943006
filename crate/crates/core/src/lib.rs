//! Mapping degrees between quasitoric 4-manifolds.
//!
//! A quasitoric 4-manifold is recorded as a connected sum of copies of CP²,
//! anti-CP² and S²×S². A map `M → N` of degree `k` exists exactly when there
//! is an integer matrix `P` with `Pᵗ A P = k B`, where `A` and `B` are the
//! intersection forms of `M` and `N`. This crate builds those forms, searches
//! for such matrices, rules degrees out with cheap invariants, and assembles
//! symbolic degree sets from the known classification results.

pub mod charpair;
pub mod classify;
pub mod error;
pub mod manifold;
pub mod numtheory;
pub mod obstructions;
pub mod quadform;
pub mod search;

pub use error::{Error, Result};
pub use manifold::QuasitoricSum;
pub use quadform::{IntForm, IntMatrix};
