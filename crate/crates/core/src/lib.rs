//! Finite groups, saturated fusion systems over finite p-groups, and
//! localities, with the machinery to check the local-theoretic statements that
//! tie them together.
//!
//! The crate is `no_std` and needs only `alloc`. Every computation is an exact
//! enumeration over small groups, and every output is deterministic.

#![no_std]

extern crate alloc;

pub mod bitset;
pub mod constructions;
pub mod corpus;
pub mod error;
pub mod fusion;
pub mod group;
pub mod locality;
pub mod verifier;

pub use error::{Error, Result};
