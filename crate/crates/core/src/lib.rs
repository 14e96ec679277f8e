//! Fractional perfect matchings and matching extendability of graphs, with
//! machine-checkable certificates, plus Cayley graphs of finite Abelian
//! groups and exhaustive verification of their extendability classification.
//!
//! The crate is `no_std` and only needs `alloc`.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod groups;
pub mod graph;
pub mod matching;
pub mod extendability;
pub mod classification;
pub mod parse;
