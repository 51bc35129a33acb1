//! Aperiodic colorings of groups assembled from ℤ by direct products, HNN
//! extensions and free products, together with finite-window verification
//! machinery (periodicity scans, witness-set searches, orbit pattern
//! sampling) and the finitary-permutation counterexample on ℕ.
//!
//! The crate is `no_std` + `alloc`; all IO, CLI and file formats live in the
//! companion `aperiodic-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod colorings;
pub mod counterexample;
pub mod groups;
pub mod sequences;
pub mod verify;
