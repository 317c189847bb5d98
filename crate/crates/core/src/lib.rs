//! Pure-state geometry of a single photon ("quanton") in a two-arm interferometer.
//!
//! A quanton carries a path qubit (arm 0 or arm 1) and a polarization qubit. Its
//! pure states are parametrized by path distinguishability `D`, fringe visibility
//! `V` and path/polarization concurrence `C`, tied together by the triality
//! `D² + V² + C² = 1`, plus two relative phases.
//!
//! The crate provides:
//!
//! - [`quanton`]: building states from `(D, V, C, α, β)` and extracting those
//!   parameters back from arbitrary 4-amplitude states.
//! - [`englert`]: which-way-detector distinguishability and visibility.
//! - [`geometry`]: fidelity and Bures distance, by brute force and in closed form,
//!   including the distance from particle states and its minimum over all particles.
//! - [`sampler`]: seeded, counter-based generation of random test inputs.
//! - [`cli`]: the command implementations behind the `quanton` binary.

#![forbid(unsafe_code)]

pub mod cli;
pub mod englert;
mod error;
pub mod geometry;
pub mod linalg;
pub mod quanton;
pub mod sampler;

pub use error::{Error, Result};
pub use linalg::Complex;
