//! Non-conflicting nowhere-zero Z2×Z2 flows on contracted cubic graphs,
//! normal edge-colourings derived from them, and exhaustive searches that
//! certify positive and negative instances.

pub mod batch;
pub mod certificate;
pub mod coloring;
pub mod error;
pub mod flow;
pub mod formats;
pub mod generators;
pub mod graph;
pub mod matching;
pub mod par;

pub use error::{Error, Result};
pub use graph::{ContractedGraph, Pseudograph};
pub use matching::{PerfectMatching, TwoFactor};
