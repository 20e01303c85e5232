//! Network formation game with reliability requirements.
//!
//! Players come in two kinds, major and minor. Each player pays for its
//! links and for the hop lengths of a pair of disjoint paths to every other
//! player; a missing path or backup path is charged as a symbolic infinity.
//! On top of that cost model the crate provides:
//!
//! * path machinery: shortest paths, disjoint path pairs under several
//!   objectives, unit-capacity max-flow counting ([`paths`], [`flow`]);
//! * player costs, deltas and monetary transfers ([`cost`]);
//! * pairwise stability, exhaustive enumeration and price metrics
//!   ([`stability`]);
//! * turn-based dynamics, strategic pricing and structure classification
//!   ([`dynamics`]);
//! * motif counters, configuration-model nulls and topology metrics
//!   ([`motifs`], [`topology`]).
//!
//! The crate is `no_std` and only needs `alloc`. File formats, the command
//! line and parallel drivers live in the `netform` companion crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod cost;
pub mod dynamics;
mod error;
pub mod ext;
pub mod flow;
pub mod graph;
pub mod motifs;
pub mod paths;
pub mod stability;
pub mod topology;

pub use cost::{GameParams, PaymentMatrix};
pub use error::{Error, Result};
pub use ext::{ExtCost, ExtLength, ExtRatio, Rational};
pub use graph::{EdgeChange, Network, NodeId, PlayerType};
pub use paths::{DisjointnessMode, DistancePair, PairObjective};
