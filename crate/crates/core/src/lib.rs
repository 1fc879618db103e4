//! Geodetic graphs homeomorphic to a geodetic base graph.
//!
//! The crate builds the *geodetic system of Diophantine equations* of a base
//! graph (one unknown segment length per base edge), enumerates its natural
//! solutions for a target diameter, materializes each solution as a
//! subdivided graph and verifies it with three independent geodeticity
//! tests. Closed-form counts for complete-graph homeomorphs live in
//! [`counting`] and [`plesnik`].

pub mod circuits;
pub mod counting;
pub mod dioph;
pub mod enumeration;
pub mod graph;
pub mod moore;
pub mod plesnik;

pub use graph::{Graph, GraphError};
