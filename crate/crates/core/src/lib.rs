//! Exact combinatorial deciders for Hamiltonicity, path factors and
//! 1-toughness on small graphs, together with the generators needed to
//! build Cartesian products of trees and paths.

pub mod constructions;
pub mod error;
pub mod factors;
pub mod graph;
pub mod hamiltonicity;
pub mod io;
pub mod label;
pub mod toughness;

pub use error::{Error, Result};
pub use graph::{Graph, Vertex, VertexSet};
pub use label::{TDeltaRole, VertexLabel};
