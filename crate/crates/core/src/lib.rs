//! Qubit-routing analysis on architecture graphs.
//!
//! - [`graph`], [`families`], [`catalog`], [`io`]: graphs, cuts, matchings and formats.
//! - [`spectral`]: normalized Laplacian spectrum and expansion quantities.
//! - [`bounds`]: closed-form routing-time lower bounds and separation diagnostics.
//! - [`routing`]: swap schedules (odd-even, complete graph, spanning tree,
//!   random-walk, fast partition) and their verifier.
//! - [`exact`]: breadth-first search for exact routing numbers on small graphs.
//! - [`quantum`]: dense state-vector simulation of the entropic bounds and
//!   the transfer protocols.

pub mod bounds;
pub mod catalog;
pub mod error;
pub mod exact;
pub mod families;
pub mod graph;
pub mod io;
pub mod linalg;
pub mod quantum;
pub mod routing;
pub mod spectral;

pub use error::{BoundsError, GraphError, RoutingError, SearchError, SimError, SpectralError};
pub use graph::{Cut, Edge, Graph, Matching, Vertex};
