//! Recognition, certificates and exhaustive verification for
//! 2-self-centered graphs: graphs whose radius and diameter both equal 2.
//!
//! * [`recognition`]: the local degree/common-neighbour test, edge-maximal
//!   and edge-minimal certificates, critical vertices.
//! * [`sbic`] and [`gcb`]: specialized bi-independent coverings and the
//!   generalized complete bipartite construction that produces exactly the
//!   triangle-free 2-self-centered graphs.
//! * [`reduction`]: the star procedure that strips triangles from
//!   edge-minimal graphs.
//! * [`enumeration`] and [`harness`]: exhaustive small-graph generation and
//!   the theorem battery run over it.

pub mod canon;
pub mod enumeration;
pub mod fixtures;
pub mod gcb;
pub mod graph;
pub mod harness;
pub mod io;
pub mod metric;
pub mod recognition;
pub mod reduction;
pub mod sbic;

pub use graph::{Edge, Graph, GraphError, Vertex};
pub use metric::DistanceProfile;
