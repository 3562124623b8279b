//! Exact certification of the strong spectral property (SSP) for graphs.
//!
//! A graph `G` is in `G^SSP` when every symmetric matrix with off-diagonal
//! pattern `G` has the SSP. This crate proves membership with replayable
//! forcing certificates and non-membership with exactly verified witness
//! pairs `(A, X)`, and decides SSP, SMP and SAP for individual rational
//! matrices. All arithmetic is exact.

pub mod census;
pub mod classify;
pub mod document;
pub mod error;
pub mod families;
pub mod forcing;
pub mod formats;
pub mod graph;
pub mod iso;
pub mod linalg;
pub mod refute;
pub mod strong;

pub use error::{DocumentError, GraphError, LinalgError, ParseError, RefuteError};
pub use graph::{BarbellPartition, Distance, Graph, Pair, Spider, VertexSet};
pub use linalg::{Rat, RatMatrix};
