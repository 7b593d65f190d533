//! Belief revision for knowledge bases whose clauses are anchored on the
//! parcels of a spatial graph.
//!
//! Revision removes a preferred minimal hitting set of the minimal
//! conflicts, restricted to revisable (`S1`) clauses. The contained engine
//! runs that procedure block by block over a k-neighborhood partition of
//! the graph, widened by each block's cover and by shifted blockings, and
//! merges the local results; the global engine is the unpartitioned
//! baseline.

pub mod consistency;
pub mod flood;
pub mod hitting_sets;
pub mod kb;
pub mod revision;
pub mod space;
pub mod text;
