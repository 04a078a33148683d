//! Finite simple graphs and multigraphs with the operations the rest of the
//! crate builds on.

pub mod families;
mod hamilton;
pub mod iso;
pub mod json;
mod multi;
mod ops;
mod simple;
mod vertex;

pub use hamilton::{
    enumerate_hamilton_cycles, enumerate_hamilton_paths, enumerate_multi_hamilton_cycles,
    has_hamilton_cycle,
};
pub(crate) use hamilton::CycleSearch;
pub use multi::{eulerian_v_splits, MultiGraph, VSplitResult};
pub use ops::{
    contract_subgraph, cut_edges, cut_vertices, is_even_cut_parity, is_two_connected, kth_power,
};
pub use simple::{EdgeSet, FiniteGraph};
pub(crate) use simple::fresh_name;
pub use vertex::{e, v, Edge, Vertex};
