//! Hamilton cycles and circles in finite and locally finite graphs.
//!
//! The crate covers squares of caterpillars, outerplanar graphs and their
//! unique Hamilton cycles, forbidden-minor search, lazily generated infinite
//! graphs with end approximations, and a fragment-based cubic construction
//! whose unique Hamilton circle is certified level by level.

pub mod caterpillar;
pub mod corpus;
pub mod error;
pub mod fragment;
pub mod graph;
pub mod lazy;
pub mod minor;
pub mod outerplanar;
pub mod unique;

pub use error::{Error, Result};
