//! Exact list-coloring counts and searches over list assignments.
//!
//! The crate provides an exact counting engine for proper colorings from
//! per-vertex color lists, closed forms for paths and cycles, canonical
//! enumeration of list assignments up to color renaming, deciders for
//! whether uniform lists minimize the coloring count and for colorability
//! from every assignment of a given size, a structural classifier for the
//! 2-list special case, and constructions of counting gadgets that separate
//! the two decision problems.

pub mod assignment;
mod canon;
pub mod classify;
pub mod count;
pub mod error;
mod fastcount;
pub mod gadgets;
pub mod graph;
pub mod paths;
pub mod search;

pub use assignment::{ListAssignment, Pin};
pub use error::{Error, Result};
pub use gadgets::{CopyLayout, HGraphLayout};
pub use graph::{CoreReduction, CoreShape, Graph};
