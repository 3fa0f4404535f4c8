//! Structure-based classification for the 2-list special case: whether
//! uniform 2-lists minimize a connected graph's coloring count, and whether
//! the graph is colorable from every 2-list assignment.
//!
//! Both answers depend only on the shape of the graph's core (the result of
//! repeatedly peeling degree-1 vertices), so no search is involved. The
//! search module's deciders agree with these on every connected graph small
//! enough to exhaust — that agreement is part of the test suite.

use crate::error::{Error, Result};
use crate::graph::{CoreShape, Graph};

/// True iff no 2-list assignment of the connected graph `g` admits fewer
/// proper colorings than the uniform one.
///
/// Holds exactly when the core is a single vertex, a cycle, or the complete
/// bipartite graph on 2+3 vertices, or the graph contains an odd cycle.
/// Rejects disconnected input.
pub fn classify_2_monophilic(g: &Graph) -> Result<bool> {
    Ok(match connected_core_shape(g)? {
        None => true,
        Some(shape) => matches!(
            shape,
            CoreShape::SingleVertex
                | CoreShape::EvenCycle(_)
                | CoreShape::OddCyclePresent
                | CoreShape::K23
        ),
    })
}

/// True iff the connected graph `g` has a proper coloring from every 2-list
/// assignment.
///
/// Holds exactly when the core is a single vertex, an even cycle, or two
/// vertices joined by three paths of lengths 2, 2, and an even number.
/// Rejects disconnected input.
pub fn classify_2_choosable(g: &Graph) -> Result<bool> {
    Ok(match connected_core_shape(g)? {
        None => true,
        Some(CoreShape::SingleVertex) | Some(CoreShape::EvenCycle(_)) | Some(CoreShape::K23) => {
            true
        }
        Some(CoreShape::Theta(2, 2, c)) => c % 2 == 0,
        Some(_) => false,
    })
}

/// Core shape of a connected graph; `None` for the empty graph, which
/// satisfies both classifications trivially.
fn connected_core_shape(g: &Graph) -> Result<Option<CoreShape>> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if g.vertex_count() == 0 {
        return Ok(None);
    }
    Ok(Some(g.core()?.classify_core_shape()))
}
