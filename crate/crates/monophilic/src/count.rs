use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use smallvec::SmallVec;

use crate::assignment::{ListAssignment, Pin};
use crate::error::{Error, Result};
use crate::graph::Graph;

const ENGINE_VERTEX_LIMIT: usize = 128;

type ColorList = SmallVec<[u32; 8]>;

/// Exact number of proper colorings of `g` where every vertex draws its color
/// from its list.
///
/// The count is multiplicative over connected components; any vertex with an
/// empty list forces 0. Backtracking always branches on the vertex with the
/// fewest remaining colors, splits into components as soon as they appear,
/// and memoizes (component, residual lists) subproblems within the call.
pub fn col(g: &Graph, lists: &ListAssignment) -> Result<BigUint> {
    let mut engine = Engine::new(g, lists)?;
    Ok(engine.run())
}

/// `col` with the uniform assignment `{1..n}` on every vertex; this is the
/// chromatic polynomial of `g` evaluated at `n`.
pub fn col_uniform(g: &Graph, n: u32) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "uniform list size must be at least 1".into(),
        ));
    }
    col(g, &ListAssignment::uniform(g.vertex_count(), n))
}

/// Number of proper colorings that agree with every pin.
///
/// Pinned vertices must be distinct and each pin color must be in its
/// vertex's list. Two adjacent vertices pinned to the same color yield 0.
pub fn col_pinned(g: &Graph, lists: &ListAssignment, pins: &[Pin]) -> Result<BigUint> {
    match reduce_by_pins(g, lists, pins)? {
        None => Ok(BigUint::zero()),
        Some((h, induced, _)) => col(&h, &induced),
    }
}

/// Removes the pinned vertices and strikes each pin's color from its
/// neighbors' lists, returning the reduced graph, the induced assignment, and
/// the new-id → original-id vertex map.
///
/// Counting the induced instance equals `col_pinned` on the original; for
/// that identity to hold the pins must not place one color on two adjacent
/// vertices (such inputs are rejected — `col_pinned` itself reports 0).
pub fn induce(
    g: &Graph,
    lists: &ListAssignment,
    pins: &[Pin],
) -> Result<(Graph, ListAssignment, Vec<usize>)> {
    reduce_by_pins(g, lists, pins)?.ok_or_else(|| {
        Error::InvalidParameter(
            "pins assign one color to two adjacent vertices; the induced instance \
             cannot represent the conflict"
                .into(),
        )
    })
}

/// Shared pin validation and reduction. `Ok(None)` means two adjacent pins
/// collide, so the pinned count is 0 but no induced instance exists.
fn reduce_by_pins(
    g: &Graph,
    lists: &ListAssignment,
    pins: &[Pin],
) -> Result<Option<(Graph, ListAssignment, Vec<usize>)>> {
    check_cover(g, lists)?;
    let mut pinned: HashMap<usize, u32> = HashMap::new();
    for pin in pins {
        if pin.vertex >= g.vertex_count() {
            return Err(Error::VertexOutOfRange {
                vertex: pin.vertex,
                vertex_count: g.vertex_count(),
            });
        }
        if !lists.list(pin.vertex).contains(&pin.color) {
            return Err(Error::InvalidPin {
                vertex: pin.vertex,
                color: pin.color,
            });
        }
        if pinned.insert(pin.vertex, pin.color).is_some() {
            return Err(Error::InvalidParameter(format!(
                "vertex {} pinned more than once",
                pin.vertex
            )));
        }
    }
    for pin in pins {
        for w in g.neighbors(pin.vertex) {
            if pinned.get(&w) == Some(&pin.color) {
                return Ok(None);
            }
        }
    }
    let keep: Vec<usize> = (0..g.vertex_count())
        .filter(|v| !pinned.contains_key(v))
        .collect();
    let (h, map) = g.induced_subgraph(&keep)?;
    let mut new_lists = Vec::with_capacity(map.len());
    for &v in &map {
        let mut list: Vec<u32> = lists.list(v).to_vec();
        list.retain(|c| g.neighbors(v).all(|w| pinned.get(&w) != Some(c)));
        new_lists.push(list);
    }
    Ok(Some((h, ListAssignment::new(new_lists)?, map)))
}

/// Repeatedly swaps a color pair across the `v2` side of the bridge
/// `(v1, v2)` until one endpoint list contains the other. List sizes are
/// preserved and the coloring count never increases.
///
/// Each round picks the smallest `c1 ∈ L(v1) ∖ L(v2)` and smallest
/// `c2 ∈ L(v2) ∖ L(v1)` and exchanges them in every list on `v2`'s side; the
/// endpoint intersection grows each time, so the loop terminates.
pub fn separating_edge_surgery(
    g: &Graph,
    lists: &ListAssignment,
    v1: usize,
    v2: usize,
) -> Result<ListAssignment> {
    check_cover(g, lists)?;
    if !g.is_bridge(v1, v2)? {
        return Err(Error::NotABridge { u: v1, v: v2 });
    }
    let split = g.split_at_bridge(v1, v2)?;
    let mut lists: Vec<Vec<u32>> = lists.lists().to_vec();
    loop {
        let l1 = &lists[v1];
        let l2 = &lists[v2];
        let nested = l1.iter().all(|c| l2.contains(c)) || l2.iter().all(|c| l1.contains(c));
        if nested {
            break;
        }
        let c1 = *l1.iter().find(|c| !l2.contains(c)).unwrap();
        let c2 = *l2.iter().find(|c| !l1.contains(c)).unwrap();
        for &v in &split.v_side_vertices {
            for color in lists[v].iter_mut() {
                if *color == c1 {
                    *color = c2;
                } else if *color == c2 {
                    *color = c1;
                }
            }
            lists[v].sort_unstable();
        }
    }
    ListAssignment::new(lists)
}

/// If pinning `x = c` leaves exactly one color of `L(y)` attainable at `y`,
/// returns that color; otherwise (zero or several attainable) `None`.
pub fn forces(
    g: &Graph,
    lists: &ListAssignment,
    x: usize,
    c: u32,
    y: usize,
) -> Result<Option<u32>> {
    if x == y {
        return Err(Error::InvalidParameter(
            "forcing requires two distinct vertices".into(),
        ));
    }
    let mut attainable = Vec::new();
    for &d in lists.list(y) {
        let count = col_pinned(
            g,
            lists,
            &[
                Pin {
                    vertex: x,
                    color: c,
                },
                Pin {
                    vertex: y,
                    color: d,
                },
            ],
        )?;
        if !count.is_zero() {
            attainable.push(d);
        }
    }
    Ok(match attainable.as_slice() {
        [only] => Some(*only),
        _ => None,
    })
}

/// Finds one proper coloring from the lists, or `None` if the count is 0.
/// The result is indexed by vertex.
pub fn find_one_coloring(g: &Graph, lists: &ListAssignment) -> Result<Option<Vec<u32>>> {
    check_cover(g, lists)?;
    let n = g.vertex_count();
    let mut residual: Vec<ColorList> = (0..n)
        .map(|v| ColorList::from_slice(lists.list(v)))
        .collect();
    let mut coloring = vec![0u32; n];
    let mut done = vec![false; n];
    if assign_one(g, &mut residual, &mut coloring, &mut done, n) {
        Ok(Some(coloring))
    } else {
        Ok(None)
    }
}

fn assign_one(
    g: &Graph,
    residual: &mut Vec<ColorList>,
    coloring: &mut Vec<u32>,
    done: &mut Vec<bool>,
    remaining: usize,
) -> bool {
    if remaining == 0 {
        return true;
    }
    let v = (0..g.vertex_count())
        .filter(|&v| !done[v])
        .min_by_key(|&v| residual[v].len())
        .unwrap();
    let choices: ColorList = residual[v].clone();
    done[v] = true;
    for &c in &choices {
        let mut removed: SmallVec<[usize; 8]> = SmallVec::new();
        for w in g.neighbors(v) {
            if !done[w] {
                if let Some(pos) = residual[w].iter().position(|&x| x == c) {
                    residual[w].remove(pos);
                    removed.push(w);
                }
            }
        }
        coloring[v] = c;
        if assign_one(g, residual, coloring, done, remaining - 1) {
            return true;
        }
        for &w in &removed {
            residual[w].push(c);
        }
    }
    done[v] = false;
    false
}

/// True iff `coloring` (indexed by vertex) is proper and draws every color
/// from the vertex's list.
pub fn is_proper_coloring(g: &Graph, lists: &ListAssignment, coloring: &[u32]) -> bool {
    if coloring.len() != g.vertex_count() || lists.vertex_count() != g.vertex_count() {
        return false;
    }
    let in_lists = (0..g.vertex_count()).all(|v| lists.list(v).contains(&coloring[v]));
    in_lists && g.edges().iter().all(|&(u, v)| coloring[u] != coloring[v])
}

fn check_cover(g: &Graph, lists: &ListAssignment) -> Result<()> {
    if lists.vertex_count() != g.vertex_count() {
        return Err(Error::ListCountMismatch {
            expected: g.vertex_count(),
            got: lists.vertex_count(),
        });
    }
    Ok(())
}

struct Engine {
    adj: Vec<u128>,
    lists: Vec<ColorList>,
    memo: HashMap<(u128, Vec<ColorList>), BigUint>,
}

impl Engine {
    fn new(g: &Graph, lists: &ListAssignment) -> Result<Self> {
        check_cover(g, lists)?;
        let n = g.vertex_count();
        if n > ENGINE_VERTEX_LIMIT {
            return Err(Error::InvalidParameter(format!(
                "counting engine supports at most {ENGINE_VERTEX_LIMIT} vertices, got {n}"
            )));
        }
        let mut adj = vec![0u128; n];
        for (u, v) in g.edges() {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        Ok(Engine {
            adj,
            lists: (0..n)
                .map(|v| ColorList::from_slice(lists.list(v)))
                .collect(),
            memo: HashMap::new(),
        })
    }

    fn run(&mut self) -> BigUint {
        let n = self.adj.len();
        if n == 0 {
            return BigUint::one();
        }
        let all = if n == 128 {
            u128::MAX
        } else {
            (1u128 << n) - 1
        };
        self.count(all)
    }

    /// Counts colorings of the vertices in `active` under the current
    /// residual lists.
    fn count(&mut self, mut active: u128) -> BigUint {
        let mut result = BigUint::one();
        // Isolated vertices contribute a plain factor; this also catches
        // empty lists (factor 0) without recursion.
        let mut scan = active;
        while scan != 0 {
            let v = scan.trailing_zeros() as usize;
            scan &= scan - 1;
            if self.adj[v] & active & !(1u128 << v) == 0 {
                if self.lists[v].is_empty() {
                    return BigUint::zero();
                }
                result *= BigUint::from(self.lists[v].len());
                active &= !(1u128 << v);
            }
        }
        while active != 0 {
            let comp = self.component_of(active.trailing_zeros() as usize, active);
            active &= !comp;
            let factor = self.count_component(comp);
            if factor.is_zero() {
                return BigUint::zero();
            }
            result *= factor;
        }
        result
    }

    fn component_of(&self, start: usize, active: u128) -> u128 {
        let mut comp = 1u128 << start;
        let mut frontier = comp;
        while frontier != 0 {
            let mut grow = 0u128;
            let mut scan = frontier;
            while scan != 0 {
                let v = scan.trailing_zeros() as usize;
                scan &= scan - 1;
                grow |= self.adj[v] & active & !comp;
            }
            comp |= grow;
            frontier = grow;
        }
        comp
    }

    fn count_component(&mut self, comp: u128) -> BigUint {
        let key_lists: Vec<ColorList> = {
            let mut ls = Vec::new();
            let mut scan = comp;
            while scan != 0 {
                let v = scan.trailing_zeros() as usize;
                scan &= scan - 1;
                ls.push(self.lists[v].clone());
            }
            ls
        };
        let key = (comp, key_lists);
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        // Branch on the most constrained vertex (fewest colors, then most
        // active neighbors, then lowest id).
        let mut best: Option<(usize, usize, usize)> = None;
        let mut scan = comp;
        while scan != 0 {
            let v = scan.trailing_zeros() as usize;
            scan &= scan - 1;
            let deg = (self.adj[v] & comp).count_ones() as usize;
            let rank = (self.lists[v].len(), usize::MAX - deg, v);
            if best.is_none_or(|(l, d, id)| rank < (l, d, id)) {
                best = Some(rank);
            }
        }
        let (_, inv_deg, v) = best.unwrap();
        let _ = inv_deg;
        let rest = comp & !(1u128 << v);
        let choices = self.lists[v].clone();
        let mut total = BigUint::zero();
        for &c in &choices {
            let mut touched: SmallVec<[usize; 8]> = SmallVec::new();
            let mut nbrs = self.adj[v] & rest;
            while nbrs != 0 {
                let w = nbrs.trailing_zeros() as usize;
                nbrs &= nbrs - 1;
                if let Some(pos) = self.lists[w].iter().position(|&x| x == c) {
                    self.lists[w].remove(pos);
                    touched.push(w);
                }
            }
            total += self.count(rest);
            for &w in &touched {
                let pos = self.lists[w]
                    .iter()
                    .position(|&x| x > c)
                    .unwrap_or(self.lists[w].len());
                self.lists[w].insert(pos, c);
            }
        }
        self.memo.insert(key, total.clone());
        total
    }
}
