use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An undirected simple graph on vertices `0..vertex_count`.
///
/// No self-loops, no multi-edges. Adjacency is kept in sorted sets so that
/// every traversal of the graph is deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<BTreeSet<usize>>,
}

/// Structural tag for a graph that is already a core (minimum degree ≥ 2, or
/// a single vertex). Used by the 2-list classifiers.
///
/// `Theta(a, b, c)` is stored with `a ≤ b ≤ c`; the `(2,2,2)` case is
/// normalized to `K23`. `OddCyclePresent` covers every non-bipartite input,
/// so the `Theta` and `Other` tags only ever describe bipartite graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoreShape {
    SingleVertex,
    EvenCycle(usize),
    OddCyclePresent,
    K23,
    Theta(usize, usize, usize),
    Other,
}

/// Trace of the iterated degree-1 deletion that produces a core.
///
/// `deleted` lists `(vertex, neighbor)` pairs in deletion order, where
/// `neighbor` is the unique vertex the deleted vertex was attached to at the
/// time of its removal (both in the original numbering). Replaying the list
/// in reverse reconstructs the original graph from the core.
#[derive(Debug, Clone)]
pub struct CoreReduction {
    /// The core, relabeled to dense ids.
    pub core: Graph,
    /// Original ids of the core's vertices, ascending; position = new id.
    pub core_vertices: Vec<usize>,
    /// Deleted degree-1 vertices with their attachment neighbors.
    pub deleted: Vec<(usize, usize)>,
}

/// The two components obtained by cutting a bridge, each relabeled densely.
#[derive(Debug, Clone)]
pub struct BridgeSplit {
    pub u_side: Graph,
    /// Original ids of `u_side`'s vertices, ascending; position = new id.
    pub u_side_vertices: Vec<usize>,
    /// Index of the bridge endpoint `u` within `u_side`.
    pub u_index: usize,
    pub v_side: Graph,
    pub v_side_vertices: Vec<usize>,
    pub v_index: usize,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphJson {
    vertices: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Creates an edgeless graph on `vertex_count` vertices.
    pub fn new(vertex_count: usize) -> Self {
        Graph {
            adj: vec![BTreeSet::new(); vertex_count],
        }
    }

    /// Builds a graph from an edge list; duplicate edges are merged.
    pub fn from_edges(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::new(vertex_count);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|s| s.len()).sum::<usize>() / 2
    }

    /// Appends an isolated vertex and returns its id.
    pub fn add_vertex(&mut self) -> usize {
        self.adj.push(BTreeSet::new());
        self.adj.len() - 1
    }

    /// Inserts the edge `{u, v}`. Inserting an existing edge is a no-op.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.adj.len();
        for w in [u, v] {
            if w >= n {
                return Err(Error::VertexOutOfRange {
                    vertex: w,
                    vertex_count: n,
                });
            }
        }
        if u == v {
            return Err(Error::InvalidParameter(format!(
                "self-loop at vertex {u} is not allowed"
            )));
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(())
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj.get(u).is_some_and(|s| s.contains(&v))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().copied()
    }

    /// All edges as `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.adj.len() {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.adj.len() {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                vertex_count: self.adj.len(),
            });
        }
        Ok(())
    }

    /// Connected components as sorted vertex lists, ordered by smallest member.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let n = self.adj.len();
        let mut seen = vec![false; n];
        let mut components = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut stack = vec![start];
            let mut comp = Vec::new();
            seen[start] = true;
            while let Some(u) = stack.pop() {
                comp.push(u);
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            components.push(comp);
        }
        components
    }

    /// True for graphs with at most one component (the empty graph counts).
    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// Two-colors the vertices by BFS layering; `None` iff an odd cycle exists.
    ///
    /// Returns the two sides as sorted vertex lists (side of vertex 0 first
    /// within each component's traversal).
    pub fn bipartition(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        let n = self.adj.len();
        let mut color = vec![u8::MAX; n];
        for start in 0..n {
            if color[start] != u8::MAX {
                continue;
            }
            color[start] = 0;
            let mut queue = std::collections::VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if color[w] == u8::MAX {
                        color[w] = 1 - color[u];
                        queue.push_back(w);
                    } else if color[w] == color[u] {
                        return None;
                    }
                }
            }
        }
        let side0 = (0..n).filter(|&v| color[v] == 0).collect();
        let side1 = (0..n).filter(|&v| color[v] == 1).collect();
        Some((side0, side1))
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// The subgraph induced by `vertices` (deduplicated, sorted), relabeled to
    /// dense ids. Returns the graph and the new-id → original-id map.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<(Graph, Vec<usize>)> {
        let mut keep: Vec<usize> = vertices.to_vec();
        keep.sort_unstable();
        keep.dedup();
        for &v in &keep {
            self.check_vertex(v)?;
        }
        let index_of = |v: usize| keep.binary_search(&v).unwrap();
        let mut g = Graph::new(keep.len());
        for (new_u, &u) in keep.iter().enumerate() {
            for &w in &self.adj[u] {
                if w > u && keep.binary_search(&w).is_ok() {
                    g.add_edge(new_u, index_of(w))?;
                }
            }
        }
        Ok((g, keep))
    }

    /// True iff deleting `{u, v}` disconnects `u` from `v`.
    pub fn is_bridge(&self, u: usize, v: usize) -> Result<bool> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if !self.has_edge(u, v) {
            return Err(Error::InvalidParameter(format!(
                "edge ({u}, {v}) is not in the graph"
            )));
        }
        // BFS from u that never crosses {u, v}.
        let mut seen = vec![false; self.adj.len()];
        seen[u] = true;
        let mut stack = vec![u];
        while let Some(a) = stack.pop() {
            for &b in &self.adj[a] {
                if (a, b) == (u, v) || (a, b) == (v, u) {
                    continue;
                }
                if !seen[b] {
                    if b == v {
                        return Ok(false);
                    }
                    seen[b] = true;
                    stack.push(b);
                }
            }
        }
        Ok(true)
    }

    /// All bridge edges, sorted lexicographically as `(u, v)` with `u < v`.
    pub fn bridges(&self) -> Vec<(usize, usize)> {
        self.edges()
            .into_iter()
            .filter(|&(u, v)| self.is_bridge(u, v).unwrap_or(false))
            .collect()
    }

    /// Cuts the bridge `{u, v}` and returns the two sides.
    pub fn split_at_bridge(&self, u: usize, v: usize) -> Result<BridgeSplit> {
        if !self.is_bridge(u, v)? {
            return Err(Error::NotABridge { u, v });
        }
        let mut cut = self.clone();
        cut.adj[u].remove(&v);
        cut.adj[v].remove(&u);
        let components = cut.connected_components();
        let u_comp = components.iter().find(|c| c.contains(&u)).unwrap();
        let v_comp = components.iter().find(|c| c.contains(&v)).unwrap();
        let (u_side, u_side_vertices) = cut.induced_subgraph(u_comp)?;
        let (v_side, v_side_vertices) = cut.induced_subgraph(v_comp)?;
        Ok(BridgeSplit {
            u_index: u_side_vertices.binary_search(&u).unwrap(),
            v_index: v_side_vertices.binary_search(&v).unwrap(),
            u_side,
            u_side_vertices,
            v_side,
            v_side_vertices,
        })
    }

    /// Iterated degree-1 deletion, applied to any graph (components are
    /// reduced independently). Lowest-id degree-1 vertex goes first, so the
    /// trace is deterministic.
    pub fn core_reduction(&self) -> CoreReduction {
        let n = self.adj.len();
        let mut adj = self.adj.clone();
        let mut alive = vec![true; n];
        let mut deleted = Vec::new();
        loop {
            let leaf = (0..n).find(|&v| alive[v] && adj[v].len() == 1);
            let Some(v) = leaf else { break };
            let nb = *adj[v].iter().next().unwrap();
            adj[nb].remove(&v);
            adj[v].clear();
            alive[v] = false;
            deleted.push((v, nb));
        }
        let core_vertices: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
        let index_of = |v: usize| core_vertices.binary_search(&v).unwrap();
        let mut core = Graph::new(core_vertices.len());
        for &u in &core_vertices {
            for &w in &adj[u] {
                if w > u {
                    core.add_edge(index_of(u), index_of(w)).unwrap();
                }
            }
        }
        CoreReduction {
            core,
            core_vertices,
            deleted,
        }
    }

    /// The core of a connected graph: what remains after repeatedly deleting
    /// vertices of degree 1. The result has minimum degree ≥ 2 or is a single
    /// vertex, and the operation is idempotent.
    pub fn core(&self) -> Result<Graph> {
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(self.core_reduction().core)
    }

    /// Walks from `hub` along the chain starting at `first`, through
    /// degree-2 vertices, until a vertex of degree ≠ 2 is reached.
    /// Returns (endpoint, length in edges).
    fn walk_chain(&self, hub: usize, first: usize) -> (usize, usize) {
        let mut prev = hub;
        let mut cur = first;
        let mut len = 1;
        while self.degree(cur) == 2 {
            let next = self.neighbors(cur).find(|&w| w != prev).unwrap();
            prev = cur;
            cur = next;
            len += 1;
        }
        (cur, len)
    }

    /// Classifies a core's structure. Intended for graphs that already are
    /// cores (minimum degree ≥ 2 or a single vertex); other inputs fall
    /// through to `Other`.
    pub fn classify_core_shape(&self) -> CoreShape {
        let n = self.adj.len();
        if n == 1 {
            return CoreShape::SingleVertex;
        }
        if n >= 3 && self.is_connected() && (0..n).all(|v| self.degree(v) == 2) {
            if n.is_multiple_of(2) {
                return CoreShape::EvenCycle(n);
            }
            return CoreShape::OddCyclePresent;
        }
        if !self.is_bipartite() {
            return CoreShape::OddCyclePresent;
        }
        // θ recognition: exactly two degree-3 vertices, everything else
        // degree 2, and all three chains out of one hub end at the other.
        let hubs: Vec<usize> = (0..n).filter(|&v| self.degree(v) == 3).collect();
        if hubs.len() == 2
            && (0..n).all(|v| self.degree(v) == 2 || hubs.contains(&v))
            && self.is_connected()
        {
            let (h0, h1) = (hubs[0], hubs[1]);
            let mut lengths = Vec::new();
            for first in self.neighbors(h0) {
                let (end, len) = self.walk_chain(h0, first);
                if end != h1 {
                    return CoreShape::Other;
                }
                lengths.push(len);
            }
            lengths.sort_unstable();
            let (a, b, c) = (lengths[0], lengths[1], lengths[2]);
            if (a, b, c) == (2, 2, 2) {
                return CoreShape::K23;
            }
            return CoreShape::Theta(a, b, c);
        }
        CoreShape::Other
    }

    /// Seeks a simplicial elimination ordering: an ordering `v_1..v_k` in
    /// which each vertex's *earlier* neighbors form a clique. Returns `None`
    /// iff the graph is not chordal.
    pub fn simplicial_elimination_order(&self) -> Option<Vec<usize>> {
        let n = self.adj.len();
        let mut adj = self.adj.clone();
        let mut alive = vec![true; n];
        let mut removal = Vec::with_capacity(n);
        for _ in 0..n {
            let next = (0..n).find(|&v| {
                alive[v] && {
                    let nbrs: Vec<usize> = adj[v].iter().copied().collect();
                    nbrs.iter()
                        .enumerate()
                        .all(|(i, &a)| nbrs[i + 1..].iter().all(|&b| adj[a].contains(&b)))
                }
            })?;
            for &w in &adj[next].clone() {
                adj[w].remove(&next);
            }
            adj[next].clear();
            alive[next] = false;
            removal.push(next);
        }
        removal.reverse();
        Some(removal)
    }

    pub fn is_chordal(&self) -> bool {
        self.simplicial_elimination_order().is_some()
    }

    /// Cartesian product: vertices are pairs `(i, j)`, numbered
    /// `i * other.vertex_count() + j`; `(i, j) ~ (i', j')` iff the pairs agree
    /// in one coordinate and are adjacent in the other.
    pub fn cartesian_product(&self, other: &Graph) -> Graph {
        let (ng, nh) = (self.vertex_count(), other.vertex_count());
        let mut g = Graph::new(ng * nh);
        for i in 0..ng {
            for (j, j2) in other.edges() {
                g.add_edge(i * nh + j, i * nh + j2).unwrap();
            }
        }
        for (i, i2) in self.edges() {
            for j in 0..nh {
                g.add_edge(i * nh + j, i2 * nh + j).unwrap();
            }
        }
        g
    }

    /// The line graph: one vertex per edge (edges taken in sorted order),
    /// adjacent iff the underlying edges share an endpoint.
    pub fn line_graph(&self) -> Graph {
        let edges = self.edges();
        let mut g = Graph::new(edges.len());
        for (i, &(a, b)) in edges.iter().enumerate() {
            for (j, &(c, d)) in edges.iter().enumerate().skip(i + 1) {
                if a == c || a == d || b == c || b == d {
                    g.add_edge(i, j).unwrap();
                }
            }
        }
        g
    }

    /// A numbering-independent edge code: the minimum, over all vertex
    /// permutations, of the edge-set bitmask. Only practical for tiny graphs;
    /// guarded at 9 vertices.
    pub fn canonical_edge_code(&self) -> Result<u64> {
        let n = self.adj.len();
        if n > 9 {
            return Err(Error::VerificationTooLarge(format!(
                "canonical edge code supports at most 9 vertices, got {n}"
            )));
        }
        let pair_bit = |u: usize, v: usize| {
            let (a, b) = if u < v { (u, v) } else { (v, u) };
            // Position of (a, b) in lexicographic pair order.
            let offset: usize = (0..a).map(|r| n - 1 - r).sum();
            offset + (b - a - 1)
        };
        let edges = self.edges();
        let mut best = u64::MAX;
        let mut perm: Vec<usize> = (0..n).collect();
        permute(&mut perm, 0, &mut |p| {
            let mut mask = 0u64;
            for &(u, v) in &edges {
                mask |= 1 << pair_bit(p[u], p[v]);
            }
            best = best.min(mask);
        });
        Ok(best)
    }

    /// Serializes to `{"vertices": N, "edges": [[u, v], ...]}` with edges
    /// sorted lexicographically, so output is byte-stable.
    pub fn to_json_string(&self) -> String {
        let doc = GraphJson {
            vertices: self.vertex_count(),
            edges: self.edges(),
        };
        serde_json::to_string(&doc).expect("graph serialization cannot fail")
    }

    /// Parses the JSON produced by [`Graph::to_json_string`].
    pub fn from_json_str(s: &str) -> Result<Graph> {
        let doc: GraphJson = serde_json::from_str(s)?;
        Graph::from_edges(doc.vertices, &doc.edges)
    }
}

fn permute(items: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, visit);
        items.swap(k, i);
    }
}

/// Exact isomorphism test by canonical-code comparison; at most 9 vertices.
pub fn is_isomorphic_small(a: &Graph, b: &Graph) -> Result<bool> {
    if a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() {
        return Ok(false);
    }
    Ok(a.canonical_edge_code()? == b.canonical_edge_code()?)
}

/// A single vertex and no edges.
pub fn build_vertex() -> Graph {
    Graph::new(1)
}

/// The path with `k` edges (`k + 1` vertices, numbered along the path).
pub fn build_path(k: usize) -> Result<Graph> {
    if k == 0 {
        return Err(Error::InvalidParameter(
            "path length must be at least 1; a lone vertex is build_vertex()".into(),
        ));
    }
    let edges: Vec<_> = (0..k).map(|i| (i, i + 1)).collect();
    Graph::from_edges(k + 1, &edges)
}

/// The cycle on `k ≥ 3` vertices, numbered around the cycle.
pub fn build_cycle(k: usize) -> Result<Graph> {
    if k < 3 {
        return Err(Error::InvalidParameter(format!(
            "cycle length must be at least 3, got {k}"
        )));
    }
    let edges: Vec<_> = (0..k).map(|i| (i, (i + 1) % k)).collect();
    Graph::from_edges(k, &edges)
}

/// The complete graph on `k ≥ 1` vertices.
pub fn build_complete(k: usize) -> Result<Graph> {
    if k == 0 {
        return Err(Error::InvalidParameter("complete graph needs k ≥ 1".into()));
    }
    let mut g = Graph::new(k);
    for u in 0..k {
        for v in u + 1..k {
            g.add_edge(u, v)?;
        }
    }
    Ok(g)
}

/// Complete bipartite graph; left side `0..m`, right side `m..m+n`.
pub fn build_complete_bipartite(m: usize, n: usize) -> Result<Graph> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidParameter(
            "complete bipartite parts must be nonempty".into(),
        ));
    }
    let mut g = Graph::new(m + n);
    for u in 0..m {
        for v in m..m + n {
            g.add_edge(u, v)?;
        }
    }
    Ok(g)
}

/// Complete tripartite graph; parts `0..a`, `a..a+b`, `a+b..a+b+c`.
pub fn build_complete_tripartite(a: usize, b: usize, c: usize) -> Result<Graph> {
    if a == 0 || b == 0 || c == 0 {
        return Err(Error::InvalidParameter(
            "complete tripartite parts must be nonempty".into(),
        ));
    }
    let bounds = [(0, a), (a, a + b), (a + b, a + b + c)];
    let mut g = Graph::new(a + b + c);
    for (i, &(s1, e1)) in bounds.iter().enumerate() {
        for &(s2, e2) in &bounds[i + 1..] {
            for u in s1..e1 {
                for v in s2..e2 {
                    g.add_edge(u, v)?;
                }
            }
        }
    }
    Ok(g)
}

/// θ graph: two hubs (vertices 0 and 1) joined by three internally disjoint
/// paths of lengths `a ≤ b ≤ c` edges (sorted internally). Interior vertices
/// are numbered `2, 3, ...` path by path, each path walking hub 0 → hub 1.
/// At most one length may be 1, otherwise a multi-edge would arise.
pub fn build_theta(a: usize, b: usize, c: usize) -> Result<Graph> {
    let mut lens = [a, b, c];
    lens.sort_unstable();
    if lens[0] == 0 {
        return Err(Error::InvalidParameter(
            "θ path lengths must be at least 1".into(),
        ));
    }
    if lens[1] == 1 {
        return Err(Error::InvalidParameter(
            "at most one θ path may have length 1 (no multi-edges)".into(),
        ));
    }
    let vertex_count = 2 + lens.iter().map(|&l| l - 1).sum::<usize>();
    let mut g = Graph::new(vertex_count);
    let mut next = 2;
    for &len in &lens {
        let mut prev = 0;
        for _ in 0..len - 1 {
            g.add_edge(prev, next)?;
            prev = next;
            next += 1;
        }
        g.add_edge(prev, 1)?;
    }
    Ok(g)
}
