//! Decision procedures quantifying over all n-list assignments of a graph:
//! exact minimum coloring counts, uniform-minimality, colorability from
//! every assignment, and small-palette probes.
//!
//! All searches walk one representative per color-renaming class (see the
//! cursor type), charge every visited node against a budget, and fail
//! honestly with a resource error instead of truncating.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;
use smallvec::SmallVec;

use crate::assignment::ListAssignment;
use crate::canon::{self, Budget, SmallList, VisitStep};
use crate::count::col_uniform;
use crate::error::{Error, Result};
use crate::fastcount;
use crate::graph::{CoreReduction, Graph};

pub use crate::canon::CanonicalAssignmentCursor;

/// Knobs shared by every search entry point.
#[derive(Debug, Clone)]
pub struct SearchConfig {
    /// Maximum number of enumeration nodes to visit before giving up with a
    /// resource error.
    pub budget: u64,
    /// Worker threads. Completed searches return identical results for any
    /// value; only the point at which an exhausted budget is detected may
    /// vary.
    pub threads: usize,
    /// Disables the lower-bound and bridge-nesting rules (used to validate
    /// that pruning never changes results).
    pub disable_pruning: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            budget: 100_000_000,
            threads: 1,
            disable_pruning: false,
        }
    }
}

/// Result of an exact minimization over all n-list assignments.
#[derive(Debug, Clone)]
pub struct MinColorings {
    /// The minimum of the coloring count over every assignment class.
    pub min_count: BigUint,
    /// The least representative (in enumeration order) achieving the
    /// minimum.
    pub witness: ListAssignment,
    /// Enumeration nodes charged against the budget.
    pub nodes_visited: u64,
}

/// Verdict on whether uniform lists minimize the coloring count.
#[derive(Debug, Clone)]
pub struct MonophilicVerdict {
    /// True iff no n-list assignment admits fewer colorings than the
    /// uniform one.
    pub monophilic: bool,
    /// True iff the uniform count is 0, which makes the verdict trivial.
    pub vacuous: bool,
    pub uniform_count: BigUint,
    pub min_count: BigUint,
    /// An assignment achieving `min_count` (always present; when the graph
    /// is disconnected it is stitched from per-component minimizers).
    pub witness: Option<ListAssignment>,
    pub nodes_visited: u64,
}

/// Verdict on colorability from every n-list assignment.
#[derive(Debug, Clone)]
pub struct ChoosableVerdict {
    pub choosable: bool,
    /// When not choosable, an assignment with no proper coloring.
    pub zero_witness: Option<ListAssignment>,
    pub nodes_visited: u64,
}

/// One palette size in a probe table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbeRow {
    pub n: u32,
    /// Whether the graph has a proper coloring from the palette `{1..n}`;
    /// `None` when undecided within the budget.
    pub colorable: Option<bool>,
    /// Whether uniform lists minimize at this size; `None` when undecided
    /// within the budget.
    pub monophilic: Option<bool>,
}

/// Per-size verdicts for `n = 1..=n_max`, with the two derived summary
/// values the table supports.
#[derive(Debug, Clone)]
pub struct ProbeReport {
    pub rows: Vec<ProbeRow>,
    /// Least n that is both colorable and uniform-minimal, when every row
    /// up to it was decided; `None` if undecidable from these rows.
    pub first_both: Option<u32>,
    /// Least n from which every probed row up to `certificate_bound` is
    /// both colorable and uniform-minimal. Only a certificate up to the
    /// probed bound — larger sizes are not examined.
    pub tail_candidate: Option<u32>,
    /// The largest size probed (`n_max`).
    pub certificate_bound: u32,
}

/// One representative per color-renaming class of n-list assignments,
/// lazily and in lexicographic order.
pub fn enumerate_assignments(
    g: &Graph,
    n: u32,
    config: &SearchConfig,
) -> Result<CanonicalAssignmentCursor> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "list size must be at least 1".into(),
        ));
    }
    enumerate_assignments_with_sizes(g, &vec![n as usize; g.vertex_count()], config)
}

/// As [`enumerate_assignments`] with an individual list size per vertex.
pub fn enumerate_assignments_with_sizes(
    g: &Graph,
    sizes: &[usize],
    config: &SearchConfig,
) -> Result<CanonicalAssignmentCursor> {
    if sizes.len() != g.vertex_count() {
        return Err(Error::ListCountMismatch {
            expected: g.vertex_count(),
            got: sizes.len(),
        });
    }
    CanonicalAssignmentCursor::new(sizes.to_vec(), config.budget)
}

/// Exact minimum of the coloring count over every n-list assignment class
/// of `g` (searched as given, without structural reductions).
pub fn min_colorings(g: &Graph, n: u32, config: &SearchConfig) -> Result<MinColorings> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "list size must be at least 1".into(),
        ));
    }
    let sizes = vec![n as usize; g.vertex_count()];
    let problem = Problem::new(g, &sizes, !config.disable_pruning)?;
    let budget = Budget::new(config.budget);
    let (min, witness) = problem.run_minimize(&budget, config.threads)?;
    Ok(MinColorings {
        min_count: BigUint::from(min),
        witness: canon::to_assignment(&witness),
        nodes_visited: budget.visited(),
    })
}

/// Decides whether uniform lists minimize the coloring count, reducing to
/// connected components and their 1-degree-peeled cores before searching.
pub fn is_monophilic(g: &Graph, n: u32, config: &SearchConfig) -> Result<MonophilicVerdict> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "list size must be at least 1".into(),
        ));
    }
    if n == 1 {
        // Every graph: with an edge, the uniform count is 0 and the verdict
        // is trivial; without edges every size-1 assignment counts exactly 1.
        let uniform = col_uniform(g, 1)?;
        return Ok(MonophilicVerdict {
            monophilic: true,
            vacuous: uniform.is_zero(),
            uniform_count: uniform.clone(),
            min_count: uniform,
            witness: Some(ListAssignment::uniform(g.vertex_count(), 1)),
            nodes_visited: 0,
        });
    }
    let budget = Budget::new(config.budget);
    let mut total_uniform = BigUint::one();
    let mut total_min = BigUint::one();
    let mut witness_lists: Vec<Vec<u32>> = vec![Vec::new(); g.vertex_count()];
    for comp in g.connected_components() {
        let (sub, map) = g.induced_subgraph(&comp)?;
        let part = component_monophilic(&sub, n, config, &budget)?;
        total_uniform *= &part.uniform;
        total_min *= &part.min;
        for (si, &orig) in map.iter().enumerate() {
            witness_lists[orig] = part.witness[si].clone();
        }
    }
    let monophilic = total_min == total_uniform;
    Ok(MonophilicVerdict {
        monophilic,
        vacuous: total_uniform.is_zero(),
        uniform_count: total_uniform,
        min_count: total_min,
        witness: Some(ListAssignment::new(witness_lists)?),
        nodes_visited: budget.visited(),
    })
}

/// Decides whether every n-list assignment admits a proper coloring,
/// reducing to components and cores before hunting for a zero-count
/// assignment.
pub fn is_choosable(g: &Graph, n: u32, config: &SearchConfig) -> Result<ChoosableVerdict> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "list size must be at least 1".into(),
        ));
    }
    if n == 1 {
        // A single shared color fails on any edge and succeeds otherwise.
        return Ok(if g.edge_count() == 0 {
            ChoosableVerdict {
                choosable: true,
                zero_witness: None,
                nodes_visited: 0,
            }
        } else {
            ChoosableVerdict {
                choosable: false,
                zero_witness: Some(ListAssignment::uniform(g.vertex_count(), 1)),
                nodes_visited: 0,
            }
        });
    }
    let budget = Budget::new(config.budget);
    for comp in g.connected_components() {
        let (sub, map) = g.induced_subgraph(&comp)?;
        let red = sub.core_reduction();
        if let Some(core_witness) = component_zero_hunt(&red.core, n, config, &budget)? {
            let sub_lists = lift_lists(&red, &core_witness, sub.vertex_count());
            let mut lists: Vec<Vec<u32>> = vec![(1..=n).collect(); g.vertex_count()];
            for (si, &orig) in map.iter().enumerate() {
                lists[orig] = sub_lists[si].clone();
            }
            return Ok(ChoosableVerdict {
                choosable: false,
                zero_witness: Some(ListAssignment::new(lists)?),
                nodes_visited: budget.visited(),
            });
        }
    }
    Ok(ChoosableVerdict {
        choosable: true,
        zero_witness: None,
        nodes_visited: budget.visited(),
    })
}

/// Per-size colorability and uniform-minimality for `n = 1..=n_max`.
/// Undecided entries are reported as unknown, never guessed.
pub fn monophilic_number_probe(
    g: &Graph,
    n_max: u32,
    config: &SearchConfig,
) -> Result<ProbeReport> {
    if n_max == 0 {
        return Err(Error::InvalidParameter(
            "the probe needs at least one palette size".into(),
        ));
    }
    let mut rows = Vec::with_capacity(n_max as usize);
    for n in 1..=n_max {
        let colorable = Some(!col_uniform(g, n)?.is_zero());
        let monophilic = match is_monophilic(g, n, config) {
            Ok(v) => Some(v.monophilic),
            Err(Error::BudgetExceeded { .. }) | Err(Error::VerificationTooLarge(_)) => None,
            Err(e) => return Err(e),
        };
        rows.push(ProbeRow {
            n,
            colorable,
            monophilic,
        });
    }
    let mut first_both = None;
    for row in &rows {
        match (row.colorable, row.monophilic) {
            (Some(true), Some(true)) => {
                first_both = Some(row.n);
                break;
            }
            (Some(_), Some(_)) => {}
            _ => break,
        }
    }
    let mut tail_candidate = None;
    for row in rows.iter().rev() {
        if row.colorable == Some(true) && row.monophilic == Some(true) {
            tail_candidate = Some(row.n);
        } else {
            break;
        }
    }
    Ok(ProbeReport {
        rows,
        first_both,
        tail_candidate,
        certificate_bound: n_max,
    })
}

struct ComponentReport {
    uniform: BigUint,
    min: BigUint,
    witness: Vec<Vec<u32>>,
}

/// Decides one connected component by peeling its degree-1 vertices: each
/// peel scales both the uniform and the minimum count by exactly `n - 1`
/// (give the peeled vertex its neighbor's list), so the verdict is decided
/// on the core.
fn component_monophilic(
    sub: &Graph,
    n: u32,
    config: &SearchConfig,
    budget: &Budget,
) -> Result<ComponentReport> {
    let red = sub.core_reduction();
    let factor = BigUint::from(n - 1).pow(red.deleted.len() as u32);
    let uniform_core = col_uniform(&red.core, n)?;
    if uniform_core.is_zero() {
        // Not colorable from the uniform lists, so the minimum is 0 too and
        // the uniform assignment itself achieves it.
        return Ok(ComponentReport {
            uniform: BigUint::zero(),
            min: BigUint::zero(),
            witness: vec![(1..=n).collect(); sub.vertex_count()],
        });
    }
    let core_v = red.core.vertex_count();
    let (min_core, witness_core) = if core_v <= 8 {
        let sizes = vec![n as usize; core_v];
        let problem = Problem::new(&red.core, &sizes, !config.disable_pruning)?;
        let (m, w) = problem.run_minimize(budget, config.threads)?;
        (BigUint::from(m), to_public_lists(&w))
    } else if let Some(zero) = subgraph_zero_probe(&red.core, n, config, budget)? {
        // A zero assignment on an induced subgraph extends to the whole
        // core (fill the rest with full palettes), so the minimum is 0.
        (BigUint::zero(), zero)
    } else {
        let sizes = vec![n as usize; core_v];
        let problem = Problem::new(&red.core, &sizes, !config.disable_pruning)?;
        let (m, w) = problem.run_minimize(budget, config.threads)?;
        (BigUint::from(m), to_public_lists(&w))
    };
    let witness = lift_lists(&red, &witness_core, sub.vertex_count());
    Ok(ComponentReport {
        uniform: uniform_core * &factor,
        min: min_core * factor,
        witness,
    })
}

/// Exhaustive zero-count hunt on a (core) graph; `None` means no n-list
/// assignment of the core has count 0.
fn component_zero_hunt(
    core: &Graph,
    n: u32,
    config: &SearchConfig,
    budget: &Budget,
) -> Result<Option<Vec<Vec<u32>>>> {
    if core.vertex_count() <= 1 {
        return Ok(None);
    }
    if core.vertex_count() > 8 {
        if let Some(zero) = subgraph_zero_probe(core, n, config, budget)? {
            return Ok(Some(zero));
        }
    }
    let sizes = vec![n as usize; core.vertex_count()];
    let problem = Problem::new(core, &sizes, !config.disable_pruning)?;
    Ok(problem
        .run_find_zero(budget, config.threads)?
        .map(|w| to_public_lists(&w)))
}

/// Collects every n-list assignment class with coloring count 0, in
/// enumeration order. Exact: a subtree is skipped only when its prefix is
/// colorable and every completion keeps at least one free color per
/// remaining vertex.
pub(crate) fn collect_zero_classes(
    g: &Graph,
    n: u32,
    budget_limit: u64,
) -> Result<Vec<ListAssignment>> {
    let sizes = vec![n as usize; g.vertex_count()];
    let problem = Problem::new(g, &sizes, true)?;
    let budget = Budget::new(budget_limit);
    let mut out = Vec::new();
    if g.vertex_count() == 0 {
        return Ok(out);
    }
    canon::enumerate(&sizes, &budget, &mut |lists, _| {
        if lists.len() == problem.vertex_count {
            if problem.full_count(lists, 0) == 0 {
                out.push(canon::to_assignment(lists));
            }
            return Ok(VisitStep::Descend);
        }
        if problem.rf[lists.len()] >= 1 && problem.prefix_count(lists, 0) > 0 {
            return Ok(VisitStep::Skip);
        }
        Ok(VisitStep::Descend)
    })?;
    Ok(out)
}

/// Looks for a small connected induced subgraph that already has a
/// zero-count n-list assignment; such an assignment padded with full
/// palettes is a zero witness for the whole graph. Subgraphs are scanned by
/// ascending size, then ascending vertex set.
fn subgraph_zero_probe(
    g: &Graph,
    n: u32,
    config: &SearchConfig,
    budget: &Budget,
) -> Result<Option<Vec<Vec<u32>>>> {
    let v = g.vertex_count();
    for k in 3..=7.min(v) {
        let mut subset: Vec<usize> = (0..k).collect();
        loop {
            budget.tick()?;
            let (sub, map) = g.induced_subgraph(&subset)?;
            if sub.is_connected() {
                let sizes = vec![n as usize; k];
                let problem = Problem::new(&sub, &sizes, !config.disable_pruning)?;
                if let Some(w) = problem.run_find_zero(budget, 1)? {
                    let mut lists: Vec<Vec<u32>> = vec![(1..=n).collect(); v];
                    for (i, &orig) in map.iter().enumerate() {
                        lists[orig] = w[i].iter().map(|&c| c as u32 + 1).collect();
                    }
                    return Ok(Some(lists));
                }
            }
            if !next_combination(&mut subset, v) {
                break;
            }
        }
    }
    Ok(None)
}

/// Advances `subset` to the next size-|subset| ascending combination of
/// `0..v`; false when exhausted.
fn next_combination(subset: &mut [usize], v: usize) -> bool {
    let k = subset.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if subset[i] < v - (k - i) {
            subset[i] += 1;
            for j in i + 1..k {
                subset[j] = subset[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn to_public_lists(lists: &[SmallList]) -> Vec<Vec<u32>> {
    lists
        .iter()
        .map(|l| l.iter().map(|&c| c as u32 + 1).collect())
        .collect()
}

/// Re-attaches peeled degree-1 vertices (in reverse peel order), giving
/// each the list its attachment neighbor ended up with. This scales the
/// coloring count by exactly `size - 1` per vertex and keeps zero counts at
/// zero.
fn lift_lists(
    red: &CoreReduction,
    core_witness: &[Vec<u32>],
    sub_vertices: usize,
) -> Vec<Vec<u32>> {
    let mut lists: Vec<Option<Vec<u32>>> = vec![None; sub_vertices];
    for (i, &orig) in red.core_vertices.iter().enumerate() {
        lists[orig] = Some(core_witness[i].clone());
    }
    for &(gone, attach) in red.deleted.iter().rev() {
        let inherited = lists[attach]
            .clone()
            .expect("attachment assigned before the vertex it carried");
        lists[gone] = Some(inherited);
    }
    lists
        .into_iter()
        .map(|l| l.expect("every vertex is in the core or was peeled"))
        .collect()
}

/// A prepared search instance: adjacency and bridge structure, per-depth
/// residual lower-bound factors, and the pruning switch.
struct Problem {
    vertex_count: usize,
    sizes: Vec<usize>,
    adj: Vec<u64>,
    /// For each vertex j, the earlier endpoints i < j of bridges (i, j).
    bridges_by_later: Vec<Vec<usize>>,
    /// `rf[d]`: every completion of a depth-d prefix has at least
    /// `prefix_count * rf[d]` colorings (greedy extension bound).
    rf: Vec<u128>,
    prune: bool,
}

impl Problem {
    fn new(g: &Graph, sizes: &[usize], prune: bool) -> Result<Self> {
        if sizes.len() != g.vertex_count() {
            return Err(Error::ListCountMismatch {
                expected: g.vertex_count(),
                got: sizes.len(),
            });
        }
        if g.vertex_count() > 64 {
            return Err(Error::VerificationTooLarge(
                "assignment search supports at most 64 vertices".into(),
            ));
        }
        if sizes.iter().sum::<usize>() > 64 {
            return Err(Error::VerificationTooLarge(
                "assignment search supports at most 64 total list entries".into(),
            ));
        }
        let v = g.vertex_count();
        let mut adj = vec![0u64; v];
        for (a, b) in g.edges() {
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
        }
        let mut bridges_by_later = vec![Vec::new(); v];
        for (a, b) in g.bridges() {
            bridges_by_later[b].push(a);
        }
        let rf = compute_rf(&adj, sizes);
        Ok(Problem {
            vertex_count: v,
            sizes: sizes.to_vec(),
            adj,
            bridges_by_later,
            rf,
            prune,
        })
    }

    fn list_masks(lists: &[SmallList]) -> SmallVec<[u64; 16]> {
        lists
            .iter()
            .map(|l| l.iter().fold(0u64, |m, &c| m | (1 << c)))
            .collect()
    }

    fn prefix_count(&self, lists: &[SmallList], cap: u128) -> u128 {
        let d = lists.len();
        let pm = mask_below(d);
        let adj_prefix: SmallVec<[u64; 16]> = (0..d).map(|w| self.adj[w] & pm).collect();
        fastcount::count_colorings(&adj_prefix, &Self::list_masks(lists), cap)
    }

    fn full_count(&self, lists: &[SmallList], cap: u128) -> u128 {
        fastcount::count_colorings(&self.adj, &Self::list_masks(lists), cap)
    }

    /// Bridge rule: at every bridge the two endpoint lists may be assumed
    /// equal (color-swap surgery across the bridge never increases the
    /// count and never destroys a zero), so candidates violating that are
    /// skipped.
    fn bridge_ok(&self, lists: &[SmallList]) -> bool {
        let j = lists.len() - 1;
        self.bridges_by_later[j]
            .iter()
            .all(|&i| lists[i] == lists[j])
    }

    fn prefix_admitted(&self, lists: &[SmallList]) -> bool {
        if !self.prune {
            return true;
        }
        (1..=lists.len()).all(|d| self.bridge_ok(&lists[..d]))
    }

    fn visit_min(
        &self,
        lists: &[SmallList],
        best: &mut u128,
        witness: &mut Option<Vec<SmallList>>,
    ) -> Result<VisitStep> {
        if self.prune && !self.bridge_ok(lists) {
            return Ok(VisitStep::Skip);
        }
        let d = lists.len();
        if d == self.vertex_count {
            let cap = best.saturating_sub(1);
            let cnt = self.full_count(lists, cap);
            if cnt < *best {
                *best = cnt;
                *witness = Some(lists.to_vec());
                if cnt == 0 {
                    return Ok(VisitStep::Stop);
                }
            }
            return Ok(VisitStep::Descend);
        }
        if self.prune && *best != u128::MAX {
            if let Some(cap) = (*best - 1).checked_div(self.rf[d]) {
                if self.prefix_count(lists, cap) > cap {
                    return Ok(VisitStep::Skip);
                }
            }
        }
        Ok(VisitStep::Descend)
    }

    fn visit_zero(
        &self,
        lists: &[SmallList],
        found: &mut Option<Vec<SmallList>>,
    ) -> Result<VisitStep> {
        if self.prune {
            if !self.bridge_ok(lists) {
                return Ok(VisitStep::Skip);
            }
            if self.prefix_count(lists, 0) == 0 {
                // The prefix alone is uncolorable; any completion stays at 0.
                *found = Some(self.fill_full(lists));
                return Ok(VisitStep::Stop);
            }
            if self.rf[lists.len()] >= 1 {
                // Colorable prefix and every extension keeps a free color.
                return Ok(VisitStep::Skip);
            }
            Ok(VisitStep::Descend)
        } else {
            if lists.len() == self.vertex_count && self.full_count(lists, 0) == 0 {
                *found = Some(lists.to_vec());
                return Ok(VisitStep::Stop);
            }
            Ok(VisitStep::Descend)
        }
    }

    fn fill_full(&self, lists: &[SmallList]) -> Vec<SmallList> {
        let mut out = lists.to_vec();
        for w in lists.len()..self.vertex_count {
            out.push((0..self.sizes[w] as u16).collect());
        }
        out
    }

    fn run_minimize(&self, budget: &Budget, threads: usize) -> Result<(u128, Vec<SmallList>)> {
        if self.vertex_count == 0 {
            return Ok((1, Vec::new()));
        }
        if threads <= 1 || self.vertex_count <= 1 {
            let mut best = u128::MAX;
            let mut witness: Option<Vec<SmallList>> = None;
            canon::enumerate(&self.sizes, budget, &mut |lists, _| {
                self.visit_min(lists, &mut best, &mut witness)
            })?;
            let witness = witness.expect("the uniform class is always evaluated");
            return Ok((best, witness));
        }
        let states = self.split_states(budget, threads)?;
        let pool = build_pool(threads)?;
        let locals: Result<Vec<MinLocal>> = pool.install(|| {
            states
                .par_iter()
                .enumerate()
                .map(|(idx, st)| {
                    if !self.prefix_admitted(&st.lists) {
                        return Ok(None);
                    }
                    let mut best = u128::MAX;
                    let mut witness: Option<Vec<SmallList>> = None;
                    canon::enumerate_from(&self.sizes, st, budget, &mut |lists, _| {
                        self.visit_min(lists, &mut best, &mut witness)
                    })?;
                    Ok(witness.map(|w| (best, idx, w)))
                })
                .collect()
        });
        let merged = locals?
            .into_iter()
            .flatten()
            .min_by_key(|(value, idx, _)| (*value, *idx))
            .expect("the subtree containing the uniform class always reports");
        Ok((merged.0, merged.2))
    }

    fn run_find_zero(&self, budget: &Budget, threads: usize) -> Result<Option<Vec<SmallList>>> {
        if self.vertex_count == 0 {
            return Ok(None);
        }
        if threads <= 1 || self.vertex_count <= 1 {
            let mut found: Option<Vec<SmallList>> = None;
            canon::enumerate(&self.sizes, budget, &mut |lists, _| {
                self.visit_zero(lists, &mut found)
            })?;
            return Ok(found);
        }
        let states = self.split_states(budget, threads)?;
        let pool = build_pool(threads)?;
        let locals: Result<Vec<ZeroLocal>> = pool.install(|| {
            states
                .par_iter()
                .enumerate()
                .map(|(idx, st)| {
                    if !self.prefix_admitted(&st.lists) {
                        return Ok(None);
                    }
                    let mut found: Option<Vec<SmallList>> = None;
                    canon::enumerate_from(&self.sizes, st, budget, &mut |lists, _| {
                        self.visit_zero(lists, &mut found)
                    })?;
                    Ok(found.map(|w| (idx, w)))
                })
                .collect()
        });
        Ok(locals?
            .into_iter()
            .flatten()
            .min_by_key(|(idx, _)| *idx)
            .map(|(_, w)| w))
    }

    /// Expands the enumeration tree to a shallow depth so independent
    /// subtrees can be distributed across workers. The split always stays
    /// strictly above the leaves: a resumed enumeration expands below its
    /// state and would never evaluate a state that is itself complete.
    fn split_states(&self, budget: &Budget, threads: usize) -> Result<Vec<canon::CanonState>> {
        let max_depth = (self.vertex_count - 1).clamp(1, 3);
        let mut states = Vec::new();
        for depth in 1..=max_depth {
            states = canon::collect_states(&self.sizes, depth, budget)?;
            if states.len() >= threads * 4 {
                break;
            }
        }
        Ok(states)
    }
}

/// Per-subtree minimization result: best count, subtree index, witness.
type MinLocal = Option<(u128, usize, Vec<SmallList>)>;

/// Per-subtree zero-search result: subtree index and the zero witness.
type ZeroLocal = Option<(usize, Vec<SmallList>)>;

fn build_pool(threads: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::InvalidParameter(format!("could not build thread pool: {e}")))
}

fn mask_below(d: usize) -> u64 {
    if d >= 64 {
        u64::MAX
    } else {
        (1u64 << d) - 1
    }
}

/// Greedy lower-bound factors: `rf[d]` multiplies, over the suffix in
/// smallest-degree-first removal order, the colors each vertex must still
/// have free when it is colored after the prefix and the suffix vertices
/// removed later. Depends only on the graph and list sizes.
fn compute_rf(adj: &[u64], sizes: &[usize]) -> Vec<u128> {
    let v = adj.len();
    let mut rf = vec![1u128; v + 1];
    for (d, slot) in rf.iter_mut().take(v).enumerate() {
        let prefix = mask_below(d);
        let mut remaining: u64 = mask_below(v) & !prefix;
        let mut product: u128 = 1;
        while remaining != 0 {
            // Remove the vertex with the fewest prefix-or-remaining
            // neighbors; it is colored after everything that stays longer.
            let mut pick = usize::MAX;
            let mut pick_deg = u32::MAX;
            let mut scan = remaining;
            while scan != 0 {
                let w = scan.trailing_zeros() as usize;
                scan &= scan - 1;
                let deg = (adj[w] & (prefix | (remaining & !(1u64 << w)))).count_ones();
                if deg < pick_deg {
                    pick_deg = deg;
                    pick = w;
                }
            }
            let free = (sizes[pick] as u128).saturating_sub(pick_deg as u128);
            product = product.saturating_mul(free);
            remaining &= !(1u64 << pick);
        }
        *slot = product;
    }
    rf
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_complete_bipartite, build_cycle, build_path, build_vertex};

    fn cfg() -> SearchConfig {
        SearchConfig::default()
    }

    fn class_count(g: &Graph, n: u32) -> usize {
        let mut count = 0;
        for class in enumerate_assignments(g, n, &cfg()).unwrap() {
            class.unwrap();
            count += 1;
        }
        count
    }

    #[test]
    fn documented_class_counts() {
        assert_eq!(class_count(&build_vertex(), 2), 1);
        let edge = build_path(1).unwrap();
        assert_eq!(class_count(&edge, 1), 2);
        assert_eq!(class_count(&edge, 2), 3);
    }

    #[test]
    fn triangle_with_two_colors() {
        let c3 = build_cycle(3).unwrap();
        let choosable = is_choosable(&c3, 2, &cfg()).unwrap();
        assert!(!choosable.choosable);
        assert_eq!(
            choosable.zero_witness.unwrap(),
            ListAssignment::uniform(3, 2)
        );
        let min = min_colorings(&c3, 2, &cfg()).unwrap();
        assert_eq!(min.min_count, BigUint::zero());
    }

    #[test]
    fn square_with_two_colors() {
        let c4 = build_cycle(4).unwrap();
        assert!(is_choosable(&c4, 2, &cfg()).unwrap().choosable);
        let min = min_colorings(&c4, 2, &cfg()).unwrap();
        assert_eq!(min.min_count, BigUint::from(2u32));
        let verdict = is_monophilic(&c4, 2, &cfg()).unwrap();
        assert!(verdict.monophilic && !verdict.vacuous);
    }

    #[test]
    fn k23_is_uniform_minimal() {
        let g = build_complete_bipartite(2, 3).unwrap();
        let verdict = is_monophilic(&g, 2, &cfg()).unwrap();
        assert!(verdict.monophilic);
        assert_eq!(verdict.uniform_count, BigUint::from(2u32));
        assert_eq!(verdict.min_count, BigUint::from(2u32));
    }

    #[test]
    fn odd_cycle_is_vacuous_at_two() {
        let c5 = build_cycle(5).unwrap();
        let verdict = is_monophilic(&c5, 2, &cfg()).unwrap();
        assert!(verdict.monophilic && verdict.vacuous);
        assert!(verdict.uniform_count.is_zero());
    }

    #[test]
    fn edge_reduces_through_its_core() {
        let edge = build_path(1).unwrap();
        let verdict = is_monophilic(&edge, 2, &cfg()).unwrap();
        assert!(verdict.monophilic && !verdict.vacuous);
        assert_eq!(verdict.uniform_count, BigUint::from(2u32));
        // The witness is lifted through the peeled vertex: both ends share
        // one list.
        let w = verdict.witness.unwrap();
        assert_eq!(w.list(0), w.list(1));
    }

    #[test]
    fn disconnected_graphs_multiply() {
        // Triangle plus isolated edge: the triangle is uncolorable at n=2,
        // so the whole graph is vacuously uniform-minimal.
        let mut g = build_cycle(3).unwrap();
        let a = g.add_vertex();
        let b = g.add_vertex();
        g.add_edge(a, b).unwrap();
        let verdict = is_monophilic(&g, 2, &cfg()).unwrap();
        assert!(verdict.monophilic && verdict.vacuous);
        let choosable = is_choosable(&g, 2, &cfg()).unwrap();
        assert!(!choosable.choosable);
        let zw = choosable.zero_witness.unwrap();
        assert!(crate::count::col(&g, &zw).unwrap().is_zero());
    }

    #[test]
    fn pruning_does_not_change_minima() {
        let plain = SearchConfig {
            disable_pruning: true,
            ..cfg()
        };
        for g in [
            build_cycle(4).unwrap(),
            build_cycle(5).unwrap(),
            build_path(3).unwrap(),
            build_complete_bipartite(2, 3).unwrap(),
        ] {
            for n in [2u32, 3] {
                let a = min_colorings(&g, n, &cfg()).unwrap();
                let b = min_colorings(&g, n, &plain).unwrap();
                assert_eq!(a.min_count, b.min_count);
            }
        }
    }

    #[test]
    fn threads_agree_with_sequential() {
        let par = SearchConfig {
            threads: 3,
            ..cfg()
        };
        for g in [
            build_cycle(5).unwrap(),
            build_complete_bipartite(2, 3).unwrap(),
        ] {
            let a = min_colorings(&g, 2, &cfg()).unwrap();
            let b = min_colorings(&g, 2, &par).unwrap();
            assert_eq!(a.min_count, b.min_count);
            assert_eq!(a.witness, b.witness);
        }
        let c3 = build_cycle(3).unwrap();
        let seq = is_choosable(&c3, 2, &cfg()).unwrap();
        let thr = is_choosable(&c3, 2, &par).unwrap();
        assert_eq!(seq.zero_witness, thr.zero_witness);
    }

    #[test]
    fn probe_on_an_edge() {
        let edge = build_path(1).unwrap();
        let report = monophilic_number_probe(&edge, 2, &cfg()).unwrap();
        assert_eq!(report.rows.len(), 2);
        assert_eq!(report.rows[0].colorable, Some(false));
        assert_eq!(report.rows[0].monophilic, Some(true));
        assert_eq!(report.rows[1].colorable, Some(true));
        assert_eq!(report.rows[1].monophilic, Some(true));
        assert_eq!(report.first_both, Some(2));
        assert_eq!(report.tail_candidate, Some(2));
        assert_eq!(report.certificate_bound, 2);
    }

    #[test]
    fn budget_errors_are_honest() {
        let tiny = SearchConfig { budget: 5, ..cfg() };
        let g = build_cycle(6).unwrap();
        assert!(matches!(
            min_colorings(&g, 3, &tiny),
            Err(Error::BudgetExceeded { .. })
        ));
        let report = monophilic_number_probe(&g, 3, &tiny).unwrap();
        assert_eq!(report.rows[2].monophilic, None);
        assert_eq!(report.rows[2].colorable, Some(true));
    }
}
