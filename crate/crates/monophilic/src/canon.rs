//! Depth-first enumeration of list assignments, one representative per
//! class under color renaming.
//!
//! Vertices are processed in identity order. Lists use 0-based `u16` colors
//! internally; a prefix that has introduced `u` distinct colors has used
//! exactly `0..u` (every candidate list draws its new colors as the next
//! consecutive values). A candidate for the next vertex is admitted iff no
//! color permutation that fixes every earlier list setwise maps it to a
//! lexicographically smaller sorted list; those permutations are carried
//! along explicitly as the prefix's symmetry group. Enumeration order is
//! lexicographic on the concatenated lists, so the first representative
//! found with any property is also the least.

use std::sync::atomic::{AtomicU64, Ordering};

use smallvec::SmallVec;

use crate::assignment::ListAssignment;
use crate::error::{Error, Result};

pub(crate) type SmallList = SmallVec<[u16; 8]>;
pub(crate) type Perm = SmallVec<[u16; 16]>;

/// Explicit symmetry groups larger than this abort the search instead of
/// thrashing; the instances this crate targets stay far below it.
const GROUP_CAP: usize = 100_000;

/// Shared, thread-safe node counter with a hard limit.
pub(crate) struct Budget {
    limit: u64,
    counter: AtomicU64,
}

impl Budget {
    pub(crate) fn new(limit: u64) -> Self {
        Budget {
            limit,
            counter: AtomicU64::new(0),
        }
    }

    pub(crate) fn tick(&self) -> Result<()> {
        let prev = self.counter.fetch_add(1, Ordering::Relaxed);
        if prev >= self.limit {
            Err(Error::BudgetExceeded { visited: prev })
        } else {
            Ok(())
        }
    }

    pub(crate) fn visited(&self) -> u64 {
        self.counter.load(Ordering::Relaxed).min(self.limit)
    }
}

/// Visitor verdict for a just-extended prefix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum VisitStep {
    /// Keep extending below this prefix (no-op on complete assignments).
    Descend,
    /// Discard everything below this prefix.
    Skip,
    /// End the whole enumeration successfully.
    Stop,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Flow {
    Continue,
    Stop,
}

/// A resumable enumeration state: the chosen prefix lists, how many colors
/// they use, and the color permutations fixing every chosen list setwise.
#[derive(Clone)]
pub(crate) struct CanonState {
    pub(crate) lists: Vec<SmallList>,
    pub(crate) used: u16,
    group: Vec<Perm>,
}

impl CanonState {
    fn root(capacity: usize) -> Self {
        CanonState {
            lists: Vec::with_capacity(capacity),
            used: 0,
            group: vec![Perm::new()],
        }
    }
}

fn check_sizes(sizes: &[usize]) -> Result<()> {
    if sizes.contains(&0) {
        return Err(Error::InvalidParameter(
            "every vertex needs a nonempty list".into(),
        ));
    }
    if sizes.iter().sum::<usize>() > 4096 {
        return Err(Error::VerificationTooLarge(
            "total list size exceeds the enumeration color bound".into(),
        ));
    }
    Ok(())
}

/// Runs the full enumeration. The visitor is called once per admitted
/// prefix, including complete assignments. Returns `Ok(true)` if the tree
/// was exhausted and `Ok(false)` if the visitor stopped it.
pub(crate) fn enumerate<F>(sizes: &[usize], budget: &Budget, visit: &mut F) -> Result<bool>
where
    F: FnMut(&[SmallList], u16) -> Result<VisitStep>,
{
    check_sizes(sizes)?;
    let mut state = CanonState::root(sizes.len());
    Ok(expand(sizes, budget, visit, &mut state)? == Flow::Continue)
}

/// Resumes enumeration below a state captured by [`collect_states`].
pub(crate) fn enumerate_from<F>(
    sizes: &[usize],
    state: &CanonState,
    budget: &Budget,
    visit: &mut F,
) -> Result<bool>
where
    F: FnMut(&[SmallList], u16) -> Result<VisitStep>,
{
    let mut state = state.clone();
    Ok(expand(sizes, budget, visit, &mut state)? == Flow::Continue)
}

/// Collects every admitted prefix state at exactly `depth`, for splitting
/// one enumeration into independent resumable parts.
pub(crate) fn collect_states(
    sizes: &[usize],
    depth: usize,
    budget: &Budget,
) -> Result<Vec<CanonState>> {
    check_sizes(sizes)?;
    let depth = depth.min(sizes.len());
    let mut out = Vec::new();
    let mut state = CanonState::root(sizes.len());
    collect_rec(sizes, depth, budget, &mut state, &mut out)?;
    Ok(out)
}

fn collect_rec(
    sizes: &[usize],
    depth: usize,
    budget: &Budget,
    state: &mut CanonState,
    out: &mut Vec<CanonState>,
) -> Result<()> {
    if state.lists.len() == depth {
        out.push(state.clone());
        return Ok(());
    }
    for (cand, stab) in admitted_candidates(sizes, state)? {
        let undo = push_child(state, cand, stab)?;
        budget.tick()?;
        collect_rec(sizes, depth, budget, state, out)?;
        pop_child(state, undo);
    }
    Ok(())
}

/// Expands all children of `state`, driving the visitor.
fn expand<F>(
    sizes: &[usize],
    budget: &Budget,
    visit: &mut F,
    state: &mut CanonState,
) -> Result<Flow>
where
    F: FnMut(&[SmallList], u16) -> Result<VisitStep>,
{
    if state.lists.len() == sizes.len() {
        return Ok(Flow::Continue);
    }
    for (cand, stab) in admitted_candidates(sizes, state)? {
        let undo = push_child(state, cand, stab)?;
        budget.tick()?;
        let step = visit(&state.lists, state.used)?;
        let flow = match step {
            VisitStep::Skip => Flow::Continue,
            VisitStep::Stop => Flow::Stop,
            VisitStep::Descend => expand(sizes, budget, visit, state)?,
        };
        pop_child(state, undo);
        if flow == Flow::Stop {
            return Ok(Flow::Stop);
        }
    }
    Ok(Flow::Continue)
}

/// Saved fields for undoing `push_child`.
struct Undo {
    used: u16,
    group: Vec<Perm>,
}

fn push_child(state: &mut CanonState, cand: SmallList, stab: Vec<Perm>) -> Result<Undo> {
    let u = state.used as usize;
    let fresh = cand.iter().filter(|&&c| (c as usize) >= u).count();
    let child_group = extend_group(&stab, u, fresh)?;
    let undo = Undo {
        used: state.used,
        group: std::mem::replace(&mut state.group, child_group),
    };
    state.used = (u + fresh) as u16;
    state.lists.push(cand);
    Ok(undo)
}

fn pop_child(state: &mut CanonState, undo: Undo) {
    state.lists.pop();
    state.used = undo.used;
    state.group = undo.group;
}

/// All admitted candidate lists for the next vertex, in ascending order,
/// each with the subgroup that fixes it setwise.
fn admitted_candidates(sizes: &[usize], state: &CanonState) -> Result<Vec<(SmallList, Vec<Perm>)>> {
    let s = sizes[state.lists.len()];
    let u = state.used as usize;
    let mut out = Vec::new();
    for cand in candidate_lists(u, s) {
        let mut stab = Vec::new();
        let mut minimal = true;
        for perm in &state.group {
            let image = apply_sorted(perm, &cand);
            match image.cmp(&cand) {
                std::cmp::Ordering::Less => {
                    minimal = false;
                    break;
                }
                std::cmp::Ordering::Equal => stab.push(perm.clone()),
                std::cmp::Ordering::Greater => {}
            }
        }
        if minimal {
            out.push((cand, stab));
        }
    }
    Ok(out)
}

/// Size-`s` lists over used colors `0..u` plus a consecutive run of new
/// colors starting at `u`, in ascending lexicographic order.
fn candidate_lists(u: usize, s: usize) -> Vec<SmallList> {
    let mut out = Vec::new();
    for fresh in 0..=s {
        let from_used = s - fresh;
        if from_used > u {
            continue;
        }
        for mut base in combinations(u, from_used) {
            base.extend((0..fresh).map(|i| (u + i) as u16));
            out.push(base);
        }
    }
    out.sort();
    out
}

/// All size-`k` ascending subsets of `0..u`.
fn combinations(u: usize, k: usize) -> Vec<SmallList> {
    let mut out = Vec::new();
    let mut cur = SmallList::new();
    fn rec(u: usize, k: usize, start: usize, cur: &mut SmallList, out: &mut Vec<SmallList>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        let need = k - cur.len();
        for c in start..=u.saturating_sub(need) {
            cur.push(c as u16);
            rec(u, k, c + 1, cur, out);
            cur.pop();
        }
    }
    if k <= u {
        rec(u, k, 0, &mut cur, &mut out);
    }
    out
}

/// Applies a used-color permutation (identity above its length), returning
/// the sorted image.
fn apply_sorted(perm: &Perm, list: &SmallList) -> SmallList {
    let mut image: SmallList = list
        .iter()
        .map(|&c| {
            if (c as usize) < perm.len() {
                perm[c as usize]
            } else {
                c
            }
        })
        .collect();
    image.sort_unstable();
    image
}

/// Builds the child symmetry group: every stabilizer of the new list
/// combined with every permutation of the block of new colors.
fn extend_group(stab: &[Perm], u: usize, fresh: usize) -> Result<Vec<Perm>> {
    let block = permutations(fresh);
    let size = stab.len().saturating_mul(block.len());
    if size > GROUP_CAP {
        return Err(Error::VerificationTooLarge(format!(
            "prefix symmetry group would have {size} elements (limit {GROUP_CAP})"
        )));
    }
    let mut out = Vec::with_capacity(size);
    for sigma in stab {
        for rho in &block {
            let mut child: Perm = Perm::with_capacity(u + fresh);
            for c in 0..u {
                child.push(if c < sigma.len() { sigma[c] } else { c as u16 });
            }
            for r in rho {
                child.push(u as u16 + r);
            }
            out.push(child);
        }
    }
    Ok(out)
}

/// All permutations of `0..k` (as image arrays).
fn permutations(k: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut items: Perm = (0..k as u16).collect();
    fn heap(n: usize, items: &mut Perm, out: &mut Vec<Perm>) {
        if n <= 1 {
            out.push(items.clone());
            return;
        }
        for i in 0..n {
            heap(n - 1, items, out);
            if n.is_multiple_of(2) {
                items.swap(i, n - 1);
            } else {
                items.swap(0, n - 1);
            }
        }
    }
    heap(k, &mut items, &mut out);
    out
}

/// Converts internal 0-based lists to a public assignment with colors
/// starting at 1.
pub(crate) fn to_assignment(lists: &[SmallList]) -> ListAssignment {
    ListAssignment::new(
        lists
            .iter()
            .map(|l| l.iter().map(|&c| c as u32 + 1).collect())
            .collect(),
    )
    .expect("internal lists are sorted, deduplicated, and shifted above 0")
}

/// Lazy iterator over one representative per color-renaming class of list
/// assignments, in lexicographic order of the concatenated lists.
///
/// Colors are `1..=U` in first-use order across vertices `0, 1, 2, …`. The
/// iterator yields an error (and then ends) if the node budget is exhausted
/// or a prefix symmetry group exceeds the internal cap.
pub struct CanonicalAssignmentCursor {
    sizes: Vec<usize>,
    budget: Budget,
    state: CanonState,
    stack: Vec<Frame>,
    emitted_empty: bool,
    dead: bool,
}

struct Frame {
    cands: Vec<(SmallList, Vec<Perm>)>,
    pos: usize,
    undo: Option<Undo>,
}

impl CanonicalAssignmentCursor {
    pub(crate) fn new(sizes: Vec<usize>, budget_limit: u64) -> Result<Self> {
        check_sizes(&sizes)?;
        let state = CanonState::root(sizes.len());
        let mut cursor = CanonicalAssignmentCursor {
            sizes,
            budget: Budget::new(budget_limit),
            state,
            stack: Vec::new(),
            emitted_empty: false,
            dead: false,
        };
        if !cursor.sizes.is_empty() {
            let cands = admitted_candidates(&cursor.sizes, &cursor.state)?;
            cursor.stack.push(Frame {
                cands,
                pos: 0,
                undo: None,
            });
        }
        Ok(cursor)
    }

    /// Nodes charged against the budget so far.
    pub fn nodes_visited(&self) -> u64 {
        self.budget.visited()
    }
}

impl Iterator for CanonicalAssignmentCursor {
    type Item = Result<ListAssignment>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.dead {
            return None;
        }
        if self.sizes.is_empty() {
            if self.emitted_empty {
                return None;
            }
            self.emitted_empty = true;
            return Some(Ok(to_assignment(&[])));
        }
        loop {
            let frame = self.stack.last_mut()?;
            if frame.pos == frame.cands.len() {
                let frame = self.stack.pop().expect("nonempty");
                if let Some(undo) = frame.undo {
                    pop_child(&mut self.state, undo);
                }
                continue;
            }
            let (cand, stab) = frame.cands[frame.pos].clone();
            frame.pos += 1;
            let undo = match push_child(&mut self.state, cand, stab) {
                Ok(u) => u,
                Err(e) => {
                    self.dead = true;
                    return Some(Err(e));
                }
            };
            if let Err(e) = self.budget.tick() {
                pop_child(&mut self.state, undo);
                self.dead = true;
                return Some(Err(e));
            }
            if self.state.lists.len() == self.sizes.len() {
                let out = to_assignment(&self.state.lists);
                pop_child(&mut self.state, undo);
                return Some(Ok(out));
            }
            match admitted_candidates(&self.sizes, &self.state) {
                Ok(cands) => self.stack.push(Frame {
                    cands,
                    pos: 0,
                    undo: Some(undo),
                }),
                Err(e) => {
                    pop_child(&mut self.state, undo);
                    self.dead = true;
                    return Some(Err(e));
                }
            }
        }
    }
}

/// True iff some color bijection turns `a` into `b` (per vertex, as sets).
pub(crate) fn color_bijection_equivalent(a: &ListAssignment, b: &ListAssignment) -> bool {
    if a.vertex_count() != b.vertex_count() {
        return false;
    }
    let n = a.vertex_count();
    for v in 0..n {
        if a.list(v).len() != b.list(v).len() {
            return false;
        }
    }
    let mut forward: std::collections::HashMap<u32, u32> = std::collections::HashMap::new();
    let mut backward: std::collections::HashMap<u32, u32> = std::collections::HashMap::new();
    fn match_from(
        a: &ListAssignment,
        b: &ListAssignment,
        v: usize,
        slot: usize,
        forward: &mut std::collections::HashMap<u32, u32>,
        backward: &mut std::collections::HashMap<u32, u32>,
        taken: u64,
    ) -> bool {
        if v == a.vertex_count() {
            return true;
        }
        let la = a.list(v);
        let lb = b.list(v);
        if slot == la.len() {
            return match_from(a, b, v + 1, 0, forward, backward, 0);
        }
        let c = la[slot];
        if let Some(&img) = forward.get(&c) {
            if let Some(pos) = lb.iter().position(|&x| x == img) {
                if taken & (1 << pos) == 0 {
                    return match_from(a, b, v, slot + 1, forward, backward, taken | (1 << pos));
                }
            }
            return false;
        }
        for (pos, &d) in lb.iter().enumerate() {
            if taken & (1 << pos) != 0 || backward.contains_key(&d) {
                continue;
            }
            forward.insert(c, d);
            backward.insert(d, c);
            if match_from(a, b, v, slot + 1, forward, backward, taken | (1 << pos)) {
                return true;
            }
            forward.remove(&c);
            backward.remove(&d);
        }
        false
    }
    match_from(a, b, 0, 0, &mut forward, &mut backward, 0)
}
