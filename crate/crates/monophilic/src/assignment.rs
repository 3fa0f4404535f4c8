use std::collections::BTreeMap;

use serde::Deserialize;

use crate::error::{Error, Result};

/// A list assignment: one finite set of positive-integer colors per vertex.
///
/// Lists are stored sorted and deduplicated; a list may be empty (induced
/// instances produce empty lists naturally, and they force a zero count).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ListAssignment {
    lists: Vec<Vec<u32>>,
}

/// A pinned vertex: `vertex` is forced to take `color`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pin {
    pub vertex: usize,
    pub color: u32,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ListsJson {
    lists: BTreeMap<String, Vec<u32>>,
}

impl ListAssignment {
    /// Builds an assignment from per-vertex lists; each list is sorted and
    /// deduplicated. Colors must be ≥ 1.
    pub fn new(lists: Vec<Vec<u32>>) -> Result<Self> {
        let mut cleaned = Vec::with_capacity(lists.len());
        for mut list in lists {
            if list.contains(&0) {
                return Err(Error::InvalidInput(
                    "colors are positive integers; 0 is not a color".into(),
                ));
            }
            list.sort_unstable();
            list.dedup();
            cleaned.push(list);
        }
        Ok(ListAssignment { lists: cleaned })
    }

    /// The uniform assignment: every one of `vertex_count` vertices gets
    /// `{1, ..., n}`.
    pub fn uniform(vertex_count: usize, n: u32) -> Self {
        let list: Vec<u32> = (1..=n).collect();
        ListAssignment {
            lists: vec![list; vertex_count],
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.lists.len()
    }

    pub fn list(&self, v: usize) -> &[u32] {
        &self.lists[v]
    }

    pub fn lists(&self) -> &[Vec<u32>] {
        &self.lists
    }

    /// Largest color mentioned anywhere, or 0 for all-empty assignments.
    pub fn max_color(&self) -> u32 {
        self.lists
            .iter()
            .filter_map(|l| l.last().copied())
            .max()
            .unwrap_or(0)
    }

    /// True iff every list has exactly `n` colors.
    pub fn is_uniform_size(&self, n: usize) -> bool {
        self.lists.iter().all(|l| l.len() == n)
    }

    /// Serializes to `{"lists": {"0": [...], "1": [...]}}` with vertex keys
    /// in numeric order and colors ascending, so output is byte-stable.
    pub fn to_json_string(&self) -> String {
        // Keys are emitted in numeric order, which `serde_json`'s
        // string-keyed maps would not preserve; build the document by hand.
        let mut out = String::from("{\"lists\":{");
        for (v, list) in self.lists.iter().enumerate() {
            if v > 0 {
                out.push(',');
            }
            out.push_str(&format!("\"{v}\":"));
            out.push_str(&serde_json::to_string(list).unwrap());
        }
        out.push_str("}}");
        out
    }

    /// Parses the JSON produced by [`ListAssignment::to_json_string`]. The
    /// document must supply exactly one list per vertex of the graph it will
    /// be used with (`vertex_count`).
    pub fn from_json_str(s: &str, vertex_count: usize) -> Result<Self> {
        let doc: ListsJson = serde_json::from_str(s)?;
        let mut lists = vec![None; vertex_count];
        for (key, list) in doc.lists {
            let v: usize = key
                .parse()
                .map_err(|_| Error::InvalidInput(format!("list key {key:?} is not a vertex id")))?;
            if v >= vertex_count {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    vertex_count,
                });
            }
            if lists[v].is_some() {
                return Err(Error::InvalidInput(format!("vertex {v} listed twice")));
            }
            lists[v] = Some(list);
        }
        let missing = lists.iter().position(|l| l.is_none());
        if let Some(v) = missing {
            return Err(Error::InvalidInput(format!("vertex {v} has no list")));
        }
        ListAssignment::new(lists.into_iter().map(Option::unwrap).collect())
    }
}
