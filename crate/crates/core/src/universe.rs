//! The approximation space: a finite labelled universe and an equivalence
//! partition of it into blocks (granules).

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::subset::SubsetHandle;

/// An ordered set of distinct element labels. Elements are addressed
/// internally by their position.
#[derive(Debug, PartialEq, Eq)]
pub struct Universe {
    labels: Vec<String>,
    index: HashMap<String, usize>,
}

impl Universe {
    pub fn new<I, S>(labels: I) -> Result<Arc<Self>>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::EmptyUniverse);
        }
        let mut index = HashMap::with_capacity(labels.len());
        for (i, label) in labels.iter().enumerate() {
            if index.insert(label.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }
        Ok(Arc::new(Universe { labels, index }))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    /// Always false for a constructed universe.
    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, idx: usize) -> &str {
        &self.labels[idx]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub(crate) fn same_as(self: &Arc<Self>, other: &Arc<Self>) -> bool {
        Arc::ptr_eq(self, other) || self.labels == other.labels
    }
}

/// A validated equivalence partition of a universe. Block order is the
/// order given at construction; elements inside a block are kept in
/// universe order.
#[derive(Clone)]
pub struct Partition {
    universe: Arc<Universe>,
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
    masks: Vec<SubsetHandle>,
}

impl Partition {
    /// Validates `blocks` (given as label sets) against `universe`.
    ///
    /// Checks run block by block in input order, so the reported error is
    /// the first violation encountered; uncovered labels are reported last,
    /// in universe order.
    pub fn new<B, L, S>(universe: &Arc<Universe>, blocks: B) -> Result<Self>
    where
        B: IntoIterator<Item = L>,
        L: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut indexed = Vec::new();
        let mut seen = vec![false; universe.len()];
        for (b, block) in blocks.into_iter().enumerate() {
            let mut members = Vec::new();
            for label in block {
                let label = label.as_ref();
                let idx = universe
                    .index_of(label)
                    .ok_or_else(|| Error::UnknownLabel(label.to_string()))?;
                if seen[idx] {
                    return Err(Error::NotDisjoint(label.to_string()));
                }
                seen[idx] = true;
                members.push(idx);
            }
            if members.is_empty() {
                return Err(Error::EmptyBlock(b));
            }
            indexed.push(members);
        }
        if let Some(missing) = seen.iter().position(|&s| !s) {
            return Err(Error::NotCovering(universe.label(missing).to_string()));
        }
        Ok(Self::from_validated(universe, indexed))
    }

    /// `blocks` must already be disjoint, covering and non-empty.
    pub(crate) fn from_validated(universe: &Arc<Universe>, mut blocks: Vec<Vec<usize>>) -> Self {
        let mut block_of = vec![usize::MAX; universe.len()];
        for (b, members) in blocks.iter_mut().enumerate() {
            members.sort_unstable();
            for &e in members.iter() {
                block_of[e] = b;
            }
        }
        debug_assert!(block_of.iter().all(|&b| b != usize::MAX));
        let masks = blocks
            .iter()
            .map(|m| SubsetHandle::from_indices(universe, m.iter().copied()))
            .collect();
        Partition {
            universe: Arc::clone(universe),
            blocks,
            block_of,
            masks,
        }
    }

    /// The identity relation: every element is its own block.
    pub fn discrete(universe: &Arc<Universe>) -> Self {
        Self::from_validated(universe, (0..universe.len()).map(|i| vec![i]).collect())
    }

    /// The universal relation: one block holding everything.
    pub fn indiscrete(universe: &Arc<Universe>) -> Self {
        Self::from_validated(universe, vec![(0..universe.len()).collect()])
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn block(&self, b: usize) -> &[usize] {
        &self.blocks[b]
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_mask(&self, b: usize) -> &SubsetHandle {
        &self.masks[b]
    }

    pub fn block_of(&self, element: usize) -> usize {
        self.block_of[element]
    }

    pub fn block_labels(&self, b: usize) -> Vec<&str> {
        self.blocks[b]
            .iter()
            .map(|&e| self.universe.label(e))
            .collect()
    }

    /// Display name of block `b`: `E1`, `E2`, ... in block order.
    pub fn block_name(b: usize) -> String {
        format!("E{}", b + 1)
    }

    /// Indices of the blocks wholly contained in `set`, ascending.
    pub fn blocks_within(&self, set: &SubsetHandle) -> Vec<usize> {
        (0..self.blocks.len())
            .filter(|&b| self.blocks[b].iter().all(|&e| set.contains(e)))
            .collect()
    }

    /// True iff `set` is a union of whole blocks.
    pub fn is_definable(&self, set: &SubsetHandle) -> bool {
        self.blocks
            .iter()
            .all(|m| m.iter().all(|&e| set.contains(e)) || m.iter().all(|&e| !set.contains(e)))
    }

    pub fn union_of(&self, blocks: impl IntoIterator<Item = usize>) -> SubsetHandle {
        let mut s = SubsetHandle::empty(&self.universe);
        for b in blocks {
            for &e in &self.blocks[b] {
                s.insert(e);
            }
        }
        s
    }

    /// True when `set` lives in this partition's universe.
    pub fn owns(&self, set: &SubsetHandle) -> bool {
        self.universe.same_as(set.universe())
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries((0..self.blocks.len()).map(|b| self.block_labels(b)))
            .finish()
    }
}
