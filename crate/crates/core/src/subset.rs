//! Subsets of a finite universe as packed membership bitmaps.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::universe::Universe;

const WORD: usize = u64::BITS as usize;

/// A subset of a [`Universe`]. Set operations between handles are only
/// defined when both refer to the same universe.
#[derive(Clone)]
pub struct SubsetHandle {
    universe: Arc<Universe>,
    words: Vec<u64>,
}

impl SubsetHandle {
    pub fn empty(universe: &Arc<Universe>) -> Self {
        SubsetHandle {
            universe: Arc::clone(universe),
            words: vec![0; universe.len().div_ceil(WORD)],
        }
    }

    pub fn full(universe: &Arc<Universe>) -> Self {
        let mut s = Self::empty(universe);
        for w in &mut s.words {
            *w = !0;
        }
        s.clear_tail();
        s
    }

    /// Builds the subset naming exactly `labels`. Repeated labels are harmless.
    pub fn from_labels<I, S>(universe: &Arc<Universe>, labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut s = Self::empty(universe);
        for label in labels {
            let label = label.as_ref();
            let idx = universe
                .index_of(label)
                .ok_or_else(|| Error::UnknownLabel(label.to_string()))?;
            s.insert(idx);
        }
        Ok(s)
    }

    pub(crate) fn from_indices(
        universe: &Arc<Universe>,
        indices: impl IntoIterator<Item = usize>,
    ) -> Self {
        let mut s = Self::empty(universe);
        for idx in indices {
            s.insert(idx);
        }
        s
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub(crate) fn insert(&mut self, idx: usize) {
        assert!(
            idx < self.universe.len(),
            "element index {idx} out of range"
        );
        self.words[idx / WORD] |= 1 << (idx % WORD);
    }

    pub fn contains(&self, idx: usize) -> bool {
        idx < self.universe.len() && self.words[idx / WORD] & (1 << (idx % WORD)) != 0
    }

    pub fn contains_label(&self, label: &str) -> bool {
        self.universe
            .index_of(label)
            .is_some_and(|i| self.contains(i))
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Member indices in universe order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.universe.len()).filter(move |&i| self.contains(i))
    }

    /// Member labels in universe order.
    pub fn labels(&self) -> Vec<&str> {
        self.iter().map(|i| self.universe.label(i)).collect()
    }

    pub fn same_universe(&self, other: &SubsetHandle) -> bool {
        self.universe.same_as(&other.universe)
    }

    fn check(&self, other: &SubsetHandle) -> Result<()> {
        if self.same_universe(other) {
            Ok(())
        } else {
            Err(Error::UniverseMismatch)
        }
    }

    fn zip(&self, other: &SubsetHandle, f: impl Fn(u64, u64) -> u64) -> Result<Self> {
        self.check(other)?;
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(&a, &b)| f(a, b))
            .collect();
        Ok(SubsetHandle {
            universe: Arc::clone(&self.universe),
            words,
        })
    }

    pub fn union(&self, other: &SubsetHandle) -> Result<Self> {
        self.zip(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &SubsetHandle) -> Result<Self> {
        self.zip(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &SubsetHandle) -> Result<Self> {
        self.zip(other, |a, b| a & !b)
    }

    pub fn complement(&self) -> Self {
        let mut s = SubsetHandle {
            universe: Arc::clone(&self.universe),
            words: self.words.iter().map(|w| !w).collect(),
        };
        s.clear_tail();
        s
    }

    pub fn is_subset(&self, other: &SubsetHandle) -> Result<bool> {
        self.check(other)?;
        Ok(self
            .words
            .iter()
            .zip(&other.words)
            .all(|(&a, &b)| a & !b == 0))
    }

    pub fn is_disjoint(&self, other: &SubsetHandle) -> Result<bool> {
        self.check(other)?;
        Ok(self
            .words
            .iter()
            .zip(&other.words)
            .all(|(&a, &b)| a & b == 0))
    }

    /// `|self ∩ other|` without materializing the intersection.
    pub(crate) fn overlap_count(&self, other: &SubsetHandle) -> usize {
        debug_assert!(self.same_universe(other));
        self.words
            .iter()
            .zip(&other.words)
            .map(|(&a, &b)| (a & b).count_ones() as usize)
            .sum()
    }

    fn clear_tail(&mut self) {
        let rem = self.universe.len() % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }
}

impl PartialEq for SubsetHandle {
    fn eq(&self, other: &Self) -> bool {
        self.same_universe(other) && self.words == other.words
    }
}

impl Eq for SubsetHandle {}

impl Hash for SubsetHandle {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.words.hash(state);
    }
}

impl fmt::Debug for SubsetHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.labels()).finish()
    }
}
