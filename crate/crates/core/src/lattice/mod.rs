//! Order and join/meet algebra on (lower, upper) approximation pairs.
//!
//! Elements are compared on their realized sets only. Two precisions that
//! produce the same approximations give equal elements, whatever their
//! provenance says.
//!
//! A single-precision family `{X(β)}` is generally not closed under join and
//! meet: joining `X(βi)` and `X(βj)` with `βi ≤ βj` yields
//! `(lower(βj), upper(βi))`, which is a mixed-error pair. [`closure`] builds
//! the smallest closed carrier, which for one family over a grid is exactly
//! the set of variable-error pairs `(lower(βi), upper(βj))`.

mod chain;
mod laws;

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::approximation::{Approximator, Precision};
use crate::error::{Error, Result};
use crate::subset::SubsetHandle;
use crate::universe::Partition;

pub use chain::{chain_report, ChainFamily, ChainReport, ChainRow, ChainSummary};
pub use laws::{
    cayley_table, check_laws, ClosureStatus, Counterexample, Law, LawOutcome, LawReport, Operation,
};

/// A (lower, upper) approximation pair with `lower ⊆ upper`.
#[derive(Clone)]
pub struct LatticeElement {
    lower: SubsetHandle,
    upper: SubsetHandle,
    provenance: Option<(Precision, Precision)>,
}

impl LatticeElement {
    pub fn new(lower: SubsetHandle, upper: SubsetHandle) -> Result<Self> {
        if !lower.is_subset(&upper)? {
            return Err(Error::LowerExceedsUpper);
        }
        Ok(LatticeElement {
            lower,
            upper,
            provenance: None,
        })
    }

    /// Attaches the (lower error, upper error) pair that generated the sets.
    pub fn with_provenance(mut self, beta: Precision, gamma: Precision) -> Self {
        self.provenance = Some((beta, gamma));
        self
    }

    pub fn lower(&self) -> &SubsetHandle {
        &self.lower
    }

    pub fn upper(&self) -> &SubsetHandle {
        &self.upper
    }

    pub fn provenance(&self) -> Option<&(Precision, Precision)> {
        self.provenance.as_ref()
    }

    fn combine(
        &self,
        other: &Self,
        sets: fn(&SubsetHandle, &SubsetHandle) -> Result<SubsetHandle>,
        pick_lower: fn(Precision, Precision) -> Precision,
        pick_upper: fn(Precision, Precision) -> Precision,
    ) -> Result<Self> {
        let provenance = match (&self.provenance, &other.provenance) {
            (Some((b1, g1)), Some((b2, g2))) => Some((
                pick_lower(b1.clone(), b2.clone()),
                pick_upper(g1.clone(), g2.clone()),
            )),
            _ => None,
        };
        Ok(LatticeElement {
            lower: sets(&self.lower, &other.lower)?,
            upper: sets(&self.upper, &other.upper)?,
            provenance,
        })
    }

    fn key(&self) -> (SubsetHandle, SubsetHandle) {
        (self.lower.clone(), self.upper.clone())
    }
}

impl PartialEq for LatticeElement {
    fn eq(&self, other: &Self) -> bool {
        self.lower == other.lower && self.upper == other.upper
    }
}

impl Eq for LatticeElement {}

impl Hash for LatticeElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.lower.hash(state);
        self.upper.hash(state);
    }
}

impl fmt::Debug for LatticeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = f.debug_struct("LatticeElement");
        s.field("lower", &self.lower).field("upper", &self.upper);
        if let Some((b, g)) = &self.provenance {
            s.field("provenance", &format_args!("({b}, {g})"));
        }
        s.finish()
    }
}

/// Strictly ascending precisions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BetaGrid(Vec<Precision>);

impl BetaGrid {
    pub fn new(values: Vec<Precision>) -> Result<Self> {
        if let Some(w) = values.windows(2).find(|w| w[0] >= w[1]) {
            return Err(Error::UnsortedGrid(format!(
                "{} is not below {}",
                w[0], w[1]
            )));
        }
        Ok(BetaGrid(values))
    }

    /// Comma-separated precisions, e.g. `0,1/4,1/3,1/2`.
    pub fn parse(text: &str) -> Result<Self> {
        let values = text
            .split(',')
            .map(Precision::parse)
            .collect::<Result<Vec<_>>>()?;
        BetaGrid::new(values)
    }

    /// `0` followed by every critical value of the target.
    pub fn critical(approx: &Approximator<'_>) -> Self {
        let mut values = vec![Precision::zero()];
        values.extend(approx.thresholds().critical);
        BetaGrid(values)
    }

    /// The critical grid refined with the midpoint of every gap, so that
    /// each constant stretch of the family is sampled once inside.
    pub fn refined(approx: &Approximator<'_>) -> Self {
        let coarse = Self::critical(approx).0;
        let mut values = Vec::with_capacity(coarse.len() * 2 + 1);
        for w in coarse.windows(2) {
            values.push(w[0].clone());
            values.push(w[0].midpoint(&w[1]));
        }
        let last = coarse.last().cloned().unwrap_or_else(Precision::zero);
        if last < Precision::half() {
            values.push(last.clone());
            values.push(last.midpoint(&Precision::half()));
            values.push(Precision::half());
        } else {
            values.push(last);
        }
        BetaGrid(values)
    }

    pub fn values(&self) -> &[Precision] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// `X(β)` as a lattice element with provenance `(β, β)`.
pub fn element_of(
    partition: &Partition,
    target: &SubsetHandle,
    beta: &Precision,
) -> Result<LatticeElement> {
    Ok(element_from(
        &Approximator::new(partition, target)?,
        beta,
        beta,
    ))
}

/// The variable-error pair `(lower(β), upper(γ))`.
pub fn element_from(
    approx: &Approximator<'_>,
    beta: &Precision,
    gamma: &Precision,
) -> LatticeElement {
    LatticeElement {
        lower: approx.lower(beta),
        upper: approx.upper(gamma),
        provenance: Some((beta.clone(), gamma.clone())),
    }
}

/// Componentwise containment of both approximations.
pub fn leq(a: &LatticeElement, b: &LatticeElement) -> Result<bool> {
    Ok(a.lower.is_subset(&b.lower)? && a.upper.is_subset(&b.upper)?)
}

pub fn equal(a: &LatticeElement, b: &LatticeElement) -> Result<bool> {
    if !a.lower.same_universe(&b.lower) {
        return Err(Error::UniverseMismatch);
    }
    Ok(a == b)
}

pub fn join(a: &LatticeElement, b: &LatticeElement) -> Result<LatticeElement> {
    a.combine(b, SubsetHandle::union, Ord::max, Ord::min)
}

pub fn meet(a: &LatticeElement, b: &LatticeElement) -> Result<LatticeElement> {
    a.combine(b, SubsetHandle::intersection, Ord::min, Ord::max)
}

/// `X(β)` for each grid value, in grid order. Equal elements are kept.
pub fn family(
    partition: &Partition,
    target: &SubsetHandle,
    grid: &BetaGrid,
) -> Result<Vec<LatticeElement>> {
    let approx = Approximator::new(partition, target)?;
    Ok(grid
        .values()
        .iter()
        .map(|b| element_from(&approx, b, b))
        .collect())
}

/// Smallest join/meet-closed set containing `elements`, deduplicated by
/// realized sets. Inputs come first in their original order, then derived
/// elements in discovery order.
pub fn closure(elements: &[LatticeElement]) -> Result<Vec<LatticeElement>> {
    if let Some(first) = elements.first() {
        if elements
            .iter()
            .any(|e| !e.lower.same_universe(&first.lower))
        {
            return Err(Error::UniverseMismatch);
        }
    }
    let mut items: Vec<LatticeElement> = Vec::new();
    let mut index: HashMap<(SubsetHandle, SubsetHandle), usize> = HashMap::new();
    let mut push = |e: LatticeElement, items: &mut Vec<LatticeElement>| {
        index.entry(e.key()).or_insert_with(|| {
            items.push(e);
            items.len() - 1
        });
    };
    for e in elements {
        push(e.clone(), &mut items);
    }
    let mut i = 0;
    while i < items.len() {
        for j in 0..=i {
            let joined = join(&items[i], &items[j])?;
            let met = meet(&items[i], &items[j])?;
            push(joined, &mut items);
            push(met, &mut items);
        }
        i += 1;
    }
    Ok(items)
}
