//! Pawlak, variable-precision and variable-error approximations of a target
//! set, their three-region decompositions, and the precision values at which
//! those decompositions change.
//!
//! All rules are block-level. With `d` the overlap degree of a block
//! (`1 - |E ∩ X| / |E|`):
//!
//! * lower at error `β` takes every block with `d ≤ β`;
//! * upper at error `γ` takes every block with `d < 1` and `d ≤ 1 - γ`;
//! * `D` is the lower approximation, `BN` is upper minus lower and `N` is
//!   the universe minus upper.
//!
//! At `β = 0` these reduce to the classical Pawlak approximations.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ratio::ExactRatio;
use crate::subset::SubsetHandle;
use crate::universe::Partition;

/// An admissible classification error, `0 ≤ value ≤ 1/2`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Precision(ExactRatio);

impl Precision {
    pub fn new(value: ExactRatio) -> Result<Self> {
        if value.is_negative() || value > ExactRatio::half() {
            return Err(Error::PrecisionOutOfRange(value.to_string()));
        }
        Ok(Precision(value))
    }

    pub fn zero() -> Self {
        Precision(ExactRatio::zero())
    }

    pub fn half() -> Self {
        Precision(ExactRatio::half())
    }

    pub fn parse(text: &str) -> Result<Self> {
        Precision::new(ExactRatio::parse_literal(text)?)
    }

    pub fn value(&self) -> &ExactRatio {
        &self.0
    }

    pub fn midpoint(&self, other: &Precision) -> Precision {
        Precision(self.0.midpoint(&other.0))
    }
}

impl TryFrom<ExactRatio> for Precision {
    type Error = Error;

    fn try_from(value: ExactRatio) -> Result<Self> {
        Precision::new(value)
    }
}

impl fmt::Display for Precision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Approximations of a target together with the induced three-region split.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Regions {
    pub lower: SubsetHandle,
    pub upper: SubsetHandle,
    /// `D`: the region included in the target.
    pub positive: SubsetHandle,
    /// `BN`: the region possibly included.
    pub boundary: SubsetHandle,
    /// `N`: the region not included.
    pub negative: SubsetHandle,
    /// `|lower| / |upper|`, or 1 when upper is empty.
    pub accuracy: ExactRatio,
}

impl Regions {
    fn from_approximations(lower: SubsetHandle, upper: SubsetHandle) -> Self {
        debug_assert!(lower.is_subset(&upper).unwrap_or(false));
        let boundary = upper.difference(&lower).expect("same universe");
        let negative = upper.complement();
        let accuracy = if upper.is_empty() {
            ExactRatio::one()
        } else {
            ExactRatio::of_counts(lower.len(), upper.len())
        };
        Regions {
            positive: lower.clone(),
            lower,
            upper,
            boundary,
            negative,
            accuracy,
        }
    }
}

/// Classical rough set result.
pub type RoughResult = Regions;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VprsResult {
    pub beta: Precision,
    pub regions: Regions,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VprsveResult {
    pub beta: Precision,
    pub gamma: Precision,
    pub regions: Regions,
}

/// Per-block overlap degrees and the precisions where regions change.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThresholdProfile {
    /// `degrees[b]` is the overlap degree of block `b`.
    pub degrees: Vec<ExactRatio>,
    /// Ascending, deduplicated values of `d` and `1 - d` lying in `(0, 1/2]`.
    pub critical: Vec<Precision>,
}

/// Overlap degrees of every block against one target, evaluated once and
/// reused for any number of precisions.
#[derive(Debug, Clone)]
pub struct Approximator<'a> {
    partition: &'a Partition,
    degrees: Vec<ExactRatio>,
}

impl<'a> Approximator<'a> {
    pub fn new(partition: &'a Partition, target: &SubsetHandle) -> Result<Self> {
        if !partition.owns(target) {
            return Err(Error::UniverseMismatch);
        }
        let degrees = (0..partition.block_count())
            .map(|b| block_degree(partition, b, target))
            .collect();
        Ok(Approximator { partition, degrees })
    }

    pub fn partition(&self) -> &'a Partition {
        self.partition
    }

    pub fn degrees(&self) -> &[ExactRatio] {
        &self.degrees
    }

    pub fn lower(&self, beta: &Precision) -> SubsetHandle {
        self.select(|d| d <= beta.value())
    }

    pub fn upper(&self, gamma: &Precision) -> SubsetHandle {
        let bound = gamma.value().complement();
        let one = ExactRatio::one();
        self.select(|d| *d < one && *d <= bound)
    }

    fn select(&self, keep: impl Fn(&ExactRatio) -> bool) -> SubsetHandle {
        self.partition
            .union_of((0..self.degrees.len()).filter(|&b| keep(&self.degrees[b])))
    }

    pub fn pawlak(&self) -> RoughResult {
        self.vprs(&Precision::zero()).regions
    }

    pub fn vprs(&self, beta: &Precision) -> VprsResult {
        VprsResult {
            beta: beta.clone(),
            regions: Regions::from_approximations(self.lower(beta), self.upper(beta)),
        }
    }

    pub fn vprsve(&self, beta: &Precision, gamma: &Precision) -> VprsveResult {
        VprsveResult {
            beta: beta.clone(),
            gamma: gamma.clone(),
            regions: Regions::from_approximations(self.lower(beta), self.upper(gamma)),
        }
    }

    pub fn thresholds(&self) -> ThresholdProfile {
        let half = ExactRatio::half();
        let mut critical = BTreeSet::new();
        for d in &self.degrees {
            for candidate in [d.clone(), d.complement()] {
                if !candidate.is_zero() && !candidate.is_negative() && candidate <= half {
                    critical.insert(candidate);
                }
            }
        }
        ThresholdProfile {
            degrees: self.degrees.clone(),
            critical: critical.into_iter().map(Precision).collect(),
        }
    }

    /// One result at `β = 0` followed by one per critical value, ascending.
    pub fn sweep(&self) -> Vec<VprsResult> {
        std::iter::once(Precision::zero())
            .chain(self.thresholds().critical)
            .map(|beta| self.vprs(&beta))
            .collect()
    }
}

fn block_degree(partition: &Partition, block: usize, target: &SubsetHandle) -> ExactRatio {
    let size = partition.block(block).len();
    let inside = partition.block_mask(block).overlap_count(target);
    ExactRatio::of_counts(size - inside, size)
}

/// `d(E, X) = 1 - |E ∩ X| / |E|` for block `E` of `partition`.
pub fn overlap_degree(
    partition: &Partition,
    block: usize,
    target: &SubsetHandle,
) -> Result<ExactRatio> {
    if !partition.owns(target) {
        return Err(Error::UniverseMismatch);
    }
    Ok(block_degree(partition, block, target))
}

pub fn pawlak(partition: &Partition, target: &SubsetHandle) -> Result<RoughResult> {
    Ok(Approximator::new(partition, target)?.pawlak())
}

pub fn vprs(partition: &Partition, target: &SubsetHandle, beta: &Precision) -> Result<VprsResult> {
    Ok(Approximator::new(partition, target)?.vprs(beta))
}

pub fn vprsve(
    partition: &Partition,
    target: &SubsetHandle,
    beta: &Precision,
    gamma: &Precision,
) -> Result<VprsveResult> {
    Ok(Approximator::new(partition, target)?.vprsve(beta, gamma))
}

pub fn thresholds(partition: &Partition, target: &SubsetHandle) -> Result<ThresholdProfile> {
    Ok(Approximator::new(partition, target)?.thresholds())
}

pub fn sweep(partition: &Partition, target: &SubsetHandle) -> Result<Vec<VprsResult>> {
    Ok(Approximator::new(partition, target)?.sweep())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::ratio;
    use crate::universe::Universe;

    fn small() -> (Partition, SubsetHandle) {
        let u = Universe::new(["a", "b", "c", "d", "e", "f"]).unwrap();
        let p = Partition::new(&u, [vec!["a", "b"], vec!["c", "d", "e"], vec!["f"]]).unwrap();
        let x = SubsetHandle::from_labels(&u, ["a", "c", "d"]).unwrap();
        (p, x)
    }

    fn p(n: i64, d: i64) -> Precision {
        Precision::new(ratio(n, d).unwrap()).unwrap()
    }

    #[test]
    fn precision_range() {
        assert!(Precision::new(ExactRatio::half()).is_ok());
        assert!(Precision::new(ExactRatio::zero()).is_ok());
        assert_eq!(
            Precision::new(ratio(3, 5).unwrap()),
            Err(Error::PrecisionOutOfRange("3/5".into()))
        );
        assert!(Precision::new(ratio(-1, 5).unwrap()).is_err());
        assert_eq!(Precision::parse("0.25").unwrap(), p(1, 4));
        assert!(matches!(
            Precision::parse("nope"),
            Err(Error::InvalidRatio(_))
        ));
    }

    #[test]
    fn degrees_and_thresholds() {
        let (part, x) = small();
        let t = thresholds(&part, &x).unwrap();
        assert_eq!(
            t.degrees,
            vec![
                ratio(1, 2).unwrap(),
                ratio(1, 3).unwrap(),
                ExactRatio::one()
            ]
        );
        assert_eq!(t.critical, vec![p(1, 3), p(1, 2)]);
    }

    #[test]
    fn empty_upper_has_unit_accuracy() {
        let (part, _) = small();
        let none = SubsetHandle::empty(part.universe());
        let r = pawlak(&part, &none).unwrap();
        assert!(r.upper.is_empty());
        assert_eq!(r.accuracy, ExactRatio::one());
        assert_eq!(r.negative, SubsetHandle::full(part.universe()));
        assert_eq!(sweep(&part, &none).unwrap().len(), 1);
    }

    #[test]
    fn inclusive_thresholds() {
        let (part, x) = small();
        // Block {c,d,e} has d = 1/3: in lower exactly from beta = 1/3 on.
        let r = vprs(&part, &x, &p(1, 3)).unwrap().regions;
        assert_eq!(r.lower.labels(), ["c", "d", "e"]);
        let r = vprs(&part, &x, &p(1, 4)).unwrap().regions;
        assert!(r.lower.is_empty());
        // Block {a,b} has d = 1/2 = 1 - 1/2: joins lower and stays in upper at 1/2.
        let r = vprs(&part, &x, &Precision::half()).unwrap().regions;
        assert_eq!(r.lower, r.upper);
        assert!(r.boundary.is_empty());
    }

    #[test]
    fn foreign_target_rejected() {
        let (part, _) = small();
        let other = SubsetHandle::full(&Universe::new(["z"]).unwrap());
        assert_eq!(pawlak(&part, &other).unwrap_err(), Error::UniverseMismatch);
        assert_eq!(
            overlap_degree(&part, 0, &other).unwrap_err(),
            Error::UniverseMismatch
        );
    }
}
