//! Verification of the totally ordered region families along a grid.

use serde::Serialize;

use crate::approximation::{Approximator, Precision, Regions};
use crate::error::{Error, Result};
use crate::subset::SubsetHandle;
use crate::universe::Partition;

use super::BetaGrid;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ChainFamily {
    #[serde(rename = "lower")]
    Lower,
    #[serde(rename = "upper")]
    Upper,
    #[serde(rename = "D")]
    Positive,
    #[serde(rename = "BN")]
    Boundary,
    #[serde(rename = "N")]
    Negative,
}

impl ChainFamily {
    pub const ALL: [ChainFamily; 5] = [
        ChainFamily::Lower,
        ChainFamily::Upper,
        ChainFamily::Positive,
        ChainFamily::Boundary,
        ChainFamily::Negative,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ChainFamily::Lower => "lower",
            ChainFamily::Upper => "upper",
            ChainFamily::Positive => "D",
            ChainFamily::Boundary => "BN",
            ChainFamily::Negative => "N",
        }
    }

    /// Whether the family grows with the precision.
    pub fn ascending(self) -> bool {
        matches!(
            self,
            ChainFamily::Lower | ChainFamily::Positive | ChainFamily::Negative
        )
    }

    fn pick(self, r: &Regions) -> &SubsetHandle {
        match self {
            ChainFamily::Lower => &r.lower,
            ChainFamily::Upper => &r.upper,
            ChainFamily::Positive => &r.positive,
            ChainFamily::Boundary => &r.boundary,
            ChainFamily::Negative => &r.negative,
        }
    }
}

/// Cardinalities of every region at one grid precision.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainRow {
    pub beta: Precision,
    pub lower: usize,
    pub upper: usize,
    pub positive: usize,
    pub boundary: usize,
    pub negative: usize,
}

/// Where a family attains its least and greatest members on the grid.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainSummary {
    pub family: ChainFamily,
    pub ascending: bool,
    pub least_at: Precision,
    pub greatest_at: Precision,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainReport {
    pub rows: Vec<ChainRow>,
    pub chains: Vec<ChainSummary>,
}

/// Confirms that along `grid` the lower, D and N regions grow while upper
/// and BN shrink, that each family stays between its values at `0` and
/// `1/2`, and that the values at `0` are the classical ones. Any failure is
/// reported as [`Error::ChainViolation`].
pub fn chain_report(
    partition: &Partition,
    target: &SubsetHandle,
    grid: &BetaGrid,
) -> Result<ChainReport> {
    let approx = Approximator::new(partition, target)?;
    let results: Vec<Regions> = grid
        .values()
        .iter()
        .map(|b| approx.vprs(b).regions)
        .collect();
    let at_zero = approx.pawlak();
    let at_half = approx.vprs(&Precision::half()).regions;
    let betas = grid.values();
    let zero = Precision::zero();
    let half = Precision::half();

    let violation = |family: ChainFamily, lo: &Precision, hi: &Precision| Error::ChainViolation {
        family: family.name(),
        lo: lo.to_string(),
        hi: hi.to_string(),
    };
    // ordered(a at lo, b at hi) for lo <= hi
    let ordered = |family: ChainFamily, a: &SubsetHandle, b: &SubsetHandle| -> Result<bool> {
        if family.ascending() {
            a.is_subset(b)
        } else {
            b.is_subset(a)
        }
    };

    let mut chains = Vec::new();
    for family in ChainFamily::ALL {
        for (i, w) in results.windows(2).enumerate() {
            if !ordered(family, family.pick(&w[0]), family.pick(&w[1]))? {
                return Err(violation(family, &betas[i], &betas[i + 1]));
            }
        }
        for (b, r) in betas.iter().zip(&results) {
            let set = family.pick(r);
            if !ordered(family, family.pick(&at_zero), set)? {
                return Err(violation(family, &zero, b));
            }
            if !ordered(family, set, family.pick(&at_half))? {
                return Err(violation(family, b, &half));
            }
        }
        if let (Some(first), Some(last)) = (betas.first(), betas.last()) {
            let sets: Vec<&SubsetHandle> = results.iter().map(|r| family.pick(r)).collect();
            let least = extremes(&sets, |a, b| a.is_subset(b))?;
            let greatest = extremes(&sets, |a, b| b.is_subset(a))?;
            // Report the grid end where each extreme sits when it spans a plateau.
            let pick = |idx: &[usize], at_start: bool| {
                if at_start {
                    idx.first().copied()
                } else {
                    idx.last().copied()
                }
            };
            let (least, greatest) = match (
                pick(&least, family.ascending()),
                pick(&greatest, !family.ascending()),
            ) {
                (Some(l), Some(g)) => (l, g),
                _ => return Err(violation(family, first, last)),
            };
            chains.push(ChainSummary {
                family,
                ascending: family.ascending(),
                least_at: betas[least].clone(),
                greatest_at: betas[greatest].clone(),
            });
        }
    }

    let rows = betas
        .iter()
        .zip(&results)
        .map(|(b, r)| ChainRow {
            beta: b.clone(),
            lower: r.lower.len(),
            upper: r.upper.len(),
            positive: r.positive.len(),
            boundary: r.boundary.len(),
            negative: r.negative.len(),
        })
        .collect();
    Ok(ChainReport { rows, chains })
}

/// Indices whose set is `below` every other set.
fn extremes(
    sets: &[&SubsetHandle],
    below: impl Fn(&SubsetHandle, &SubsetHandle) -> Result<bool>,
) -> Result<Vec<usize>> {
    let mut found = Vec::new();
    for (i, s) in sets.iter().enumerate() {
        let mut all = true;
        for t in sets {
            if !below(s, t)? {
                all = false;
                break;
            }
        }
        if all {
            found.push(i);
        }
    }
    Ok(found)
}
