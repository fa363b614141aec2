//! One-instance verification pass: every structural property of the
//! approximation and lattice modules, evaluated over the refined critical
//! grid of the instance.

use std::collections::HashSet;

use serde::Serialize;

use crate::approximation::{Approximator, Precision, Regions};
use crate::error::Result;
use crate::lattice::{
    self, chain_report, check_laws, closure, element_from, BetaGrid, LatticeElement,
};
use crate::subset::SubsetHandle;
use crate::universe::Partition;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub grid: Vec<Precision>,
    pub checks: Vec<CheckOutcome>,
}

impl CheckReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Names of the checks, in report order.
pub const CHECKS: [&str; 14] = [
    "region-partition",
    "lower-within-upper",
    "definability",
    "classical-at-zero",
    "monotonicity",
    "boundary-empty-at-half",
    "region-chains",
    "chain-extremes",
    "pairwise-union-intersection",
    "join-meet-normal-form",
    "lattice-laws",
    "closure-is-mixed-pairs",
    "mixed-error-coherence",
    "mixed-error-partition",
];

type Check = std::result::Result<(), String>;

fn ensure(cond: bool, detail: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(detail())
    }
}

fn partitions_universe(r: &Regions) -> bool {
    let d = &r.positive;
    let bn = &r.boundary;
    let n = &r.negative;
    let union = d.union(bn).and_then(|x| x.union(n));
    matches!(union, Ok(u) if u.complement().is_empty())
        && d.is_disjoint(bn).unwrap_or(false)
        && bn.is_disjoint(n).unwrap_or(false)
        && d.is_disjoint(n).unwrap_or(false)
}

fn subset(a: &SubsetHandle, b: &SubsetHandle) -> bool {
    a.is_subset(b).unwrap_or(false)
}

pub fn run_checks(partition: &Partition, target: &SubsetHandle) -> Result<CheckReport> {
    let approx = Approximator::new(partition, target)?;
    let grid = BetaGrid::refined(&approx);
    let betas = grid.values();
    let results: Vec<Regions> = betas.iter().map(|b| approx.vprs(b).regions).collect();
    let family: Vec<LatticeElement> = betas.iter().map(|b| element_from(&approx, b, b)).collect();

    let mut checks = Vec::with_capacity(CHECKS.len());
    let mut push = |name: &'static str, outcome: Check| {
        checks.push(CheckOutcome {
            name,
            passed: outcome.is_ok(),
            detail: outcome.err(),
        });
    };

    push(
        "region-partition",
        betas.iter().zip(&results).try_for_each(|(b, r)| {
            ensure(partitions_universe(r), || {
                format!("D, BN, N do not partition U at beta = {b}")
            })
        }),
    );
    push(
        "lower-within-upper",
        betas.iter().zip(&results).try_for_each(|(b, r)| {
            ensure(subset(&r.lower, &r.upper), || {
                format!("lower not within upper at beta = {b}")
            })
        }),
    );
    push(
        "definability",
        betas.iter().zip(&results).try_for_each(|(b, r)| {
            ensure(
                partition.is_definable(&r.lower) && partition.is_definable(&r.upper),
                || format!("approximation splits a block at beta = {b}"),
            )
        }),
    );
    push(
        "classical-at-zero",
        classical_at_zero(partition, target, &approx),
    );
    push("monotonicity", monotonicity(betas, &results));
    push("boundary-empty-at-half", {
        let r = approx.vprs(&Precision::half()).regions;
        ensure(r.boundary.is_empty() && r.lower == r.upper, || {
            "BN(1/2) is not empty".into()
        })
    });

    let chains = chain_report(partition, target, &grid);
    push(
        "region-chains",
        chains.as_ref().map(|_| ()).map_err(|e| e.to_string()),
    );
    push(
        "chain-extremes",
        match &chains {
            Err(e) => Err(e.to_string()),
            Ok(report) => report.chains.iter().try_for_each(|c| {
                let (first, last) = (&betas[0], &betas[betas.len() - 1]);
                let (least, greatest) = if c.ascending {
                    (first, last)
                } else {
                    (last, first)
                };
                ensure(&c.least_at == least && &c.greatest_at == greatest, || {
                    format!(
                        "{} chain extremes at ({}, {}), expected ({least}, {greatest})",
                        c.family.name(),
                        c.least_at,
                        c.greatest_at
                    )
                })
            }),
        },
    );
    push(
        "pairwise-union-intersection",
        pairwise_identities(betas, &results),
    );
    push(
        "join-meet-normal-form",
        normal_forms(&approx, betas, &family),
    );

    let closed = closure(&family)?;
    push("lattice-laws", {
        let report = check_laws(&closed)?;
        match report.laws.iter().find(|(_, o)| !o.holds()) {
            Some((law, o)) => {
                let c = o
                    .counterexample
                    .as_ref()
                    .expect("failed law has a counterexample");
                Err(format!(
                    "{law} fails for {} on elements {:?}",
                    c.operation, c.operands
                ))
            }
            None => ensure(report.closure.closed(), || "closure is not closed".into()),
        }
    });
    push("closure-is-mixed-pairs", {
        let mixed: HashSet<LatticeElement> = betas
            .iter()
            .flat_map(|b| betas.iter().map(|g| element_from(&approx, b, g)))
            .collect();
        let got: HashSet<LatticeElement> = closed.iter().cloned().collect();
        ensure(got == mixed, || {
            format!(
                "closure has {} elements, mixed-error pairs {}",
                got.len(),
                mixed.len()
            )
        })
    });
    push(
        "mixed-error-coherence",
        pairs(betas).try_for_each(|(b, g)| {
            let ve = approx.vprsve(b, g).regions;
            ensure(
                ve.positive == approx.vprs(b).regions.positive
                    && ve.negative == approx.vprs(g).regions.negative,
                || format!("D/N mismatch at (beta, gamma) = ({b}, {g})"),
            )
        }),
    );
    push(
        "mixed-error-partition",
        pairs(betas).try_for_each(|(b, g)| {
            ensure(partitions_universe(&approx.vprsve(b, g).regions), || {
                format!("regions do not partition U at (beta, gamma) = ({b}, {g})")
            })
        }),
    );

    Ok(CheckReport {
        grid: betas.to_vec(),
        checks,
    })
}

fn pairs(betas: &[Precision]) -> impl Iterator<Item = (&Precision, &Precision)> {
    betas
        .iter()
        .flat_map(move |b| betas.iter().map(move |g| (b, g)))
}

/// The classical approximations computed directly from block inclusion and
/// block overlap, independently of overlap degrees.
fn classical_at_zero(
    partition: &Partition,
    target: &SubsetHandle,
    approx: &Approximator<'_>,
) -> Check {
    let lower = partition.union_of(
        (0..partition.block_count()).filter(|&b| subset(partition.block_mask(b), target)),
    );
    let upper = partition.union_of(
        (0..partition.block_count())
            .filter(|&b| !partition.block_mask(b).is_disjoint(target).unwrap_or(true)),
    );
    let r = approx.vprs(&Precision::zero()).regions;
    ensure(r.lower == lower && r.upper == upper, || {
        "beta = 0 differs from the classical approximations".into()
    })
}

fn monotonicity(betas: &[Precision], results: &[Regions]) -> Check {
    for (i, w) in results.windows(2).enumerate() {
        let (a, b) = (&w[0], &w[1]);
        let span = || format!("{} < {}", betas[i], betas[i + 1]);
        ensure(subset(&a.lower, &b.lower), || {
            format!("lower shrinks for {}", span())
        })?;
        ensure(subset(&a.positive, &b.positive), || {
            format!("D shrinks for {}", span())
        })?;
        ensure(subset(&a.negative, &b.negative), || {
            format!("N shrinks for {}", span())
        })?;
        ensure(subset(&b.boundary, &a.boundary), || {
            format!("BN grows for {}", span())
        })?;
        ensure(subset(&b.upper, &a.upper), || {
            format!("upper grows for {}", span())
        })?;
        ensure(a.accuracy <= b.accuracy, || {
            format!("accuracy decreases for {}", span())
        })?;
    }
    Ok(())
}

fn pairwise_identities(betas: &[Precision], results: &[Regions]) -> Check {
    for (i, a) in results.iter().enumerate() {
        for (j, b) in results.iter().enumerate().skip(i) {
            let ok = a.lower.union(&b.lower).ok().as_ref() == Some(&b.lower)
                && a.lower.intersection(&b.lower).ok().as_ref() == Some(&a.lower)
                && a.upper.union(&b.upper).ok().as_ref() == Some(&a.upper)
                && a.upper.intersection(&b.upper).ok().as_ref() == Some(&b.upper);
            ensure(ok, || {
                format!(
                    "union/intersection identities fail for {} <= {}",
                    betas[i], betas[j]
                )
            })?;
        }
    }
    Ok(())
}

fn normal_forms(
    approx: &Approximator<'_>,
    betas: &[Precision],
    family: &[LatticeElement],
) -> Check {
    for (i, x) in family.iter().enumerate() {
        for (j, y) in family.iter().enumerate().skip(i) {
            let (bi, bj) = (&betas[i], &betas[j]);
            let joined = lattice::join(x, y).map_err(|e| e.to_string())?;
            let met = lattice::meet(x, y).map_err(|e| e.to_string())?;
            ensure(
                joined == element_from(approx, bj, bi) && met == element_from(approx, bi, bj),
                || format!("join/meet normal form fails for {bi} <= {bj}"),
            )?;
        }
    }
    Ok(())
}
