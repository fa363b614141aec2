#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use vprs::ingest::{parse_instance, Instance, InstanceSpec};
use vprs::{ratio, Partition, Precision, SubsetHandle};

pub fn fixture_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/paper-a.json")
}

pub fn worked_spec() -> InstanceSpec {
    parse_instance(&std::fs::read_to_string(fixture_path()).unwrap()).unwrap()
}

pub fn worked() -> Instance {
    worked_spec().build().unwrap()
}

/// Union of the blocks named `E<n>` (1-based).
pub fn blocks(partition: &Partition, names: &[usize]) -> SubsetHandle {
    partition.union_of(names.iter().map(|n| n - 1))
}

pub fn q(n: i64, d: i64) -> Precision {
    Precision::new(ratio(n, d).unwrap()).unwrap()
}

/// A random instance: `1..=max_n` elements, a random partition into at
/// most `n` blocks and a random target.
pub fn random_spec(rng: &mut impl Rng, max_n: usize) -> InstanceSpec {
    let n = rng.gen_range(1..=max_n);
    let universe: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
    let k = rng.gen_range(1..=n);
    let mut blocks: Vec<Vec<String>> = vec![Vec::new(); k];
    for label in &universe {
        blocks[rng.gen_range(0..k)].push(label.clone());
    }
    blocks.retain(|b| !b.is_empty());
    let density: f64 = rng.gen();
    let target = universe
        .iter()
        .filter(|_| rng.gen_bool(density))
        .cloned()
        .collect();
    InstanceSpec {
        name: None,
        universe,
        blocks,
        target,
    }
}

pub fn random_precision(rng: &mut impl Rng) -> Precision {
    let den = rng.gen_range(1..=24i64);
    let num = rng.gen_range(0..=den / 2);
    q(num, den)
}

pub fn to_big(p: &Precision) -> BigRational {
    BigRational::new(p.value().numer().clone(), p.value().denom().clone())
}

/// Literal block-by-block evaluator over labels. Counts `|E ∩ X|` by
/// comparing label strings and applies the rules with plain big rationals.
pub struct Oracle<'a> {
    spec: &'a InstanceSpec,
}

pub type LabelSet = BTreeSet<String>;

impl<'a> Oracle<'a> {
    pub fn new(spec: &'a InstanceSpec) -> Self {
        Oracle { spec }
    }

    fn degree(&self, block: &[String]) -> BigRational {
        let inside = block
            .iter()
            .filter(|l| self.spec.target.iter().any(|t| t == *l))
            .count();
        let one = BigRational::from_integer(BigInt::from(1));
        one - BigRational::new(BigInt::from(inside), BigInt::from(block.len()))
    }

    pub fn lower(&self, beta: &BigRational) -> LabelSet {
        self.collect(|d| d <= beta)
    }

    pub fn upper(&self, gamma: &BigRational) -> LabelSet {
        let one = BigRational::from_integer(BigInt::from(1));
        let bound = &one - gamma;
        self.collect(|d| *d < one && *d <= bound)
    }

    fn collect(&self, keep: impl Fn(&BigRational) -> bool) -> LabelSet {
        let mut out = LabelSet::new();
        for block in &self.spec.blocks {
            if keep(&self.degree(block)) {
                out.extend(block.iter().cloned());
            }
        }
        out
    }

    pub fn universe(&self) -> LabelSet {
        self.spec.universe.iter().cloned().collect()
    }

    /// Candidate breakpoints: every `k/|E|` and its complement in `[0, 1/2]`.
    fn candidates(&self) -> Vec<BigRational> {
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let one = BigRational::from_integer(BigInt::from(1));
        let mut set = BTreeSet::new();
        for block in &self.spec.blocks {
            let n = block.len();
            for k in 0..=n {
                let f = BigRational::new(BigInt::from(k), BigInt::from(n));
                for c in [f.clone(), &one - &f] {
                    if c >= BigRational::from_integer(BigInt::from(0)) && c <= half {
                        set.insert(c);
                    }
                }
            }
        }
        set.insert(BigRational::from_integer(BigInt::from(0)));
        set.insert(half);
        set.into_iter().collect()
    }

    fn state(&self, beta: &BigRational) -> (LabelSet, LabelSet) {
        (self.lower(beta), self.upper(beta))
    }

    /// Precisions in `(0, 1/2]` at which (lower, upper) differs from the
    /// value on an adjacent open interval, found by sweeping every
    /// candidate and every midpoint between candidates.
    pub fn critical(&self) -> Vec<BigRational> {
        let cands = self.candidates();
        let two = BigRational::from_integer(BigInt::from(2));
        let mid = |a: &BigRational, b: &BigRational| (a + b) / &two;
        let mut out = Vec::new();
        for (i, c) in cands.iter().enumerate() {
            if i == 0 {
                continue;
            }
            let at = self.state(c);
            let below = self.state(&mid(&cands[i - 1], c));
            let above = cands.get(i + 1).map(|next| self.state(&mid(c, next)));
            if at != below || above.is_some_and(|a| a != at) {
                out.push(c.clone());
            }
        }
        out
    }
}

pub fn labels(set: &SubsetHandle) -> LabelSet {
    set.labels().into_iter().map(String::from).collect()
}
