//! Exhaustive checking of the lattice identities over a finite carrier.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use serde::Serialize;

use super::{join, meet, LatticeElement};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Law {
    Idempotence,
    Commutativity,
    Associativity,
    Absorption,
}

impl Law {
    pub const ALL: [Law; 4] = [
        Law::Idempotence,
        Law::Commutativity,
        Law::Associativity,
        Law::Absorption,
    ];
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Law::Idempotence => "idempotence",
            Law::Commutativity => "commutativity",
            Law::Associativity => "associativity",
            Law::Absorption => "absorption",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Operation {
    Join,
    Meet,
}

impl Operation {
    pub fn apply(self, a: &LatticeElement, b: &LatticeElement) -> Result<LatticeElement> {
        match self {
            Operation::Join => join(a, b),
            Operation::Meet => meet(a, b),
        }
    }

    fn dual(self) -> Operation {
        match self {
            Operation::Join => Operation::Meet,
            Operation::Meet => Operation::Join,
        }
    }
}

impl fmt::Display for Operation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Operation::Join => "join",
            Operation::Meet => "meet",
        })
    }
}

/// A failed identity: `operands` index the checked elements and `lhs`/`rhs`
/// are the two sides that differ.
#[derive(Debug, Clone)]
pub struct Counterexample {
    pub operation: Operation,
    pub operands: Vec<usize>,
    pub lhs: LatticeElement,
    pub rhs: LatticeElement,
}

#[derive(Debug, Clone, Default)]
pub struct LawOutcome {
    pub counterexample: Option<Counterexample>,
}

impl LawOutcome {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Whether join and meet stay inside the checked set. `escape` is the first
/// pair whose result is missing.
#[derive(Debug, Clone, Default)]
pub struct ClosureStatus {
    pub escape: Option<(Operation, usize, usize)>,
}

impl ClosureStatus {
    pub fn closed(&self) -> bool {
        self.escape.is_none()
    }
}

#[derive(Debug, Clone)]
pub struct LawReport {
    pub laws: BTreeMap<Law, LawOutcome>,
    pub closure: ClosureStatus,
    pub element_count: usize,
    pub checked_triples: usize,
}

impl LawReport {
    pub fn all_hold(&self) -> bool {
        self.laws.values().all(LawOutcome::holds)
    }

    pub fn outcome(&self, law: Law) -> &LawOutcome {
        &self.laws[&law]
    }
}

/// Checks idempotence, commutativity, associativity and absorption for both
/// operations over every element, pair and triple of `elements`, in
/// lexicographic order, keeping the first counterexample per law.
pub fn check_laws(elements: &[LatticeElement]) -> Result<LawReport> {
    if let Some(first) = elements.first() {
        if elements
            .iter()
            .any(|e| !e.lower().same_universe(first.lower()))
        {
            return Err(Error::UniverseMismatch);
        }
    }
    let n = elements.len();
    let mut laws: BTreeMap<Law, LawOutcome> = Law::ALL
        .iter()
        .map(|&l| (l, LawOutcome::default()))
        .collect();
    let mut record = |law: Law,
                      op: Operation,
                      operands: Vec<usize>,
                      lhs: LatticeElement,
                      rhs: LatticeElement| {
        let slot = laws.get_mut(&law).expect("all laws present");
        if lhs != rhs && slot.counterexample.is_none() {
            slot.counterexample = Some(Counterexample {
                operation: op,
                operands,
                lhs,
                rhs,
            });
        }
    };
    let ops = [Operation::Join, Operation::Meet];
    let members: HashSet<&LatticeElement> = elements.iter().collect();
    let mut closure = ClosureStatus::default();

    for (i, x) in elements.iter().enumerate() {
        for op in ops {
            record(Law::Idempotence, op, vec![i], op.apply(x, x)?, x.clone());
        }
    }
    for (i, x) in elements.iter().enumerate() {
        for (j, y) in elements.iter().enumerate() {
            for op in ops {
                let xy = op.apply(x, y)?;
                if closure.escape.is_none() && !members.contains(&xy) {
                    closure.escape = Some((op, i, j));
                }
                record(
                    Law::Commutativity,
                    op,
                    vec![i, j],
                    xy.clone(),
                    op.apply(y, x)?,
                );
                // x op (x dual y) = x
                let inner = op.dual().apply(x, y)?;
                record(
                    Law::Absorption,
                    op,
                    vec![i, j],
                    op.apply(x, &inner)?,
                    x.clone(),
                );
            }
        }
    }
    for (i, x) in elements.iter().enumerate() {
        for (j, y) in elements.iter().enumerate() {
            for op in ops {
                let xy = op.apply(x, y)?;
                for (k, z) in elements.iter().enumerate() {
                    let lhs = op.apply(x, &op.apply(y, z)?)?;
                    let rhs = op.apply(&xy, z)?;
                    record(Law::Associativity, op, vec![i, j, k], lhs, rhs);
                }
            }
        }
    }
    Ok(LawReport {
        laws,
        closure,
        element_count: n,
        checked_triples: n * n * n,
    })
}

/// `table[i][j]` is the index of `op(elements[i], elements[j])` within
/// `elements`, or `None` when the result lies outside.
pub fn cayley_table(elements: &[LatticeElement], op: Operation) -> Result<Vec<Vec<Option<usize>>>> {
    elements
        .iter()
        .map(|x| {
            elements
                .iter()
                .map(|y| {
                    let r = op.apply(x, y)?;
                    Ok(elements.iter().position(|e| *e == r))
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subset::SubsetHandle;
    use crate::universe::Universe;

    fn elem(u: &std::sync::Arc<Universe>, lower: &[&str], upper: &[&str]) -> LatticeElement {
        LatticeElement::new(
            SubsetHandle::from_labels(u, lower).unwrap(),
            SubsetHandle::from_labels(u, upper).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn single_element_passes() {
        let u = Universe::new(["a", "b"]).unwrap();
        let report = check_laws(&[elem(&u, &["a"], &["a", "b"])]).unwrap();
        assert!(report.all_hold());
        assert!(report.closure.closed());
        assert_eq!(report.element_count, 1);
        assert_eq!(report.checked_triples, 1);
    }

    #[test]
    fn empty_input_is_vacuous() {
        let report = check_laws(&[]).unwrap();
        assert!(report.all_hold());
        assert_eq!(report.checked_triples, 0);
    }

    #[test]
    fn escape_is_reported_but_laws_hold() {
        let u = Universe::new(["a", "b", "c"]).unwrap();
        let x = elem(&u, &["a"], &["a", "b"]);
        let y = elem(&u, &["b"], &["b", "c"]);
        let report = check_laws(&[x.clone(), y.clone()]).unwrap();
        assert!(report.all_hold());
        assert!(!report.closure.closed());
        let (op, i, j) = report.closure.escape.unwrap();
        assert_eq!((op, i, j), (Operation::Join, 0, 1));
        let table = cayley_table(&[x, y], Operation::Meet).unwrap();
        assert_eq!(table, vec![vec![Some(0), None], vec![None, Some(1)]]);
    }
}
