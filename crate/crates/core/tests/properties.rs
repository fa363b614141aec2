//! Randomized structural properties, checked against a label-level
//! brute-force evaluator where one applies.

mod common;

use common::{labels, random_precision, random_spec, to_big, Oracle};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vprs::ingest::{emit_instance, indiscernibility, parse_instance, parse_table, InstanceSpec};
use vprs::lattice::{
    self, chain_report, check_laws, closure, element_from, family, leq, BetaGrid, LatticeElement,
};
use vprs::{Approximator, ExactRatio, Precision, SubsetHandle};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn disjoint_cover(u: &SubsetHandle, parts: &[&SubsetHandle]) -> bool {
    let mut acc = SubsetHandle::empty(u.universe());
    for p in parts {
        if !acc.is_disjoint(p).unwrap() {
            return false;
        }
        acc = acc.union(p).unwrap();
    }
    &acc == u
}

#[test]
fn oracle_equivalence_small_universes() {
    let mut r = rng(1);
    for _ in 0..600 {
        let spec = random_spec(&mut r, 12);
        let inst = spec.build().unwrap();
        let approx = Approximator::new(&inst.partition, &inst.target).unwrap();
        let oracle = Oracle::new(&spec);
        for _ in 0..4 {
            let beta = random_precision(&mut r);
            let gamma = random_precision(&mut r);
            assert_eq!(
                labels(&approx.lower(&beta)),
                oracle.lower(&to_big(&beta)),
                "{spec:?} beta={beta}"
            );
            assert_eq!(
                labels(&approx.upper(&gamma)),
                oracle.upper(&to_big(&gamma)),
                "{spec:?} gamma={gamma}"
            );
            let regions = approx.vprsve(&beta, &gamma).regions;
            let negative: common::LabelSet = oracle
                .universe()
                .difference(&oracle.upper(&to_big(&gamma)))
                .cloned()
                .collect();
            assert_eq!(labels(&regions.negative), negative);
        }
    }
}

#[test]
fn thresholds_match_breakpoint_sweep() {
    let mut r = rng(2);
    for _ in 0..400 {
        let spec = random_spec(&mut r, 12);
        let inst = spec.build().unwrap();
        let got: Vec<_> = Approximator::new(&inst.partition, &inst.target)
            .unwrap()
            .thresholds()
            .critical
            .iter()
            .map(to_big)
            .collect();
        assert_eq!(got, Oracle::new(&spec).critical(), "{spec:?}");
    }
}

#[test]
fn sweep_entries_are_direct_evaluations() {
    let mut r = rng(3);
    for _ in 0..300 {
        let inst = random_spec(&mut r, 12).build().unwrap();
        let approx = Approximator::new(&inst.partition, &inst.target).unwrap();
        let rows = approx.sweep();
        assert_eq!(rows.len(), approx.thresholds().critical.len() + 1);
        assert_eq!(rows[0].beta, Precision::zero());
        for pair in rows.windows(2) {
            assert!(pair[0].beta < pair[1].beta);
            // A value of the form 1 - d keeps its block in upper; the change
            // shows just above it.
            let differs = pair[0].regions != pair[1].regions;
            let above = pair[1].beta.midpoint(&Precision::half());
            assert!(differs || approx.vprs(&above).regions != pair[1].regions);
        }
        for row in &rows {
            assert_eq!(row, &approx.vprs(&row.beta));
        }
    }
}

#[test]
fn regions_partition_and_monotonicity() {
    let mut r = rng(4);
    for _ in 0..400 {
        let inst = random_spec(&mut r, 16).build().unwrap();
        let approx = Approximator::new(&inst.partition, &inst.target).unwrap();
        let u = SubsetHandle::full(inst.partition.universe());
        let mut betas: Vec<Precision> = (0..5).map(|_| random_precision(&mut r)).collect();
        betas.sort();
        let mut prev: Option<vprs::Regions> = None;
        for b in &betas {
            let g = &approx.vprs(b).regions;
            assert!(disjoint_cover(&u, &[&g.positive, &g.boundary, &g.negative]));
            assert!(g.lower.is_subset(&g.upper).unwrap());
            assert!(inst.partition.is_definable(&g.lower) && inst.partition.is_definable(&g.upper));
            if let Some(p) = &prev {
                assert!(p.lower.is_subset(&g.lower).unwrap());
                assert!(g.upper.is_subset(&p.upper).unwrap());
                assert!(p.positive.is_subset(&g.positive).unwrap());
                assert!(p.negative.is_subset(&g.negative).unwrap());
                assert!(g.boundary.is_subset(&p.boundary).unwrap());
                assert!(p.accuracy <= g.accuracy);
            }
            prev = Some(g.clone());
        }
        assert!(approx.vprs(&Precision::half()).regions.boundary.is_empty());
        assert_eq!(approx.vprs(&Precision::zero()).regions, approx.pawlak());
    }
}

#[test]
fn variable_error_coherence() {
    let mut r = rng(5);
    for _ in 0..400 {
        let inst = random_spec(&mut r, 16).build().unwrap();
        let approx = Approximator::new(&inst.partition, &inst.target).unwrap();
        let u = SubsetHandle::full(inst.partition.universe());
        let (b, g) = (random_precision(&mut r), random_precision(&mut r));
        let mixed = approx.vprsve(&b, &g).regions;
        assert_eq!(mixed.positive, approx.vprs(&b).regions.positive);
        assert_eq!(mixed.negative, approx.vprs(&g).regions.negative);
        assert!(disjoint_cover(
            &u,
            &[&mixed.positive, &mixed.boundary, &mixed.negative]
        ));
        assert_eq!(approx.vprsve(&b, &b).regions, approx.vprs(&b).regions);
    }
}

#[test]
fn chains_never_violated() {
    let mut r = rng(6);
    for _ in 0..300 {
        let inst = random_spec(&mut r, 14).build().unwrap();
        let approx = Approximator::new(&inst.partition, &inst.target).unwrap();
        let report =
            chain_report(&inst.partition, &inst.target, &BetaGrid::refined(&approx)).unwrap();
        let first = &report.rows[0];
        let pawlak = approx.pawlak();
        assert_eq!(first.lower, pawlak.lower.len());
        assert_eq!(first.negative, pawlak.negative.len());
    }
}

fn closure_of(r: &mut ChaCha8Rng, max_n: usize) -> (Vec<LatticeElement>, Vec<LatticeElement>) {
    let inst = random_spec(r, max_n).build().unwrap();
    let approx = Approximator::new(&inst.partition, &inst.target).unwrap();
    let grid = BetaGrid::critical(&approx);
    let fam: Vec<_> = grid
        .values()
        .iter()
        .map(|b| element_from(&approx, b, b))
        .collect();
    let mut mixed = Vec::new();
    for b in grid.values() {
        for g in grid.values() {
            let e = element_from(&approx, b, g);
            if !mixed.contains(&e) {
                mixed.push(e);
            }
        }
    }
    (closure(&fam).unwrap(), mixed)
}

#[test]
fn closure_is_mixed_pairs_and_a_lattice() {
    let mut r = rng(7);
    for _ in 0..60 {
        let (c, mixed) = closure_of(&mut r, 10);
        assert_eq!(c.len(), mixed.len());
        assert!(mixed.iter().all(|m| c.contains(m)));
        let report = check_laws(&c).unwrap();
        assert!(report.all_hold() && report.closure.closed());
    }
}

#[test]
fn order_is_partial_and_join_meet_are_bounds() {
    let mut r = rng(8);
    for _ in 0..40 {
        let (c, _) = closure_of(&mut r, 9);
        for a in &c {
            assert!(leq(a, a).unwrap());
            for b in &c {
                if leq(a, b).unwrap() && leq(b, a).unwrap() {
                    assert_eq!(a, b);
                }
                let j = lattice::join(a, b).unwrap();
                let m = lattice::meet(a, b).unwrap();
                assert!(leq(a, &j).unwrap() && leq(b, &j).unwrap());
                assert!(leq(&m, a).unwrap() && leq(&m, b).unwrap());
                for x in &c {
                    if leq(a, x).unwrap() && leq(b, x).unwrap() {
                        assert!(leq(&j, x).unwrap());
                    }
                    if leq(x, a).unwrap() && leq(x, b).unwrap() {
                        assert!(leq(x, &m).unwrap());
                    }
                    if leq(a, b).unwrap() && leq(b, x).unwrap() {
                        assert!(leq(a, x).unwrap());
                    }
                }
            }
        }
    }
}

#[test]
fn normal_forms_of_join_and_meet() {
    let mut r = rng(9);
    for _ in 0..500 {
        let inst = random_spec(&mut r, 14).build().unwrap();
        let approx = Approximator::new(&inst.partition, &inst.target).unwrap();
        let (mut bi, mut bj) = (random_precision(&mut r), random_precision(&mut r));
        if bj < bi {
            std::mem::swap(&mut bi, &mut bj);
        }
        let ei = element_from(&approx, &bi, &bi);
        let ej = element_from(&approx, &bj, &bj);
        let j = lattice::join(&ei, &ej).unwrap();
        let m = lattice::meet(&ei, &ej).unwrap();
        assert_eq!(
            (j.lower(), j.upper()),
            (&approx.lower(&bj), &approx.upper(&bi))
        );
        assert_eq!(
            (m.lower(), m.upper()),
            (&approx.lower(&bi), &approx.upper(&bj))
        );
    }
}

#[test]
fn family_elements_match_vprs() {
    let mut r = rng(10);
    for _ in 0..100 {
        let inst = random_spec(&mut r, 12).build().unwrap();
        let approx = Approximator::new(&inst.partition, &inst.target).unwrap();
        let grid = BetaGrid::refined(&approx);
        let fam = family(&inst.partition, &inst.target, &grid).unwrap();
        for (e, b) in fam.iter().zip(grid.values()) {
            let v = approx.vprs(b).regions;
            assert_eq!((e.lower(), e.upper()), (&v.lower, &v.upper));
        }
    }
}

#[test]
fn instance_round_trip() {
    let mut r = rng(11);
    for i in 0..200 {
        let mut spec = random_spec(&mut r, 20);
        if i % 2 == 0 {
            spec.name = Some(format!("inst-{i}"));
        }
        let text = emit_instance(&spec);
        let back = parse_instance(&text).unwrap();
        assert_eq!(back, spec);
        assert_eq!(emit_instance(&back), text);
        let canonical = InstanceSpec::from_instance(&spec.build().unwrap());
        assert_eq!(
            parse_instance(&emit_instance(&canonical)).unwrap(),
            canonical
        );
    }
}

fn random_table(r: &mut ChaCha8Rng) -> String {
    let rows = r.gen_range(1..=15);
    let attrs = r.gen_range(1..=4);
    let mut text = String::from("id");
    for a in 0..attrs {
        text.push_str(&format!(",a{a}"));
    }
    text.push('\n');
    for o in 0..rows {
        text.push_str(&format!("o{o}"));
        for _ in 0..attrs {
            text.push_str(&format!(",{}", r.gen_range(0..3)));
        }
        text.push('\n');
    }
    text
}

#[test]
fn indiscernibility_refines_with_more_attributes() {
    let mut r = rng(12);
    for _ in 0..300 {
        let table = parse_table(&random_table(&mut r)).unwrap();
        let names = table.attributes().to_vec();
        let k = r.gen_range(1..=names.len());
        let fewer = &names[..k];
        let coarse = indiscernibility(&table, fewer).unwrap();
        let fine = indiscernibility(&table, &names).unwrap();
        assert!(fine.block_count() >= coarse.block_count());
        for b in 0..fine.block_count() {
            let block = fine.block_mask(b);
            let first = block.iter().next().unwrap();
            assert!(block
                .is_subset(coarse.block_mask(coarse.block_of(first)))
                .unwrap());
        }
        // Pairwise oracle: same block iff equal on every chosen attribute.
        let objects = table.objects().len();
        for x in 0..objects {
            for y in 0..objects {
                let same = (0..k).all(|c| table.value(x, c) == table.value(y, c));
                assert_eq!(coarse.block_of(x) == coarse.block_of(y), same);
            }
        }
    }
}

proptest! {
    #[test]
    fn accuracy_is_lower_over_upper(seed in any::<u64>()) {
        let mut r = rng(seed);
        let inst = random_spec(&mut r, 12).build().unwrap();
        let approx = Approximator::new(&inst.partition, &inst.target).unwrap();
        let beta = random_precision(&mut r);
        let g = approx.vprs(&beta).regions;
        if g.upper.is_empty() {
            prop_assert_eq!(g.accuracy, ExactRatio::one());
        } else {
            let expected = ExactRatio::new(g.lower.len() as i64, g.upper.len() as i64).unwrap();
            prop_assert_eq!(g.accuracy, expected);
        }
    }
}
