mod oracle;

use std::collections::BTreeMap;

use proptest::prelude::*;
use thg_core::fox::{
    binomial, fox_sequence_check, gottlieb_fox_index, gottlieb_fox_invariants, is_n_gottlieb, loop_tau_invariants,
    multiplicities, prop26_crosscheck, recursive_multiplicities, tau_invariants,
};
use thg_core::model::{Pi1Action, Whitehead};
use thg_core::{CayleyGroup, ErrorKind, ExtNat, FgAbelian, Pi1, SpaceModel, Status, SubgroupData, Verdict};

fn space(name: &str, pi1: Pi1, pi: &[(u32, FgAbelian)], gottlieb: &[(u32, SubgroupData)], truncation: u32) -> SpaceModel {
    SpaceModel {
        name: name.into(),
        truncation,
        aspherical: pi.is_empty(),
        pi1,
        pi: pi.iter().cloned().collect(),
        gottlieb: gottlieb.iter().cloned().collect(),
        whitehead: Whitehead::Trivial,
        pi1_action: Pi1Action::Trivial,
        note: None,
    }
}

fn s3_groups() -> Vec<(u32, FgAbelian)> {
    vec![
        (2, FgAbelian::trivial()),
        (3, FgAbelian::free(1)),
        (4, FgAbelian::cyclic(2)),
        (5, FgAbelian::cyclic(2)),
        (6, FgAbelian::cyclic(12)),
    ]
}

fn all_full() -> Vec<(u32, SubgroupData)> {
    (1..=6).map(|i| (i, SubgroupData::Full)).collect()
}

fn s3() -> SpaceModel {
    space("S3", Pi1::Abelian(FgAbelian::trivial()), &s3_groups(), &all_full(), 6)
}

fn rp3() -> SpaceModel {
    space("RP3", Pi1::Abelian(FgAbelian::cyclic(2)), &s3_groups(), &all_full(), 6)
}

fn s3_mod(group: CayleyGroup, g1: SubgroupData) -> SpaceModel {
    let mut g = all_full();
    g[0].1 = g1;
    space("S3/G", Pi1::Finite(group), &s3_groups(), &g, 6)
}

fn torus() -> SpaceModel {
    space("T3", Pi1::Abelian(FgAbelian::free(3)), &[], &[(1, SubgroupData::Full)], 5)
}

#[test]
fn multiplicity_examples() {
    assert_eq!(multiplicities(3, 2).unwrap().gamma, 2);
    let m = multiplicities(4, 2).unwrap();
    assert_eq!((m.alpha, m.beta, m.gamma, m.beta + m.gamma), (1, 1, 3, 4));
    let m = multiplicities(1, 1).unwrap();
    assert_eq!((m.gamma, m.alpha), (1, 0));
    assert_eq!(multiplicities(2, 3).unwrap_err().kind, ErrorKind::InvalidInput);
}

#[test]
fn multiplicity_identities_against_pascal() {
    let t = oracle::pascal(40);
    for n in 1..=30i64 {
        let rec = recursive_multiplicities(n as u32);
        for i in 1..=n {
            let m = multiplicities(n as u32, i as u32).unwrap();
            assert_eq!(m.gamma as u128, oracle::choose(&t, n - 1, i - 1));
            assert_eq!(m.alpha as u128, oracle::choose(&t, n - 2, i - 2));
            assert_eq!(m.beta as u128, oracle::choose(&t, n - 1, i - 2));
            assert_eq!((m.beta + m.gamma) as u128, oracle::choose(&t, n, i - 1), "n={n} i={i}");
            if i >= 2 {
                let sum: u128 = (i..=n).map(|k| oracle::choose(&t, k - 2, i - 2)).sum();
                assert_eq!(sum, m.gamma as u128, "n={n} i={i}");
            }
            assert_eq!(rec.get(&(i as u32)).copied().unwrap_or(0), m.gamma);
        }
    }
}

#[test]
fn tau_examples() {
    for x in [s3(), rp3(), torus()] {
        let t1 = tau_invariants(&x, 1).unwrap();
        assert_eq!(t1.finite_order, x.pi1.order());
    }
    let t = tau_invariants(&s3(), 4).unwrap();
    assert_eq!(t.layer_product(), Some(FgAbelian::canonical_form(3, &[2]).unwrap()));
    assert_eq!((t.multiplicity(3), t.multiplicity(4)), (3, 1));
    let t = tau_invariants(&rp3(), 3).unwrap();
    assert_eq!(t.layer_product(), Some(FgAbelian::canonical_form(1, &[2]).unwrap()));
    assert!(t.is_direct_product);
    assert_eq!(tau_invariants(&s3(), 9).unwrap_err().kind, ErrorKind::InsufficientData);
}

#[test]
fn loop_kernel_examples() {
    let k = loop_tau_invariants(&s3(), 2).unwrap();
    assert!(k.layer_product().unwrap().is_trivial());
    let k = loop_tau_invariants(&s3(), 4).unwrap();
    assert_eq!(k.layer_product(), Some(FgAbelian::canonical_form(2, &[2]).unwrap()));
    let k = loop_tau_invariants(&torus(), 3).unwrap();
    assert!(k.layer_product().unwrap().is_trivial());
}

#[test]
fn gottlieb_fox_examples() {
    let g = gottlieb_fox_invariants(&rp3(), 1).unwrap().known().unwrap();
    assert_eq!(g.layer_product(), Some(FgAbelian::cyclic(2)));
    let lens = s3_mod(CayleyGroup::cyclic(4), SubgroupData::Full);
    let g = gottlieb_fox_invariants(&lens, 3).unwrap().known().unwrap();
    assert_eq!(g.multiplicity(1), 1);
    assert_eq!(g.multiplicity(3), 1);
    assert_eq!(g.layer(3).unwrap().group.abelian, Some(FgAbelian::free(1)));
    assert_eq!(g.layer(1).unwrap().group.order, ExtNat::from(4usize));

    let mut partial = s3();
    partial.gottlieb.remove(&4);
    assert!(gottlieb_fox_invariants(&partial, 4).unwrap().known().is_none());
    assert_eq!(is_n_gottlieb(&partial, 4).unwrap(), Verdict::Indeterminate);
}

#[test]
fn gottlieb_predicates() {
    let lens = s3_mod(CayleyGroup::cyclic(4), SubgroupData::Full);
    assert_eq!(is_n_gottlieb(&lens, 1).unwrap(), Verdict::True);
    let q = s3_mod(CayleyGroup::quaternion(), SubgroupData::Elements(vec!["1".into(), "-1".into()]));
    assert_eq!(is_n_gottlieb(&q, 1).unwrap(), Verdict::False);
    assert_eq!(gottlieb_fox_index(&q, 1).unwrap(), (Verdict::False, ExtNat::from(4usize)));
    assert_eq!(is_n_gottlieb(&s3(), 1).unwrap(), Verdict::True);
    let report = prop26_crosscheck(&q, 6).unwrap();
    assert!(report.passed());
    assert_eq!(report.count(Status::Fail), 0);
}

#[test]
fn sequence_checks_pass() {
    for x in [s3(), rp3(), torus(), s3_mod(CayleyGroup::quaternion(), SubgroupData::Center)] {
        for n in 2..=x.truncation {
            let r = fox_sequence_check(&x, n).unwrap();
            assert!(r.passed(), "{} n={n}: {:?}", x.name, r.failures().collect::<Vec<_>>());
        }
        assert!(prop26_crosscheck(&x, x.truncation).unwrap().passed());
    }
}

#[test]
fn missing_gottlieb_data_is_never_trivial() {
    let mut x = s3();
    x.gottlieb = BTreeMap::new();
    assert_eq!(is_n_gottlieb(&x, 3).unwrap(), Verdict::Indeterminate);
    // trivial pi_2 forces G_2
    assert_eq!(is_n_gottlieb(&x, 2).unwrap(), Verdict::True);
}

fn finite_space() -> impl Strategy<Value = SpaceModel> {
    let group = prop::collection::vec(2i64..=6, 0..3);
    (prop::collection::vec(group, 4), 0usize..4).prop_map(|(groups, full_upto)| {
        let pi: Vec<(u32, FgAbelian)> = groups
            .iter()
            .enumerate()
            .map(|(k, t)| (k as u32 + 2, FgAbelian::canonical_form(0, t).unwrap()))
            .collect();
        let gottlieb: Vec<(u32, SubgroupData)> = (1..=5u32)
            .map(|i| (i, if (i as usize) <= full_upto + 1 { SubgroupData::Full } else { SubgroupData::Trivial }))
            .collect();
        space("random", Pi1::Abelian(FgAbelian::cyclic(2)), &pi, &gottlieb, 5)
    })
}

proptest! {
    #[test]
    fn tau_order_is_the_binomial_product(x in finite_space(), n in 1u32..=5) {
        let t = tau_invariants(&x, n).unwrap();
        let mut want = ExtNat::one();
        for i in 1..=n {
            let gamma = binomial(i64::from(n) - 1, i64::from(i) - 1);
            let order = if i == 1 { x.pi1.order() } else { x.pi_abelian(i).unwrap().order() };
            want = &want * &order.pow(gamma);
        }
        prop_assert_eq!(t.finite_order, want);
        if n >= 2 {
            prop_assert!(fox_sequence_check(&x, n).unwrap().passed());
        }
        prop_assert!(prop26_crosscheck(&x, n).unwrap().passed());
    }
}
