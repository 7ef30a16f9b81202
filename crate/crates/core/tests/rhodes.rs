use std::collections::BTreeMap;

use num_bigint::BigInt;
use thg_core::model::{Automorphism, Pi1Action, Whitehead};
use thg_core::rhodes::{
    classify, compute_g0, equivariant_g1_check, gottlieb_rhodes_invariants, oprea_check, prop37_check,
    rhodes_split_check, sigma1_group, sigma_invariants, theorem31_audit, Membership,
};
use thg_core::report::Status;
use thg_core::{
    CayleyGroup, Determined, ErrorKind, ExtNat, FgAbelian, IntMatrix, Pi1, SpaceModel, SubgroupData, TransformationModel,
    Verdict,
};

fn space(name: &str, pi1: Pi1, pi: Vec<(u32, FgAbelian)>, gottlieb: Vec<(u32, SubgroupData)>, truncation: u32) -> SpaceModel {
    SpaceModel {
        name: name.into(),
        truncation,
        aspherical: pi.is_empty(),
        pi1,
        pi: pi.into_iter().collect(),
        gottlieb: gottlieb.into_iter().collect(),
        whitehead: Whitehead::Trivial,
        pi1_action: Pi1Action::Trivial,
        note: None,
    }
}

fn s3() -> SpaceModel {
    let pi = vec![(2, FgAbelian::trivial()), (3, FgAbelian::free(1)), (4, FgAbelian::cyclic(2))];
    let g = (1..=4).map(|i| (i, SubgroupData::Full)).collect();
    space("s3", Pi1::Abelian(FgAbelian::trivial()), pi, g, 4)
}

fn s2() -> SpaceModel {
    let pi = vec![(2, FgAbelian::free(1)), (3, FgAbelian::free(1))];
    space("s2", Pi1::Abelian(FgAbelian::trivial()), pi, vec![(2, SubgroupData::Trivial)], 3)
}

fn t3() -> SpaceModel {
    space("t3", Pi1::Abelian(FgAbelian::free(3)), vec![], vec![(1, SubgroupData::Full)], 4)
}

fn acting(name: &str, x: SpaceModel, group: CayleyGroup) -> TransformationModel {
    let q = group.order();
    TransformationModel {
        name: name.into(),
        space: x,
        group,
        free: true,
        action: vec![BTreeMap::new(); q],
        cocycle: None,
        g0_explicit: None,
        sphere_dimension: None,
        orbit_gottlieb1: None,
        equivariant_gottlieb1: None,
        orbit_model: None,
    }
}

fn lens(group: CayleyGroup) -> TransformationModel {
    let mut t = acting("s3-g", s3(), group);
    t.sphere_dimension = Some(3);
    t
}

fn antipodal_s2() -> TransformationModel {
    let mut t = acting("s2-z2", s2(), CayleyGroup::cyclic(2));
    t.sphere_dimension = Some(2);
    t.action[1].insert(2, Automorphism::Matrix(IntMatrix::from_i64(&[&[-1]])));
    t
}

fn torus_involution() -> TransformationModel {
    let mut t = acting("t3-z2", t3(), CayleyGroup::cyclic(2));
    t.action[1].insert(1, Automorphism::Matrix(IntMatrix::from_i64(&[&[1, 0, 0], &[0, -1, 0], &[0, 0, -1]])));
    let zero = vec![BigInt::from(0); 3];
    let e1 = vec![BigInt::from(1), BigInt::from(0), BigInt::from(0)];
    t.cocycle = Some(vec![vec![zero.clone(), zero.clone()], vec![zero, e1.clone()]]);
    t.equivariant_gottlieb1 = Some(SubgroupData::Generators(IntMatrix::from_i64(&[&[1, 0, 0]])));
    t
}

fn memberships(t: &TransformationModel) -> Vec<Membership> {
    compute_g0(t).unwrap().verdicts.into_iter().map(|v| v.membership).collect()
}

#[test]
fn g0_rules() {
    assert!(memberships(&lens(CayleyGroup::quaternion())).iter().all(|m| *m == Membership::InG0));
    assert_eq!(memberships(&antipodal_s2()), [Membership::InG0, Membership::NotInG0]);
    assert_eq!(memberships(&torus_involution()), [Membership::InG0, Membership::NotInG0]);

    let mut unknown = lens(CayleyGroup::cyclic(3));
    unknown.sphere_dimension = None;
    let r = compute_g0(&unknown).unwrap();
    assert!(!r.is_determined());
    assert_eq!(r.is_whole(), Verdict::Indeterminate);
    assert_eq!(r.verdicts[0].rule, "identity-element");

    unknown.g0_explicit = Some(vec!["e".into()]);
    assert_eq!(compute_g0(&unknown).unwrap().is_whole(), Verdict::False);
}

#[test]
fn g0_of_trivial_group_is_whole() {
    let t = acting("s3-1", s3(), CayleyGroup::trivial());
    assert_eq!(compute_g0(&t).unwrap().is_whole(), Verdict::True);
    let s = sigma_invariants(&t, 3).unwrap();
    assert!(s.agree());
    assert_eq!(s.extension.free_rank, 1);
}

#[test]
fn explicit_g0_must_be_a_subgroup() {
    let mut t = lens(CayleyGroup::cyclic(4));
    t.g0_explicit = Some(vec!["e".into(), "g".into()]);
    assert_eq!(compute_g0(&t).unwrap_err().kind, ErrorKind::InvariantViolation);
}

#[test]
fn sigma_two_ways_and_split_sequence() {
    for t in [lens(CayleyGroup::cyclic(4)), lens(CayleyGroup::quaternion()), antipodal_s2(), torus_involution()] {
        for n in 1..=t.space.truncation {
            let s = sigma_invariants(&t, n).unwrap();
            assert!(s.agree(), "{} n={n}", t.name);
            if n >= 2 {
                assert!(rhodes_split_check(&t, n).unwrap().passed(), "{} n={n}", t.name);
            }
        }
    }
    assert_eq!(rhodes_split_check(&antipodal_s2(), 1).unwrap_err().kind, ErrorKind::InvalidInput);
    let s = sigma_invariants(&lens(CayleyGroup::quaternion()), 2).unwrap();
    assert_eq!(s.orbit.finite_order, ExtNat::from(8usize));
}

#[test]
fn sigma1_of_a_lens_space_is_the_group() {
    let g = sigma1_group(&lens(CayleyGroup::quaternion())).unwrap();
    assert!(g.is_isomorphic(&CayleyGroup::quaternion()).unwrap());
    let Determined::Known(gr) = gottlieb_rhodes_invariants(&lens(CayleyGroup::cyclic(4)), 1).unwrap() else {
        panic!("determined")
    };
    assert_eq!(gr.index, ExtNat::one());
    assert_eq!(gr.abelian, Some(true));
}

#[test]
fn non_free_actions_are_refused() {
    let mut t = lens(CayleyGroup::cyclic(2));
    t.free = false;
    assert_eq!(sigma_invariants(&t, 1).unwrap_err().kind, ErrorKind::Unsupported);
    assert_eq!(classify(&t, 1).unwrap_err().kind, ErrorKind::Unsupported);
}

#[test]
fn torus_involution_audits() {
    let t = torus_involution();
    let c = classify(&t, 4).unwrap();
    assert_eq!((c.gottlieb_fox, c.gottlieb_rhodes), (Verdict::True, Verdict::False));
    assert_eq!(c.orbit_gottlieb, Verdict::False);
    assert!(c.audit.passed());
    assert!(prop37_check(&t, 4).unwrap().passed());
    assert!(equivariant_g1_check(&t).unwrap().passed());
    assert_eq!(theorem31_audit(&t, 4).unwrap().count(Status::Violation), 0);
    assert_eq!(classify(&t, 5).unwrap_err().kind, ErrorKind::InsufficientData);
    assert_eq!(prop37_check(&lens(CayleyGroup::cyclic(4)), 4).unwrap_err().kind, ErrorKind::NotApplicable);
}

#[test]
fn odd_sphere_check_needs_orbit_data() {
    let mut t = lens(CayleyGroup::quaternion());
    let r = oprea_check(&t).unwrap();
    assert_eq!(r.count(Status::Indeterminate), 1);
    t.orbit_gottlieb1 = Some(SubgroupData::Center);
    assert!(oprea_check(&t).unwrap().passed());
    t.orbit_gottlieb1 = Some(SubgroupData::Trivial);
    assert!(!oprea_check(&t).unwrap().passed());
    t.orbit_gottlieb1 = Some(SubgroupData::Full);
    assert_eq!(oprea_check(&t).unwrap_err().kind, ErrorKind::InvariantViolation);
    assert_eq!(oprea_check(&antipodal_s2()).unwrap_err().kind, ErrorKind::NotApplicable);
}
