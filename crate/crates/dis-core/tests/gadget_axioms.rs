//! Empirical axiom checks for every gadget/problem pairing the reductions
//! certify, over the standard extension family (single, twin, ten seeded
//! random B-extensions with up to four fresh vertices).

use dis_core::gadgets::{check_gadget, from_name, CheckFailure, CheckOptions, Verdict};
use dis_core::graph::Radius;
use dis_core::problems::IdentifyingProblem;
use dis_core::solver::is_dis;

const SEED: u64 = 2026;

fn assert_combo_passes(gadget_name: &str, problem_name: &str) {
    let gadget = from_name(gadget_name).unwrap();
    let problem = IdentifyingProblem::from_selection(problem_name).unwrap();
    let family = gadget.standard_family(SEED, 10, 4);
    let all_exact = family
        .iter()
        .all(|m| m.graph.vertex_count() <= CheckOptions::default().exact_limit);
    let report = check_gadget(&gadget, &problem, &family, &CheckOptions::default());
    let tag = format!("{gadget_name} / {problem_name}");
    assert!(report.p_h.passed(), "{tag} p_h: {:?}", report.p_h);
    assert!(report.p_b.passed(), "{tag} p_b: {:?}", report.p_b);
    assert!(report.p_d.passed(), "{tag} p_d: {:?}", report.p_d);
    if all_exact {
        assert!(report.p_s.passed(), "{tag} p_s: {:?}", report.p_s);
    } else {
        assert!(!report.p_s.failed(), "{tag} p_s: {:?}", report.p_s);
    }
    match (&report.p_l, gadget.meta().local) {
        (Some(v), true) => assert!(v.passed(), "{tag} p_l: {v:?}"),
        (None, false) => {}
        other => panic!("{tag} p_l presence mismatch: {other:?}"),
    }
    assert!(report.gadget_ok(), "{tag}");
}

#[test]
fn one_layered_gadget_for_one_layered_problems() {
    assert_combo_passes("1layered", "ld:1");
    assert_combo_passes("1layered", "md:inf");
}

#[test]
fn local_gadget_for_local_zero_layered_problems() {
    for r in 1..=2 {
        assert_combo_passes(&format!("local0:{r}"), &format!("md:{r}"));
        assert_combo_passes(&format!("local0:{r}"), &format!("ld:{r}"));
    }
}

#[test]
fn ic_gadget_for_identifying_codes() {
    assert_combo_passes("ic:1", "ic:1");
    assert_combo_passes("ic:2", "ic:2");
}

/// `ic:2` extensions can exceed the 18-vertex exact limit; restricted to a
/// family that stays within it, `p_s` must come back as a hard pass.
#[test]
fn ic2_exact_within_the_limit() {
    let gadget = from_name("ic:2").unwrap();
    let problem = IdentifyingProblem::from_selection("ic:2").unwrap();
    let family = gadget.standard_family(SEED, 6, 2);
    assert!(family.iter().all(|m| m.graph.vertex_count() <= 18));
    let report = check_gadget(&gadget, &problem, &family, &CheckOptions::default());
    assert!(report.p_s.passed(), "{:?}", report.p_s);
    assert!(report.gadget_ok());
}

/// The checker itself must flag violations: a predicate that never
/// separates anything fails `p_h` on the very first pair.
#[test]
fn checker_reports_failures() {
    let gadget = from_name("1layered").unwrap();
    let bogus = IdentifyingProblem::custom("never", Radius::Finite(1), Vec::new(), |_, _, _, _| {
        false
    });
    let family = gadget.standard_family(SEED, 0, 1);
    let report = check_gadget(&gadget, &bogus, &family, &CheckOptions::default());
    assert_eq!(
        report.p_h,
        Verdict::Fail(CheckFailure::UnseparatedPair {
            member: "single".into(),
            u: 0,
            v: 1,
        })
    );
    assert!(!report.gadget_ok());
}

#[test]
fn reports_are_deterministic() {
    let gadget = from_name("local0:1").unwrap();
    let problem = IdentifyingProblem::from_selection("md:1").unwrap();
    let family = gadget.standard_family(SEED, 10, 4);
    let a = check_gadget(&gadget, &problem, &family, &CheckOptions::default());
    let b = check_gadget(&gadget, &problem, &family, &CheckOptions::default());
    assert_eq!(a, b);
}

/// Spot-check the p_s machinery from the outside: on the twin extension of
/// the 1-layered gadget, the code plus one fresh twin is a valid DIS for
/// md:inf, and it keeps |C| vertices inside the gadget.
#[test]
fn code_plus_fresh_twin_solves_the_twin_extension() {
    let gadget = from_name("1layered").unwrap();
    let problem = IdentifyingProblem::from_selection("md:inf").unwrap();
    let ext = gadget.twin_extension();
    let mut candidate: Vec<usize> = gadget.code().to_vec();
    candidate.push(10); // first fresh twin
    assert!(is_dis(&ext, &problem, &candidate));
}
