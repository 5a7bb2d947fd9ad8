use std::collections::BTreeSet;

use superbider_core::verifier::{
    case_ids, find_case, restrict_b, theorem_cases, verify, verify_sample, ComponentRule, Expected, ExpectedFamily,
    Shifts, Status, WindowSpec,
};
use superbider_core::{HalfInt, Parity, Scalar};

fn h(n: i64) -> HalfInt {
    HalfInt::from_int(n)
}

fn spec(n: i64, k: i64) -> WindowSpec {
    WindowSpec { n: Some(h(n)), k: Some(h(k)), n_int: None }
}

#[test]
fn case_ids_unique() {
    let ids = case_ids();
    assert_eq!(ids.len(), 14);
    assert_eq!(ids.iter().collect::<BTreeSet<_>>().len(), 14);
    for id in ["L3.1", "T3.2", "T3.3", "C3.4", "C3.5", "L4.3", "T4.4", "T4.5", "T5.1", "T5.2", "T5.4", "T5.6", "T5.8", "T6.3"] {
        assert!(find_case(id).is_some(), "{id}");
    }
    assert!(find_case("NOPE").is_none());
}

#[test]
fn restrict_b_filters() {
    let t = find_case("T3.3").unwrap();
    assert_eq!(t.samples.len(), 6);
    let one = restrict_b(&t, &Scalar::one());
    assert_eq!(one.samples.len(), 1);
    assert_eq!(one.samples[0].label, "b=1");
    assert!(restrict_b(&find_case("C3.4").unwrap(), &Scalar::one()).samples.is_empty());
}

#[test]
fn t32_passes_with_dimension_one() {
    let t = restrict_b(&find_case("T3.2").unwrap(), &Scalar::from_int(-1));
    let r = verify(&t, &WindowSpec { n: Some(h(6)), k: Some(h(2)), n_int: Some(h(2)) }).unwrap();
    assert_eq!(r.status(), Status::Pass);
    assert_eq!(r.samples[0].computed_dim, 1);
    assert!(r.samples[0].sound);
}

#[test]
fn t33_b2_is_zero() {
    let t = restrict_b(&find_case("T3.3").unwrap(), &Scalar::from_int(2));
    let r = verify(&t, &spec(6, 2)).unwrap();
    assert_eq!(r.status(), Status::Pass);
    assert_eq!(r.samples[0].computed_dim, 0);
}

#[test]
fn t58_dimension_is_shift_count() {
    let r = verify(&find_case("T5.8").unwrap(), &spec(5, 2)).unwrap();
    assert_eq!(r.status(), Status::Pass);
    let s = &r.samples[0];
    // every |k| <= 2 reaches an output H_{m+n+k} with |m+n+k| <= 5 from the interior |m|,|n| <= 1
    assert_eq!(s.computed_dim, 5);
    assert_eq!(s.expected_shifts, (-2..=2).map(h).collect::<Vec<_>>());
}

#[test]
fn wrong_family_fails_with_witness() {
    let mut t = restrict_b(&find_case("T3.2").unwrap(), &Scalar::from_int(-1));
    t.samples[0].expected = Expected::Family(ExpectedFamily {
        label: "λ(m+n) v_{m+n}".into(),
        parity: Parity::Even,
        shifts: Shifts::Zero,
        rules: vec![ComponentRule::new("L", Some("L"), "v", |m, n, _| m + n)],
    });
    let r = verify(&t, &spec(6, 2)).unwrap();
    assert_eq!(r.status(), Status::Fail);
    let s = &r.samples[0];
    assert!(!s.expected_in_computed || !s.computed_in_expected);
    assert!(s.witness.as_deref().unwrap().contains("outside"));
}

#[test]
fn tiny_window_is_reported() {
    for case in theorem_cases() {
        let r = verify(&case, &spec(2, 2)).unwrap();
        assert_eq!(r.status(), Status::WindowTooSmall, "{}", case.id);
    }
}

#[test]
fn skew_svir_split() {
    let t = find_case("T4.4").unwrap();
    for s in &t.samples {
        let r = verify_sample(s, &WindowSpec::default()).unwrap();
        assert_eq!(r.status, Status::Pass, "{}", s.label);
        let dim = if s.label == "b=-1" { 1 } else { 0 };
        assert_eq!(r.computed_dim, dim, "{}", s.label);
    }
}
