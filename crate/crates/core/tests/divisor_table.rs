use eqku_core::pushforward::{
    cohomology_profile_on_curve, degree_from_profile, divisor_table, profile_of_degree,
    EqLineBundle, TestCurve,
};
use proptest::prelude::*;

/// `(i, j) → (a, b, c)` as printed in the source table.
type Row = ((i64, u32), (i64, i64, i64));

const EXPECTED: [Row; 9] = [
    ((0, 0), (0, 0, 0)),
    ((0, 1), (1, -2, -1)),
    ((0, 2), (1, -1, -2)),
    ((1, 0), (0, 1, 0)),
    ((1, 1), (1, -1, -1)),
    ((1, 2), (0, 0, 1)),
    ((2, 0), (0, 2, 0)),
    ((2, 1), (0, 0, 2)),
    ((2, 2), (0, 1, 1)),
];

#[test]
fn table_matches_entrywise() {
    let t = divisor_table().unwrap();
    assert_eq!(t.len(), 9);
    for ((i, j), abc) in EXPECTED {
        assert_eq!(t.get(i, j).unwrap().as_tuple(), abc, "({i},{j})");
    }
}

#[test]
fn vanishing_rows_and_columns() {
    let t = divisor_table().unwrap();
    for k in 0..3 {
        assert_eq!(t.get(2, k).unwrap().a, 0);
        assert_eq!(t.get(k as i64, 0).unwrap().a, 0);
    }
}

#[test]
fn profiles_are_line_bundle_profiles() {
    for curve in TestCurve::ALL {
        for i in 0..=2 {
            for j in 0..3 {
                let (h0, h1) = cohomology_profile_on_curve(EqLineBundle::of(i, j), curve).unwrap();
                assert!(h0 == 0 || h1 == 0, "{curve:?} ({i},{j})");
            }
        }
    }
}

#[test]
fn render_is_stable() {
    let text = divisor_table().unwrap().render_text();
    assert_eq!(text.lines().count(), 11);
    assert!(text.ends_with("(2,2) → 0 1 1\n"));
}

proptest! {
    #[test]
    fn degree_round_trip(d in -50i64..50) {
        let (h0, h1) = profile_of_degree(d);
        prop_assert_eq!(degree_from_profile(h0, h1).unwrap(), d);
    }

    #[test]
    fn invalid_profiles_rejected(h0 in 1u64..20, h1 in 1u64..20) {
        prop_assert!(degree_from_profile(h0, h1).is_err());
    }
}
