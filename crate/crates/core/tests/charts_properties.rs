use eqku_core::charts::{
    all_charts, blowup_chart, chart_equation, chart_isomorphism_check_with, invariant_ring_chart,
    isomorphism_sweep, quotient_chart_equation, ramification_order, smoothness_evidence, ChartKind,
    CubicPair, WChart, GROUP_ORDER,
};
use eqku_core::poly::Poly;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

fn random_pair(seed: u64) -> CubicPair {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut coeffs = || {
        (0..10)
            .map(|_| {
                BigRational::new(
                    rng.gen_range(-9i64..=9).into(),
                    rng.gen_range(1i64..=7).into(),
                )
            })
            .collect::<Vec<_>>()
    };
    let (a, b) = (coeffs(), coeffs());
    CubicPair::from_coefficients(&a, &b).unwrap()
}

#[test]
fn eighteen_charts_split_evenly() {
    let charts = all_charts();
    assert_eq!(charts.len(), 18);
    let first = charts
        .iter()
        .filter(|c| c.kind == ChartKind::FirstBlock)
        .count();
    assert_eq!(first, 9);
    for c in &charts {
        let (i, j, k) = c.index;
        assert!(i == j || i == k);
        assert_eq!(c.free.len(), 5);
    }
}

#[test]
fn generators_are_invariant() {
    for c in all_charts() {
        for g in invariant_ring_chart(&c) {
            let w: u32 = g.exponents.iter().zip(&c.weights).map(|(a, b)| a * b).sum();
            assert_eq!(w % GROUP_ORDER, 0, "{c}: {}", g.name);
        }
    }
}

#[test]
fn chart_equation_is_invariant_upstairs() {
    let pairs = [CubicPair::fermat(), random_pair(1)];
    for cubics in &pairs {
        for c in all_charts() {
            for (e, _) in chart_equation(cubics, &c).terms() {
                let w: u32 = e.iter().zip(&c.weights).map(|(a, b)| a * b).sum();
                assert_eq!(w % GROUP_ORDER, 0, "{c}");
            }
        }
    }
}

#[test]
fn generic_quotient_equation_has_the_expected_shape() {
    // F0(1, x1, x2) + x3'·F1(1, y4, y5) by direct substitution.
    let cubics = random_pair(7);
    let c = blowup_chart(0, 0, 3).unwrap();
    let q = quotient_chart_equation(&cubics, &c).unwrap().equation;
    let vars = q.vars().to_vec();
    let v = |n: &str| Poly::var(&vars, n).unwrap();
    let one = Poly::one(&vars);
    let f0 = cubics
        .f0()
        .substitute(&[one.clone(), v("x1"), v("x2")])
        .unwrap();
    let f1 = cubics.f1().substitute(&[one, v("y4"), v("y5")]).unwrap();
    assert_eq!(q, &f0 + &(&v("x3'") * &f1));
}

#[test]
fn isomorphism_holds_for_random_pairs() {
    for seed in 0..4 {
        let sweep = isomorphism_sweep(&random_pair(seed)).unwrap();
        assert_eq!(sweep.len(), 18);
        assert!(sweep.iter().all(|(_, _, ok)| *ok), "seed {seed}");
    }
}

#[test]
fn mismatched_w_chart_is_rejected() {
    // Pair U(x0,y0,y3) with the W chart centred at x̃4 instead of x̃3.
    let cubics = random_pair(11);
    let c = blowup_chart(0, 0, 3).unwrap();
    let w = WChart::new(0, 4, 1).unwrap();
    let map: BTreeMap<String, String> = [
        ("~x1", "x1"),
        ("~x2", "x2"),
        ("~y0", "x3'"),
        ("~x3", "y4"),
        ("~x5", "y5"),
    ]
    .into_iter()
    .map(|(a, b)| (a.to_string(), b.to_string()))
    .collect();
    assert!(!chart_isomorphism_check_with(&cubics, &c, &w, &map).unwrap());
}

#[test]
fn singular_pair_is_detected() {
    let mut c0 = [0; 10];
    c0[6] = 1; // x1³
    let mut c1 = [0; 10];
    c1[6] = 1; // x4³
    let r = smoothness_evidence(&CubicPair::from_integers(&c0, &c1), 7).unwrap();
    assert!(!r.is_empty());
    let chart = r.singular.iter().find(|s| s.chart == (0, 0, 3)).unwrap();
    assert!(chart.sample.contains(&vec![0, 0, 0, 0, 0]));
}

#[test]
fn fermat_has_no_singular_points_mod_7() {
    let r = smoothness_evidence(&CubicPair::fermat(), 7).unwrap();
    assert!(r.is_empty(), "{:?}", r.singular);
    assert!(r.note.contains("evidence"));
}

#[test]
fn ramification_orders() {
    for n in 1..10 {
        assert_eq!(ramification_order(n), Some(n - 1));
    }
}
