//! Independent checks of the cohomology engine against explicit monomial
//! enumeration, Serre duality and Euler characteristics.

use eqku_core::chars::{invariants_dim, CharMultiset, Character};
use eqku_core::cohomology::{
    cohomology_Pn, cohomology_hypersurface, dimensions_pn, HypersurfaceSpec, WeightedProjSpace,
};
use proptest::prelude::*;

const R: u32 = 3;

fn weight_vectors(len: usize) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..R).map(move |w| {
                    let mut v = v.clone();
                    v.push(w);
                    v
                })
            })
            .collect();
    }
    out
}

/// Every integer vector with entries in `lo..=hi` and sum `total`.
fn exponent_vectors(len: usize, total: i64, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    if len == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for a in lo..=hi {
        for mut rest in exponent_vectors(len - 1, total - a, lo, hi) {
            rest.insert(0, a);
            out.push(rest);
        }
    }
    out
}

fn tally(weights: &[u32], vectors: &[Vec<i64>]) -> Vec<u64> {
    let mut m = vec![0u64; R as usize];
    for v in vectors {
        let c: i64 = v.iter().zip(weights).map(|(a, &w)| a * i64::from(w)).sum();
        m[c.rem_euclid(i64::from(R)) as usize] += 1;
    }
    m
}

#[test]
fn brute_force_monomials_match_for_small_spaces() {
    for n in 1..=3usize {
        for w in weight_vectors(n + 1) {
            let p = WeightedProjSpace::from_values(&w, R).unwrap();
            for d in -9..=9i64 {
                let h = cohomology_Pn(&p, d);
                let h0 = if d >= 0 {
                    tally(&w, &exponent_vectors(n + 1, d, 0, d))
                } else {
                    vec![0; 3]
                };
                let hn = tally(&w, &exponent_vectors(n + 1, d, d, -1));
                assert_eq!(
                    h.get(0).multiplicities(),
                    h0.as_slice(),
                    "H^0 n={n} w={w:?} d={d}"
                );
                assert_eq!(
                    h.get(n).multiplicities(),
                    hn.as_slice(),
                    "H^n n={n} w={w:?} d={d}"
                );
                for l in 1..n {
                    assert!(h.get(l).is_zero());
                }
            }
        }
    }
}

#[test]
fn serre_duality_on_weighted_spaces() {
    for n in 1..=3usize {
        for w in weight_vectors(n + 1) {
            let p = WeightedProjSpace::from_values(&w, R).unwrap();
            let total = p.weight_sum();
            for d in -9..=9i64 {
                let top = cohomology_Pn(&p, d).get(n);
                let dual = cohomology_Pn(&p, -d - n as i64 - 1).get(0);
                let mut expected = CharMultiset::empty(R).unwrap();
                for (c, m) in dual.iter() {
                    let ch = c.try_add(total).unwrap().inverse();
                    expected.insert(ch, m).unwrap();
                }
                assert_eq!(top, expected, "n={n} w={w:?} d={d}");
            }
        }
    }
}

#[test]
fn closed_form_dimensions() {
    for n in 1..=4usize {
        let p = WeightedProjSpace::from_values(&vec![0; n + 1], R).unwrap();
        for d in -12..=12 {
            let h = cohomology_Pn(&p, d);
            assert_eq!(
                (h.get(0).total_dim(), h.get(n).total_dim()),
                dimensions_pn(n, d)
            );
        }
    }
    assert_eq!(dimensions_pn(2, 2), (6, 0));
    assert_eq!(dimensions_pn(2, -4), (0, 3));
    assert_eq!(dimensions_pn(5, 1), (6, 0));
}

#[test]
fn plane_cubic_euler_characteristic() {
    for w in [[0, 0, 1], [0, 1, 1], [0, 0, 0], [0, 1, 2]] {
        let p = WeightedProjSpace::from_values(&w, R).unwrap();
        let c = HypersurfaceSpec::new(p, 3, Character::chi(0)).unwrap();
        for d in -4..=4 {
            let h = cohomology_hypersurface(&c, d).unwrap();
            let chi = h.get(0).total_dim() as i64 - h.get(1).total_dim() as i64;
            assert_eq!(chi, 3 * d, "w={w:?} d={d}");
        }
    }
}

fn signed(h: &eqku_core::GradedCharMultiset, c: Character) -> i64 {
    h.euler_char_of(c)
}

#[test]
fn hypersurface_euler_identity_per_character() {
    for n in 1..=3usize {
        for w in weight_vectors(n + 1) {
            for e in 1..=3u32 {
                for f in 0..R {
                    let p = WeightedProjSpace::from_values(&w, R).unwrap();
                    let fc = Character::chi(f);
                    let spec = HypersurfaceSpec::new(p.clone(), e, fc).unwrap();
                    for d in -6..=6i64 {
                        let Ok(h) = cohomology_hypersurface(&spec, d) else {
                            continue;
                        };
                        let amb = cohomology_Pn(&p, d);
                        let src = cohomology_Pn(&p, d - i64::from(e));
                        for j in 0..R {
                            let c = Character::chi(j);
                            let rhs = signed(&amb, c) - signed(&src, c.try_sub(fc).unwrap());
                            assert_eq!(signed(&h, c), rhs, "n={n} w={w:?} e={e} F={f} d={d} χ{j}");
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn reference_character_decompositions() {
    let cubic = |w: [u32; 3]| {
        HypersurfaceSpec::new(
            WeightedProjSpace::from_values(&w, R).unwrap(),
            3,
            Character::chi(0),
        )
        .unwrap()
    };
    let c = cubic([0, 0, 1]);
    let ms = |v: [u64; 3]| CharMultiset::from_vec(v.to_vec()).unwrap();
    assert_eq!(
        cohomology_hypersurface(&c, 0).unwrap().get(1),
        ms([0, 0, 1])
    );
    assert_eq!(
        cohomology_hypersurface(&c, 1).unwrap().get(0),
        ms([2, 1, 0])
    );
    assert_eq!(
        cohomology_hypersurface(&c, 2).unwrap().get(0),
        ms([3, 2, 1])
    );

    let p5 = WeightedProjSpace::from_values(&[0, 0, 0, 1, 1, 1], R).unwrap();
    let m = HypersurfaceSpec::new(p5, 3, Character::chi(0)).unwrap();
    let h = cohomology_hypersurface(&m, 1).unwrap();
    assert_eq!(h.get(0), ms([3, 3, 0]));
    assert!((1..=4).all(|l| h.get(l).is_zero()));

    let p1 = WeightedProjSpace::from_values(&[0, 1], R).unwrap();
    assert_eq!(cohomology_Pn(&p1, 1).get(0), ms([1, 1, 0]));
    assert_eq!(cohomology_Pn(&p1, 2).get(0), ms([1, 1, 1]));
}

fn multiset() -> impl Strategy<Value = CharMultiset> {
    (1u32..8).prop_flat_map(|r| {
        prop::collection::vec(0u64..50, r as usize).prop_map(|v| CharMultiset::from_vec(v).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn invariants_sum_to_total(v in multiset()) {
        let r = v.order();
        let sum: u64 = (0..r).map(|j| invariants_dim(&v, Character::new(j, r).unwrap()).unwrap()).sum();
        prop_assert_eq!(sum, v.total_dim());
        prop_assert_eq!(
            invariants_dim(&v, Character::trivial(r).unwrap()).unwrap(),
            v.multiplicity(Character::trivial(r).unwrap())
        );
    }

    #[test]
    fn invariants_are_additive(a in prop::collection::vec(0u64..50, 3), b in prop::collection::vec(0u64..50, 3), j in 0u32..3) {
        let a = CharMultiset::from_vec(a).unwrap();
        let b = CharMultiset::from_vec(b).unwrap();
        let c = Character::chi(j);
        prop_assert_eq!(
            invariants_dim(&(&a + &b), c).unwrap(),
            invariants_dim(&a, c).unwrap() + invariants_dim(&b, c).unwrap()
        );
    }

    #[test]
    fn large_degrees_use_closed_forms(d in -400i64..400, n in 1usize..6) {
        let p = WeightedProjSpace::from_values(&vec![0; n + 1], R).unwrap();
        let h = cohomology_Pn(&p, d);
        prop_assert_eq!((h.get(0).total_dim(), h.get(n).total_dim()), dimensions_pn(n, d));
    }
}
