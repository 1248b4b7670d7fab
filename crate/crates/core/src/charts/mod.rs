//! Affine charts of `Bl_{M^G} P⁵` and of `Bl_{E0×E1}(P² × P²)`.
//!
//! The blow-up of `P⁵` along the two fixed planes sits in `P⁵ × P² × P²`
//! with coordinates `x0..x5`, `[y0:y1:y2]`, `[y3:y4:y5]` and the six bilinear
//! equations `x_a y_b = x_b y_a` inside each block. The chart `U_{i,j,k}` is
//! `x_i = y_j = y_k = 1`. The generator acts on `x3, x4, x5` by `χ1`.

mod equations;
mod smooth;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::{Poly, PolyError};

pub use equations::{
    chart_equation, chart_isomorphism_check, chart_isomorphism_check_with, evident_renaming,
    isomorphism_sweep, quotient_chart_equation, w_chart_equation, CubicPair, QuotientEquation,
    SweepEntry, WChart, CUBIC_MONOMIALS,
};
pub use smooth::{
    ramification_order, smoothness_evidence, SingularChart, SmoothnessReport, EVIDENCE_NOTE,
};

/// Order of the acting group.
pub const GROUP_ORDER: u32 = 3;

/// Weights of `x0..x5`.
pub const AMBIENT_WEIGHTS: [u32; 6] = [0, 0, 0, 1, 1, 1];

pub fn ambient_vars() -> Vec<String> {
    (0..6)
        .map(|a| format!("x{a}"))
        .chain((0..6).map(|b| format!("y{b}")))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChartError {
    #[error("index ({i},{j},{k}) is out of range")]
    InvalidIndex { i: usize, j: usize, k: usize },
    #[error("chart {index:?} is contained in chart {subsumed_by:?}")]
    RedundantChart {
        index: (usize, usize, usize),
        subsumed_by: (usize, usize, usize),
    },
    #[error("{0} is not a polynomial in the invariant generators")]
    NotInvariantExpressible(String),
    #[error("{0} is not a form of degree 3 in three variables")]
    NotCubic(String),
    #[error("{p} is not a usable prime")]
    BadPrime { p: u64 },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// The two families of non-redundant charts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ChartKind {
    /// `i = j < 3`.
    FirstBlock,
    /// `i = k ≥ 3`.
    SecondBlock,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineChart {
    pub index: (usize, usize, usize),
    pub kind: ChartKind,
    pub free: Vec<String>,
    pub weights: Vec<u32>,
    /// Every eliminated ambient coordinate, as a polynomial in `free`.
    pub relations: BTreeMap<String, Poly>,
}

impl AffineChart {
    /// Images of `x0..x5, y0..y5` in the chart's coordinate ring.
    pub fn ambient_images(&self) -> Vec<Poly> {
        ambient_vars()
            .iter()
            .map(|v| match self.relations.get(v) {
                Some(p) => p.clone(),
                None => Poly::var(&self.free, v).expect("free coordinates cover the rest"),
            })
            .collect()
    }

    /// The six equations `x_a y_b - x_b y_a`, pulled back to the chart.
    pub fn pulled_back_relations(&self) -> Vec<Poly> {
        let images = self.ambient_images();
        bilinear_equations()
            .iter()
            .map(|e| e.substitute(&images).expect("twelve images"))
            .collect()
    }

    /// The single coordinate of nonzero weight.
    pub fn weighted_coordinate(&self) -> Option<usize> {
        self.weights.iter().position(|&w| w != 0)
    }
}

impl fmt::Display for AffineChart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (i, j, k) = self.index;
        write!(f, "U(x{i},y{j},y{k}) free ({})", self.free.join(", "))
    }
}

/// `x_a y_b - x_b y_a` for `a < b` within each block, in ambient variables.
pub fn bilinear_equations() -> Vec<Poly> {
    let vars = ambient_vars();
    let v = |name: String| Poly::var(&vars, &name).expect("ambient variable");
    let mut out = Vec::new();
    for block in [0..3, 3..6] {
        let idx: Vec<usize> = block.collect();
        for (n, &a) in idx.iter().enumerate() {
            for &b in &idx[n + 1..] {
                let lhs = &v(format!("x{a}")) * &v(format!("y{b}"));
                let rhs = &v(format!("x{b}")) * &v(format!("y{a}"));
                out.push(&lhs - &rhs);
            }
        }
    }
    out
}

fn ones_images(i: usize, j: usize, k: usize) -> Vec<Poly> {
    let vars = ambient_vars();
    let fixed = [format!("x{i}"), format!("y{j}"), format!("y{k}")];
    vars.iter()
        .map(|v| {
            if fixed.contains(v) {
                Poly::one(&vars)
            } else {
                Poly::var(&vars, v).expect("ambient variable")
            }
        })
        .collect()
}

/// If setting `x_i = y_j = y_k = 1` turns a bilinear equation into `±(1 - m)`
/// for a monomial `m`, every variable of `m` is a unit on the chart. The `x`
/// variable of `m` then names a chart containing this one.
fn subsuming_chart(i: usize, j: usize, k: usize) -> Option<(usize, usize, usize)> {
    let ones = ones_images(i, j, k);
    for eq in bilinear_equations() {
        let e = eq.substitute(&ones).expect("twelve images");
        if e.num_terms() != 2 {
            continue;
        }
        let constant = e.terms().find(|(ex, _)| ex.iter().all(|&d| d == 0));
        let other = e.terms().find(|(ex, _)| ex.iter().any(|&d| d != 0));
        let (Some((_, c0)), Some((mono, c1))) = (constant, other) else {
            continue;
        };
        if c0 != &-c1.clone() {
            continue;
        }
        let a = mono[..6].iter().position(|&d| d > 0)?;
        return Some(if a < 3 { (a, a, k) } else { (a, j, a) });
    }
    None
}

pub fn blowup_chart(i: usize, j: usize, k: usize) -> Result<AffineChart, ChartError> {
    if i > 5 || j > 2 || !(3..=5).contains(&k) {
        return Err(ChartError::InvalidIndex { i, j, k });
    }
    if let Some(subsumed_by) = subsuming_chart(i, j, k) {
        return Err(ChartError::RedundantChart {
            index: (i, j, k),
            subsumed_by,
        });
    }
    // After the subsumption check, `i` equals `j` or `k`. Coordinates are laid
    // out as two from the first block, the surviving `x` of the block not
    // containing `i`, then two from the second block.
    let x = |a: usize| format!("x{a}");
    let y = |a: usize| format!("y{a}");
    let weight = |a: usize| (AMBIENT_WEIGHTS[a] + GROUP_ORDER - AMBIENT_WEIGHTS[i]) % GROUP_ORDER;
    let (kind, t) = if i < 3 {
        (ChartKind::FirstBlock, k)
    } else {
        (ChartKind::SecondBlock, j)
    };

    let mut free = Vec::new();
    let mut weights = Vec::new();
    for a in (0..3).filter(|&a| a != j) {
        free.push(if kind == ChartKind::FirstBlock {
            x(a)
        } else {
            y(a)
        });
        weights.push(0);
    }
    free.push(x(t));
    weights.push(weight(t));
    for b in (3..6).filter(|&b| b != k) {
        free.push(y(b));
        weights.push(0);
    }

    let var = |name: &str| Poly::var(&free, name).expect("free coordinate");
    let one = Poly::one(&free);
    let mut relations = BTreeMap::new();
    relations.insert(x(i), one.clone());
    relations.insert(y(j), one.clone());
    relations.insert(y(k), one.clone());
    match kind {
        ChartKind::FirstBlock => {
            for a in (0..3).filter(|&a| a != i) {
                relations.insert(y(a), var(&x(a)));
            }
            for b in (3..6).filter(|&b| b != k) {
                relations.insert(x(b), &var(&x(k)) * &var(&y(b)));
            }
        }
        ChartKind::SecondBlock => {
            for a in (0..3).filter(|&a| a != j) {
                relations.insert(x(a), &var(&x(j)) * &var(&y(a)));
            }
            for b in (3..6).filter(|&b| b != i) {
                relations.insert(x(b), var(&y(b)));
            }
        }
    }
    Ok(AffineChart {
        index: (i, j, k),
        kind,
        free,
        weights,
        relations,
    })
}

/// All charts that survive the subsumption check, in index order.
pub fn all_charts() -> Vec<AffineChart> {
    let mut out = Vec::new();
    for i in 0..6 {
        for j in 0..3 {
            for k in 3..6 {
                if let Ok(c) = blowup_chart(i, j, k) {
                    out.push(c);
                }
            }
        }
    }
    out
}

/// A monomial invariant generator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct InvariantGenerator {
    pub name: String,
    pub exponents: Vec<u32>,
}

/// Minimal monomial generators of the invariants of `Z/r` acting diagonally
/// with `weights` on the variables `names`.
pub fn invariant_generators(names: &[String], weights: &[u32], r: u32) -> Vec<InvariantGenerator> {
    let n = names.len();
    let mut candidates: Vec<Vec<u32>> = Vec::new();
    // Every monomial of degree at most r, graded so divisors come first.
    for deg in 1..=r {
        let mut e = vec![0u32; n];
        enumerate_degree(&mut e, 0, deg, &mut candidates);
    }
    let mut gens: Vec<Vec<u32>> = Vec::new();
    for e in candidates {
        let w: u32 = e.iter().zip(weights).map(|(a, w)| a * w).sum();
        if !w.is_multiple_of(r) {
            continue;
        }
        let reducible = gens.iter().any(|g| g.iter().zip(&e).all(|(a, b)| a <= b));
        if !reducible {
            gens.push(e);
        }
    }
    // Present in variable order: the generator involving the earliest variable first.
    gens.sort_by(|a, b| {
        let first = |e: &Vec<u32>| e.iter().position(|&d| d > 0).unwrap_or(n);
        first(a).cmp(&first(b)).then_with(|| b.cmp(a))
    });
    gens.into_iter()
        .map(|e| InvariantGenerator {
            name: generator_name(names, &e, r),
            exponents: e,
        })
        .collect()
}

fn enumerate_degree(e: &mut Vec<u32>, pos: usize, left: u32, out: &mut Vec<Vec<u32>>) {
    if pos + 1 == e.len() {
        e[pos] = left;
        out.push(e.clone());
        e[pos] = 0;
        return;
    }
    for d in (0..=left).rev() {
        e[pos] = d;
        enumerate_degree(e, pos + 1, left - d, out);
    }
    e[pos] = 0;
}

fn generator_name(names: &[String], e: &[u32], r: u32) -> String {
    let support: Vec<usize> = (0..e.len()).filter(|&v| e[v] > 0).collect();
    match support.as_slice() {
        [v] if e[*v] == 1 => names[*v].clone(),
        [v] if e[*v] == r => format!("{}'", names[*v]),
        _ => support
            .iter()
            .map(|&v| match e[v] {
                1 => names[v].clone(),
                d => format!("{}^{d}", names[v]),
            })
            .collect::<Vec<_>>()
            .join("*"),
    }
}

pub fn invariant_ring_chart(chart: &AffineChart) -> Vec<InvariantGenerator> {
    invariant_generators(&chart.free, &chart.weights, GROUP_ORDER)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(gens: &[InvariantGenerator]) -> Vec<String> {
        gens.iter().map(|g| g.name.clone()).collect()
    }

    #[test]
    fn chart_003() {
        let c = blowup_chart(0, 0, 3).unwrap();
        assert_eq!(c.free, ["x1", "x2", "x3", "y4", "y5"]);
        assert_eq!(c.weights, [0, 0, 1, 0, 0]);
        assert_eq!(c.relations["y1"].to_string(), "x1");
        assert_eq!(c.relations["x4"].to_string(), "x3*y4");
        assert_eq!(
            names(&invariant_ring_chart(&c)),
            ["x1", "x2", "x3'", "y4", "y5"]
        );
    }

    #[test]
    fn chart_303() {
        let c = blowup_chart(3, 0, 3).unwrap();
        assert_eq!(c.free, ["y1", "y2", "x0", "y4", "y5"]);
        assert_eq!(c.weights, [0, 0, 2, 0, 0]);
        assert_eq!(c.relations["x1"].to_string(), "y1*x0");
        assert_eq!(c.relations["x4"].to_string(), "y4");
    }

    #[test]
    fn redundancy_and_range() {
        assert_eq!(
            blowup_chart(0, 1, 3),
            Err(ChartError::RedundantChart {
                index: (0, 1, 3),
                subsumed_by: (1, 1, 3)
            })
        );
        assert!(matches!(
            blowup_chart(4, 0, 3),
            Err(ChartError::RedundantChart {
                subsumed_by: (3, 0, 3),
                ..
            })
        ));
        assert!(matches!(
            blowup_chart(6, 0, 3),
            Err(ChartError::InvalidIndex { .. })
        ));
        assert!(matches!(
            blowup_chart(0, 0, 2),
            Err(ChartError::InvalidIndex { .. })
        ));
        assert_eq!(all_charts().len(), 18);
    }

    #[test]
    fn relations_kill_bilinear_equations() {
        for c in all_charts() {
            for e in c.pulled_back_relations() {
                assert!(e.is_zero(), "{c}: {e}");
            }
        }
    }

    #[test]
    fn generator_examples() {
        let n: Vec<String> = ["s", "t", "u", "v", "w"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(
            names(&invariant_generators(&n, &[0; 5], 3)),
            ["s", "t", "u", "v", "w"]
        );
        let g = names(&invariant_generators(&n, &[1, 1, 0, 0, 0], 3));
        for want in ["s'", "s^2*t", "s*t^2", "t'", "u", "v", "w"] {
            assert!(g.contains(&want.to_string()), "{want} in {g:?}");
        }
        assert_eq!(g.len(), 7);
    }
}
