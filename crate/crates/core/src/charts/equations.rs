use std::collections::BTreeMap;

use num_rational::BigRational;

use crate::poly::{rational, Poly};

use super::{
    ambient_vars, invariant_ring_chart, AffineChart, ChartError, ChartKind, InvariantGenerator,
};

/// Exponents of the ten cubic monomials in three variables, lexicographic.
pub const CUBIC_MONOMIALS: [[u32; 3]; 10] = [
    [3, 0, 0],
    [2, 1, 0],
    [2, 0, 1],
    [1, 2, 0],
    [1, 1, 1],
    [1, 0, 2],
    [0, 3, 0],
    [0, 2, 1],
    [0, 1, 2],
    [0, 0, 3],
];

/// `F = F0(x0, x1, x2) + F1(x3, x4, x5)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubicPair {
    f0: Poly,
    f1: Poly,
}

const FIRST: [&str; 3] = ["x0", "x1", "x2"];
const SECOND: [&str; 3] = ["x3", "x4", "x5"];

fn cubic_from(vars: &[&str; 3], coeffs: &[BigRational]) -> Poly {
    let mut p = Poly::zero(vars);
    for (e, c) in CUBIC_MONOMIALS.iter().zip(coeffs) {
        p.add_term(e.to_vec(), c.clone());
    }
    p
}

impl CubicPair {
    /// Both forms given on their own three variables.
    pub fn new(f0: Poly, f1: Poly) -> Result<Self, ChartError> {
        for (f, vars) in [(&f0, FIRST), (&f1, SECOND)] {
            if f.vars().len() != 3 || !f.is_homogeneous(3) {
                return Err(ChartError::NotCubic(f.to_string()));
            }
            if f.vars().iter().zip(vars).any(|(a, b)| a != b) {
                return Err(ChartError::NotCubic(format!(
                    "{f} (variables must be {vars:?})"
                )));
            }
        }
        Ok(Self { f0, f1 })
    }

    /// Ten coefficients per form, in [`CUBIC_MONOMIALS`] order.
    pub fn from_coefficients(c0: &[BigRational], c1: &[BigRational]) -> Result<Self, ChartError> {
        for c in [c0, c1] {
            if c.len() != 10 {
                return Err(ChartError::NotCubic(format!(
                    "{} coefficients given",
                    c.len()
                )));
            }
        }
        Self::new(cubic_from(&FIRST, c0), cubic_from(&SECOND, c1))
    }

    pub fn from_integers(c0: &[i64; 10], c1: &[i64; 10]) -> Self {
        let q = |c: &[i64; 10]| c.iter().map(|&v| rational(v)).collect::<Vec<_>>();
        Self::from_coefficients(&q(c0), &q(c1)).expect("ten coefficients")
    }

    /// `x³ + y³ + z³` in both blocks.
    pub fn fermat() -> Self {
        let c = [1, 0, 0, 0, 0, 0, 1, 0, 0, 1];
        Self::from_integers(&c, &c)
    }

    pub fn f0(&self) -> &Poly {
        &self.f0
    }

    pub fn f1(&self) -> &Poly {
        &self.f1
    }

    pub fn coefficients(&self) -> [Vec<BigRational>; 2] {
        [&self.f0, &self.f1].map(|f| CUBIC_MONOMIALS.iter().map(|e| f.coeff(e)).collect())
    }

    /// `F` in the twelve ambient variables `x0..x5, y0..y5`.
    pub fn ambient_form(&self) -> Poly {
        let vars = ambient_vars();
        let v = |n: &str| Poly::var(&vars, n).expect("ambient variable");
        let f0 = self.f0.substitute(&FIRST.map(v)).expect("three images");
        let f1 = self.f1.substitute(&SECOND.map(v)).expect("three images");
        &f0 + &f1
    }

    pub fn warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.f0.is_zero() {
            out.push("F0 is zero; the quotient equation does not see the first block".into());
        }
        if self.f1.is_zero() {
            out.push("F1 is zero; the quotient equation does not see the second block".into());
        }
        out
    }
}

impl Default for CubicPair {
    fn default() -> Self {
        Self::fermat()
    }
}

/// `F` pulled back to the chart, in its free coordinates.
pub fn chart_equation(cubics: &CubicPair, chart: &AffineChart) -> Poly {
    cubics
        .ambient_form()
        .substitute(&chart.ambient_images())
        .expect("twelve images")
}

/// Writes `e` as a sum of generator exponent vectors, if possible.
fn decompose(e: &[u32], gens: &[InvariantGenerator]) -> Option<Vec<u32>> {
    let Some(v) = e.iter().position(|&d| d > 0) else {
        return Some(vec![0; gens.len()]);
    };
    for (g, gen) in gens.iter().enumerate() {
        let fits = gen.exponents[v] > 0 && gen.exponents.iter().zip(e).all(|(a, b)| a <= b);
        if !fits {
            continue;
        }
        let rest: Vec<u32> = e.iter().zip(&gen.exponents).map(|(a, b)| a - b).collect();
        if let Some(mut counts) = decompose(&rest, gens) {
            counts[g] += 1;
            return Some(counts);
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientEquation {
    pub equation: Poly,
    pub warnings: Vec<String>,
}

/// The chart equation of the quotient, in the invariant generators.
pub fn quotient_chart_equation(
    cubics: &CubicPair,
    chart: &AffineChart,
) -> Result<QuotientEquation, ChartError> {
    let gens = invariant_ring_chart(chart);
    let names: Vec<&str> = gens.iter().map(|g| g.name.as_str()).collect();
    let upstairs = chart_equation(cubics, chart);
    let mut equation = Poly::zero(&names);
    for (e, c) in upstairs.terms() {
        let counts = decompose(e, &gens).ok_or_else(|| {
            ChartError::NotInvariantExpressible(
                Poly::monomial(&chart.free, e.clone(), c.clone()).to_string(),
            )
        })?;
        equation.add_term(counts, c.clone());
    }
    Ok(QuotientEquation {
        equation,
        warnings: cubics.warnings(),
    })
}

/// The chart of `Bl_{E0×E1}(P² × P²) ⊂ P² × P² × P¹` where `x̃_a = x̃_b = ỹ_l = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WChart {
    pub index: (usize, usize, usize),
    pub vars: Vec<String>,
}

impl WChart {
    pub fn new(a: usize, b: usize, l: usize) -> Result<Self, ChartError> {
        if a > 2 || !(3..=5).contains(&b) || l > 1 {
            return Err(ChartError::InvalidIndex { i: a, j: b, k: l });
        }
        let mut vars: Vec<String> = (0..3)
            .filter(|&v| v != a)
            .map(|v| format!("~x{v}"))
            .collect();
        vars.push(format!("~y{}", 1 - l));
        vars.extend((3..6).filter(|&v| v != b).map(|v| format!("~x{v}")));
        Ok(Self {
            index: (a, b, l),
            vars,
        })
    }
}

/// `ỹ1·F0 + ỹ0·F1` on the chart.
pub fn w_chart_equation(cubics: &CubicPair, w: &WChart) -> Result<Poly, ChartError> {
    let (a, b, l) = w.index;
    let vars = &w.vars;
    let image = |v: usize, one: usize| {
        if v == one {
            Ok(Poly::one(vars))
        } else {
            Poly::var(vars, &format!("~x{v}"))
        }
    };
    let f0 = cubics
        .f0()
        .substitute(&[image(0, a)?, image(1, a)?, image(2, a)?])?;
    let f1 = cubics
        .f1()
        .substitute(&[image(3, b)?, image(4, b)?, image(5, b)?])?;
    let y = Poly::var(vars, &format!("~y{}", 1 - l))?;
    Ok(if l == 1 {
        &f0 + &(&y * &f1)
    } else {
        &(&y * &f0) + &f1
    })
}

/// The matching `W` chart and the coordinate renaming into the quotient chart.
pub fn evident_renaming(
    chart: &AffineChart,
) -> Result<(WChart, BTreeMap<String, String>), ChartError> {
    let (i, j, k) = chart.index;
    let mut map = BTreeMap::new();
    let w = match chart.kind {
        ChartKind::FirstBlock => {
            for a in (0..3).filter(|&a| a != i) {
                map.insert(format!("~x{a}"), format!("x{a}"));
            }
            map.insert("~y0".into(), format!("x{k}'"));
            WChart::new(i, k, 1)?
        }
        ChartKind::SecondBlock => {
            for a in (0..3).filter(|&a| a != j) {
                map.insert(format!("~x{a}"), format!("y{a}"));
            }
            map.insert("~y1".into(), format!("x{j}'"));
            WChart::new(j, k, 0)?
        }
    };
    for b in (3..6).filter(|&b| b != k) {
        map.insert(format!("~x{b}"), format!("y{b}"));
    }
    Ok((w, map))
}

/// Whether the evident renaming carries the `W` equation onto the quotient
/// chart equation exactly.
pub fn chart_isomorphism_check(
    cubics: &CubicPair,
    chart: &AffineChart,
) -> Result<bool, ChartError> {
    let (w, map) = evident_renaming(chart)?;
    chart_isomorphism_check_with(cubics, chart, &w, &map)
}

/// As [`chart_isomorphism_check`] with a caller-supplied `W` chart and renaming.
pub fn chart_isomorphism_check_with(
    cubics: &CubicPair,
    chart: &AffineChart,
    w: &WChart,
    renaming: &BTreeMap<String, String>,
) -> Result<bool, ChartError> {
    let q = quotient_chart_equation(cubics, chart)?.equation;
    let target = q.vars().to_vec();
    let w_eq = w_chart_equation(cubics, w)?;
    let moved = match w_eq.rename(renaming, &target) {
        Ok(p) => p,
        Err(crate::poly::PolyError::UnknownVariable(_)) => return Ok(false),
        Err(e) => return Err(e.into()),
    };
    Ok(moved == q)
}

/// `(chart index, W chart index, equations agree)`.
pub type SweepEntry = ((usize, usize, usize), (usize, usize, usize), bool);

/// Every chart paired with its `W` chart under the evident renaming.
pub fn isomorphism_sweep(cubics: &CubicPair) -> Result<Vec<SweepEntry>, ChartError> {
    super::all_charts()
        .iter()
        .map(|c| {
            let (w, _) = evident_renaming(c)?;
            Ok((c.index, w.index, chart_isomorphism_check(cubics, c)?))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charts::{all_charts, blowup_chart};

    #[test]
    fn fermat_quotient_003() {
        let c = blowup_chart(0, 0, 3).unwrap();
        let q = quotient_chart_equation(&CubicPair::fermat(), &c).unwrap();
        assert_eq!(q.equation.vars(), ["x1", "x2", "x3'", "y4", "y5"]);
        assert_eq!(
            q.equation.to_string(),
            "x3'*y4^3 + x3'*y5^3 + x1^3 + x2^3 + x3' + 1"
        );
        assert!(q.warnings.is_empty());
    }

    #[test]
    fn zero_f1_is_flagged() {
        let zero = [0; 10];
        let cubics = CubicPair::from_integers(&[1, 0, 0, 0, 0, 0, 1, 0, 0, 1], &zero);
        let c = blowup_chart(0, 0, 3).unwrap();
        let q = quotient_chart_equation(&cubics, &c).unwrap();
        assert_eq!(q.equation.to_string(), "x1^3 + x2^3 + 1");
        assert_eq!(q.warnings.len(), 1);
    }

    #[test]
    fn all_fermat_charts_match() {
        for c in all_charts() {
            assert!(
                chart_isomorphism_check(&CubicPair::fermat(), &c).unwrap(),
                "{c}"
            );
        }
    }

    #[test]
    fn crossed_renaming_fails() {
        let cubics = CubicPair::from_integers(
            &[1, 0, 0, 0, 0, 0, 1, 0, 0, 2],
            &[1, 0, 0, 0, 0, 0, 1, 0, 0, 1],
        );
        let c = blowup_chart(0, 0, 3).unwrap();
        let (w, mut map) = evident_renaming(&c).unwrap();
        assert!(chart_isomorphism_check_with(&cubics, &c, &w, &map).unwrap());
        map.insert("~x1".into(), "x2".into());
        map.insert("~x2".into(), "x1".into());
        assert!(!chart_isomorphism_check_with(&cubics, &c, &w, &map).unwrap());
    }

    #[test]
    fn non_cubic_rejected() {
        let p = Poly::var(&FIRST, "x0").unwrap();
        let f1 = CubicPair::fermat().f1().clone();
        assert!(matches!(
            CubicPair::new(p, f1),
            Err(ChartError::NotCubic(_))
        ));
        assert!(CubicPair::from_coefficients(&[rational(0)], &[]).is_err());
    }
}
