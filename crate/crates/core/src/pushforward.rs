//! Divisors of `Ψ(O_M(i) ⊗ χ_j)` on `Y = Bl_{E0×E1}(P² × P²)`.
//!
//! `Ψ` of an equivariant line bundle is a line bundle `O_Y(aE' + bH₁ + cH₂)`.
//! Its three coefficients are read off from degrees on three test curves:
//! a blow-up fibre (where `E'` has degree -1 and `H₁`, `H₂` degree 0) and a
//! line in each `P²` factor chosen away from the blown-up curve. On each
//! curve the degree is recovered from the invariant part of the cohomology of
//! the preimage curve upstairs, twisted by `χ_j`.
//!
//! The curve data depends only on coordinate weights, never on the particular
//! cubics, so it is fixed per [`TestCurve`] kind. The plane-cubic curves assume
//! the restricted cubic has three distinct roots; this is not checked here.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chars::{invariants_dim, CharError, Character};
use crate::cohomology::{
    cohomology_Pn, cohomology_hypersurface, CohomologyError, GradedCharMultiset, HypersurfaceSpec,
    WeightedProjSpace,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PushforwardError {
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error(transparent)]
    Char(#[from] CharError),
    #[error("({h0}, {h1}) is not the cohomology of a line bundle on P¹")]
    InvalidProfile { h0: u64, h1: u64 },
    #[error("twist {0} is outside the tabulated range 0..=2")]
    TwistOutOfRange(i64),
}

/// `O_M(i) ⊗ χ_j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EqLineBundle {
    pub twist: i64,
    pub character: Character,
}

impl EqLineBundle {
    pub fn new(twist: i64, character: Character) -> Self {
        Self { twist, character }
    }

    /// `O_M(i) ⊗ χ_j` for the order-3 group.
    pub fn of(i: i64, j: u32) -> Self {
        Self::new(i, Character::chi(j))
    }
}

impl fmt::Display for EqLineBundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twist == 0 {
            write!(f, "O_M⊗{}", self.character)
        } else {
            write!(f, "O_M({})⊗{}", self.twist, self.character)
        }
    }
}

/// A class `aE' + bH₁ + cH₂` in `Pic(Y)`.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize,
)]
pub struct Divisor3 {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl Divisor3 {
    pub const fn new(a: i64, b: i64, c: i64) -> Self {
        Self { a, b, c }
    }

    pub fn as_tuple(self) -> (i64, i64, i64) {
        (self.a, self.b, self.c)
    }
}

impl Add for Divisor3 {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.a + o.a, self.b + o.b, self.c + o.c)
    }
}

impl Sub for Divisor3 {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.a - o.a, self.b - o.b, self.c - o.c)
    }
}

impl Neg for Divisor3 {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.a, -self.b, -self.c)
    }
}

impl fmt::Display for Divisor3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

/// The three curves whose degrees pin down a divisor class on `Y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TestCurve {
    /// Fibre `P¹_x` of `E' → E0 × E1`; upstairs `[x0 : x3]` with weights (χ0, χ1).
    FiberP1,
    /// Line in the first `P²`; upstairs the plane cubic in `[x0 : x1 : x3]`.
    LineFirstFactor,
    /// Line in the second `P²`; upstairs the plane cubic in `[x0 : x3 : x4]`.
    LineSecondFactor,
}

impl TestCurve {
    pub const ALL: [TestCurve; 3] = [
        TestCurve::FiberP1,
        TestCurve::LineFirstFactor,
        TestCurve::LineSecondFactor,
    ];

    /// Equivariant `H^•(O(i))` of the curve upstairs.
    pub fn upstairs_cohomology(self, i: i64) -> Result<GradedCharMultiset, CohomologyError> {
        match self {
            TestCurve::FiberP1 => {
                let p1 = WeightedProjSpace::from_values(&[0, 1], 3)?;
                Ok(cohomology_Pn(&p1, i))
            }
            TestCurve::LineFirstFactor => cohomology_hypersurface(&plane_cubic(&[0, 0, 1])?, i),
            TestCurve::LineSecondFactor => cohomology_hypersurface(&plane_cubic(&[0, 1, 1])?, i),
        }
    }
}

fn plane_cubic(weights: &[u32]) -> Result<HypersurfaceSpec, CohomologyError> {
    let plane = WeightedProjSpace::from_values(weights, 3)?;
    HypersurfaceSpec::new(plane, 3, Character::chi(0))
}

/// `(h⁰, h¹)` of `Ψ(L)` restricted to `curve`.
pub fn cohomology_profile_on_curve(
    l: EqLineBundle,
    curve: TestCurve,
) -> Result<(u64, u64), PushforwardError> {
    let h = curve.upstairs_cohomology(l.twist)?;
    let h0 = invariants_dim(&h.get(0), l.character)?;
    let h1 = invariants_dim(&h.get(1), l.character)?;
    Ok((h0, h1))
}

/// Degree of the line bundle on `P¹` with cohomology `(h0, h1)`.
pub fn degree_from_profile(h0: u64, h1: u64) -> Result<i64, PushforwardError> {
    match (h0, h1) {
        (0, 0) => Ok(-1),
        (h0, 0) => Ok(h0 as i64 - 1),
        (0, h1) => Ok(-(h1 as i64) - 1),
        _ => Err(PushforwardError::InvalidProfile { h0, h1 }),
    }
}

/// Inverse of [`degree_from_profile`].
pub fn profile_of_degree(d: i64) -> (u64, u64) {
    ((d + 1).max(0) as u64, (-d - 1).max(0) as u64)
}

pub fn degree_on_curve(l: EqLineBundle, curve: TestCurve) -> Result<i64, PushforwardError> {
    let (h0, h1) = cohomology_profile_on_curve(l, curve)?;
    degree_from_profile(h0, h1)
}

/// The divisor of `Ψ(O_M(i) ⊗ χ_j)` for `i ∈ {0, 1, 2}`.
pub fn divisor_of(l: EqLineBundle) -> Result<Divisor3, PushforwardError> {
    if !(0..=2).contains(&l.twist) {
        return Err(PushforwardError::TwistOutOfRange(l.twist));
    }
    // E' restricts to degree -1 on a fibre; the test lines miss E'.
    let a = -degree_on_curve(l, TestCurve::FiberP1)?;
    let b = degree_on_curve(l, TestCurve::LineFirstFactor)?;
    let c = degree_on_curve(l, TestCurve::LineSecondFactor)?;
    Ok(Divisor3::new(a, b, c))
}

/// One row of the divisor table in machine-readable form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRecord {
    pub i: i64,
    pub j: u32,
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

/// All nine `Ψ(O_M(i) ⊗ χ_j)`, `0 ≤ i, j ≤ 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorTable {
    entries: BTreeMap<(i64, u32), Divisor3>,
}

impl DivisorTable {
    pub fn get(&self, i: i64, j: u32) -> Option<Divisor3> {
        self.entries.get(&(i, j)).copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (EqLineBundle, Divisor3)> + '_ {
        self.entries
            .iter()
            .map(|(&(i, j), &d)| (EqLineBundle::of(i, j), d))
    }

    pub fn image(&self, l: EqLineBundle) -> Option<Divisor3> {
        if l.character.order() != 3 {
            return None;
        }
        self.get(l.twist, l.character.value())
    }

    /// The equivariant line bundle mapping to `d`, if any.
    pub fn preimage(&self, d: Divisor3) -> Option<EqLineBundle> {
        self.iter().find(|&(_, img)| img == d).map(|(l, _)| l)
    }

    pub fn records(&self) -> Vec<TableRecord> {
        self.entries
            .iter()
            .map(|(&(i, j), d)| TableRecord {
                i,
                j,
                a: d.a,
                b: d.b,
                c: d.c,
            })
            .collect()
    }

    /// Plain-text rendering, one row per `(i, j)`.
    pub fn render_text(&self) -> String {
        let mut out = String::from("# Ψ(O_M(i)⊗χj) = a E' + b H1 + c H2\n# (i,j) → a b c\n");
        for (&(i, j), d) in &self.entries {
            out.push_str(&format!("({i},{j}) → {} {} {}\n", d.a, d.b, d.c));
        }
        out
    }
}

pub fn divisor_table() -> Result<DivisorTable, PushforwardError> {
    let mut entries = BTreeMap::new();
    for i in 0..=2 {
        for j in 0..3 {
            entries.insert((i, j), divisor_of(EqLineBundle::of(i, j))?);
        }
    }
    Ok(DivisorTable { entries })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn profile_examples() {
        use TestCurve::*;
        assert_eq!(
            cohomology_profile_on_curve(EqLineBundle::of(0, 1), FiberP1).unwrap(),
            (0, 0)
        );
        assert_eq!(
            cohomology_profile_on_curve(EqLineBundle::of(0, 1), LineFirstFactor).unwrap(),
            (0, 1)
        );
        assert_eq!(
            cohomology_profile_on_curve(EqLineBundle::of(2, 0), LineFirstFactor).unwrap(),
            (3, 0)
        );
    }

    #[test]
    fn degree_examples() {
        assert_eq!(degree_from_profile(1, 0).unwrap(), 0);
        assert_eq!(degree_from_profile(0, 1).unwrap(), -2);
        assert_eq!(degree_from_profile(0, 0).unwrap(), -1);
        assert_eq!(degree_from_profile(3, 0).unwrap(), 2);
        assert_eq!(
            degree_from_profile(2, 1),
            Err(PushforwardError::InvalidProfile { h0: 2, h1: 1 })
        );
    }

    #[test]
    fn divisor_examples() {
        assert_eq!(
            divisor_of(EqLineBundle::of(0, 0)).unwrap(),
            Divisor3::new(0, 0, 0)
        );
        assert_eq!(
            divisor_of(EqLineBundle::of(0, 1)).unwrap(),
            Divisor3::new(1, -2, -1)
        );
        assert_eq!(
            divisor_of(EqLineBundle::of(1, 1)).unwrap(),
            Divisor3::new(1, -1, -1)
        );
        assert_eq!(
            divisor_of(EqLineBundle::of(3, 0)),
            Err(PushforwardError::TwistOutOfRange(3))
        );
    }

    #[test]
    fn table_rows() {
        let t = divisor_table().unwrap();
        assert_eq!(t.len(), 9);
        assert_eq!(t.get(2, 1), Some(Divisor3::new(0, 0, 2)));
        assert_eq!(t.get(2, 2), Some(Divisor3::new(0, 1, 1)));
        assert_eq!(t.get(1, 2), Some(Divisor3::new(0, 0, 1)));
        assert_eq!(
            t.preimage(Divisor3::new(1, -1, -1)),
            Some(EqLineBundle::of(1, 1))
        );
        assert_eq!(t.preimage(Divisor3::new(5, 5, 5)), None);
        assert!(t.render_text().ends_with("(2,2) → 0 1 1\n"));
    }
}
