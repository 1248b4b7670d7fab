//! Character-graded cohomology of line bundles.
//!
//! Covers `O(d)` on a projective space with a diagonal cyclic action, `O_H(d)`
//! on a hypersurface cut out by a character-homogeneous form, and dimension
//! profiles of `O(m, n)` on `P² × P²` via Künneth.
//!
//! Convention: the generator scales `x_k` by `ζ^{w_k}`, and a (Laurent) monomial
//! `∏ x_k^{a_k}` spans the character `χ_{Σ a_k w_k mod r}`. Negative exponents
//! subtract weights, so the Čech class `1/(x0 x1 x3)` on the plane with weights
//! `(0, 0, 1)` lands in `χ_2`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chars::{CharError, CharMultiset, Character};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CohomologyError {
    #[error(transparent)]
    Char(#[from] CharError),
    #[error("a projective space needs at least two homogeneous coordinates")]
    TooFewWeights,
    #[error("form degree must be at least 1")]
    BadFormDegree,
    #[error("cannot resolve the long exact sequence at H^{degree}: {reason}")]
    IndeterminateRank { degree: usize, reason: String },
    #[error("character-wise difference went negative at H^{degree}")]
    NegativeMultiplicity { degree: usize },
}

/// `P^n` with a diagonal `Z/r` action given by one weight per coordinate.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeightedProjSpace {
    weights: Vec<Character>,
}

impl WeightedProjSpace {
    pub fn new(weights: Vec<Character>) -> Result<Self, CohomologyError> {
        if weights.len() < 2 {
            return Err(CohomologyError::TooFewWeights);
        }
        let r = weights[0].order();
        if let Some(bad) = weights.iter().find(|w| w.order() != r) {
            return Err(CharError::OrderMismatch {
                left: r,
                right: bad.order(),
            }
            .into());
        }
        Ok(Self { weights })
    }

    /// Convenience constructor from raw weight values over `Z/order`.
    pub fn from_values(values: &[u32], order: u32) -> Result<Self, CohomologyError> {
        let weights = values
            .iter()
            .map(|&v| Character::new(v, order))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(weights)
    }

    pub fn dim(&self) -> usize {
        self.weights.len() - 1
    }

    pub fn order(&self) -> u32 {
        self.weights[0].order()
    }

    pub fn weights(&self) -> &[Character] {
        &self.weights
    }

    /// Character of `Σ w_k`, the weight of `x_0 ⋯ x_n`.
    pub fn weight_sum(&self) -> Character {
        let total: i64 = self.weights.iter().map(|w| w.value() as i64).sum();
        Character::from_int(total, self.order()).expect("order is positive")
    }
}

/// Equivariant `H^•`: cohomological degree to character multiset. Zero
/// entries are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GradedCharMultiset {
    order: u32,
    degrees: BTreeMap<usize, CharMultiset>,
}

impl GradedCharMultiset {
    pub fn zero(order: u32) -> Self {
        Self {
            order,
            degrees: BTreeMap::new(),
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn set(&mut self, degree: usize, v: CharMultiset) {
        debug_assert_eq!(v.order(), self.order);
        if v.is_zero() {
            self.degrees.remove(&degree);
        } else {
            self.degrees.insert(degree, v);
        }
    }

    /// `H^degree`, empty when absent.
    pub fn get(&self, degree: usize) -> CharMultiset {
        self.degrees
            .get(&degree)
            .cloned()
            .unwrap_or_else(|| CharMultiset::empty(self.order).expect("order is positive"))
    }

    pub fn is_zero(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &CharMultiset)> {
        self.degrees.iter().map(|(&d, v)| (d, v))
    }

    pub fn dims(&self) -> BTreeMap<usize, u64> {
        self.degrees
            .iter()
            .map(|(&d, v)| (d, v.total_dim()))
            .collect()
    }

    /// `Σ_l (-1)^l mult_χ(H^l)`.
    pub fn euler_char_of(&self, c: Character) -> i64 {
        self.degrees
            .iter()
            .map(|(&d, v)| {
                let m = v.multiplicity(c) as i64;
                if d % 2 == 0 {
                    m
                } else {
                    -m
                }
            })
            .sum()
    }
}

impl fmt::Display for GradedCharMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .degrees
            .iter()
            .map(|(d, v)| format!("H^{d} = {v}"))
            .collect();
        write!(f, "{}", parts.join(", "))
    }
}

/// Counts exponent vectors `a` with `lo <= a_k <= hi` and `Σ a_k = total`,
/// bucketed by the character `Σ a_k w_k`.
fn count_by_character(weights: &[Character], total: i64, lo: i64, hi: i64) -> Vec<u64> {
    let r = weights[0].order() as usize;
    let k = weights.len() as i64;
    if lo > hi || total < k * lo || total > k * hi {
        return vec![0; r];
    }
    // Shift every exponent by -lo so the DP runs over nonnegative partial sums.
    let span = (hi - lo) as usize;
    let target = (total - k * lo) as usize;
    // dp[s][c]: number of prefixes with shifted sum s and character c.
    let mut dp = vec![vec![0u64; r]; target + 1];
    dp[0][0] = 1;
    for w in weights {
        let mut next = vec![vec![0u64; r]; target + 1];
        for s in 0..=target {
            if dp[s].iter().all(|&x| x == 0) {
                continue;
            }
            for step in 0..=span.min(target - s) {
                let exp = step as i64 + lo;
                let c = (exp * w.value() as i64).rem_euclid(r as i64) as usize;
                for (from, &count) in dp[s].iter().enumerate() {
                    if count > 0 {
                        next[s + step][(from + c) % r] += count;
                    }
                }
            }
        }
        dp = next;
    }
    dp.swap_remove(target)
}

/// `H^•(P, O(d))` with its character decomposition.
#[allow(non_snake_case)]
pub fn cohomology_Pn(p: &WeightedProjSpace, d: i64) -> GradedCharMultiset {
    let n = p.dim();
    let r = p.order();
    let mut out = GradedCharMultiset::zero(r);
    if d >= 0 {
        let counts = count_by_character(p.weights(), d, 0, d);
        out.set(
            0,
            CharMultiset::from_vec(counts).expect("order is positive"),
        );
    }
    let top = -(n as i64) - 1;
    if d <= top {
        // Each exponent is at most -1 and the others force it to be at least d + n.
        let counts = count_by_character(p.weights(), d, d + n as i64, -1);
        out.set(
            n,
            CharMultiset::from_vec(counts).expect("order is positive"),
        );
    }
    out
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

/// `(h^0, h^n)` of `O(d)` on `P^n` in closed form.
pub fn dimensions_pn(n: usize, d: i64) -> (u64, u64) {
    let n64 = n as i64;
    let h0 = if d >= 0 {
        binomial((n64 + d) as u64, n as u64)
    } else {
        0
    };
    let hn = if d < -n64 {
        binomial((-d - 1) as u64, n as u64)
    } else {
        0
    };
    (h0, hn)
}

/// A hypersurface `V(F) ⊂ P` of degree `form_degree`, where `F` spans the
/// character `form_char`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypersurfaceSpec {
    ambient: WeightedProjSpace,
    form_degree: u32,
    form_char: Character,
}

impl HypersurfaceSpec {
    pub fn new(
        ambient: WeightedProjSpace,
        form_degree: u32,
        form_char: Character,
    ) -> Result<Self, CohomologyError> {
        if form_degree == 0 {
            return Err(CohomologyError::BadFormDegree);
        }
        if form_char.order() != ambient.order() {
            return Err(CharError::OrderMismatch {
                left: ambient.order(),
                right: form_char.order(),
            }
            .into());
        }
        Ok(Self {
            ambient,
            form_degree,
            form_char,
        })
    }

    pub fn ambient(&self) -> &WeightedProjSpace {
        &self.ambient
    }

    pub fn form_degree(&self) -> u32 {
        self.form_degree
    }

    pub fn form_char(&self) -> Character {
        self.form_char
    }
}

/// `H^•(O_H(d))` from the long exact sequence of
/// `0 → O(d-e) ⊗ χ_F → O(d) → O_H(d) → 0`.
///
/// Multiplication by a nonzero `F` is injective on `H^0`; on `H^n` it is the
/// Serre dual of an injective `H^0` multiplication, hence surjective. Both
/// junctions therefore resolve character-wise.
pub fn cohomology_hypersurface(
    h: &HypersurfaceSpec,
    d: i64,
) -> Result<GradedCharMultiset, CohomologyError> {
    let p = h.ambient();
    let n = p.dim();
    let e = h.form_degree() as i64;

    // No degree-e form spans form_char: F would be zero and neither map is known.
    let forms = count_by_character(p.weights(), e, 0, e);
    if forms[h.form_char().value() as usize] == 0 {
        return Err(CohomologyError::IndeterminateRank {
            degree: 0,
            reason: format!("no degree-{e} form spans {}", h.form_char()),
        });
    }

    let source = cohomology_Pn(p, d - e);
    let target = cohomology_Pn(p, d);

    let src0 = source.get(0).shifted(h.form_char())?;
    let coker0 = target
        .get(0)
        .checked_sub(&src0)?
        .ok_or(CohomologyError::NegativeMultiplicity { degree: 0 })?;

    let srcn = source.get(n).shifted(h.form_char())?;
    let ker_top = srcn
        .checked_sub(&target.get(n))?
        .ok_or(CohomologyError::NegativeMultiplicity { degree: n - 1 })?;

    let mut out = GradedCharMultiset::zero(p.order());
    if n == 1 {
        out.set(0, coker0.try_sum(&ker_top)?);
    } else {
        out.set(0, coker0);
        out.set(n - 1, ker_top);
    }
    Ok(out)
}

/// Dimension profile of `H^•(P^{n1} × P^{n2}, O(m, n))` by Künneth.
pub fn cohomology_product_dims(n1: usize, m: i64, n2: usize, n: i64) -> BTreeMap<usize, u64> {
    let (a0, a_top) = dimensions_pn(n1, m);
    let (b0, b_top) = dimensions_pn(n2, n);
    let left = [(0usize, a0), (n1, a_top)];
    let right = [(0usize, b0), (n2, b_top)];
    let mut out = BTreeMap::new();
    for &(i, x) in &left {
        for &(j, y) in &right {
            if x * y > 0 {
                *out.entry(i + j).or_insert(0) += x * y;
            }
        }
    }
    out
}

/// `H^•(P² × P², O(m, n))` dimensions; the action on this side is trivial.
pub fn cohomology_product(m: i64, n: i64) -> BTreeMap<usize, u64> {
    cohomology_product_dims(2, m, 2, n)
}
