use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::chars::{invariants_dim, Character};
use crate::cohomology::{
    cohomology_hypersurface, cohomology_product, HypersurfaceSpec, WeightedProjSpace,
};
use crate::pushforward::{divisor_table, DivisorTable, EqLineBundle, PushforwardError};

use super::SodTerm;

/// `Ext^•(A, B)` as degree to dimension, or unknown.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtProfile {
    Known(BTreeMap<i64, u64>),
    Indeterminate,
}

impl ExtProfile {
    pub fn zero() -> Self {
        ExtProfile::Known(BTreeMap::new())
    }

    fn from_dims(dims: impl IntoIterator<Item = (i64, u64)>) -> Self {
        ExtProfile::Known(dims.into_iter().filter(|&(_, d)| d > 0).collect())
    }

    /// `Some(true)` when every degree vanishes, `None` when indeterminate.
    pub fn is_zero(&self) -> Option<bool> {
        match self {
            ExtProfile::Known(m) => Some(m.values().all(|&d| d == 0)),
            ExtProfile::Indeterminate => None,
        }
    }

    pub fn dim(&self, degree: i64) -> Option<u64> {
        match self {
            ExtProfile::Known(m) => Some(m.get(&degree).copied().unwrap_or(0)),
            ExtProfile::Indeterminate => None,
        }
    }
}

impl fmt::Display for ExtProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtProfile::Indeterminate => write!(f, "indeterminate"),
            ExtProfile::Known(m) if m.is_empty() => write!(f, "0 in all degrees"),
            ExtProfile::Known(m) => {
                let parts: Vec<String> = m.iter().map(|(d, n)| format!("Ext^{d} = {n}")).collect();
                write!(f, "{}", parts.join(", "))
            }
        }
    }
}

/// Source of Ext computations for rule side conditions.
pub trait ExtOracle: Send + Sync {
    fn ext(&self, from: &SodTerm, to: &SodTerm) -> ExtProfile;
}

/// The oracle backed by Künneth on `P² × P²` and by equivariant cohomology of
/// the cubic fourfold.
#[derive(Debug, Clone)]
pub struct StandardOracle {
    table: DivisorTable,
    fourfold: HypersurfaceSpec,
}

impl StandardOracle {
    pub fn new() -> Result<Self, PushforwardError> {
        Ok(Self::with_table(divisor_table()?))
    }

    pub fn with_table(table: DivisorTable) -> Self {
        let p5 = WeightedProjSpace::from_values(&[0, 0, 0, 1, 1, 1], 3)
            .expect("fixed weights are valid");
        let fourfold =
            HypersurfaceSpec::new(p5, 3, Character::chi(0)).expect("fixed cubic is valid");
        Self { table, fourfold }
    }

    pub fn table(&self) -> &DivisorTable {
        &self.table
    }

    fn m_side(&self, t: &SodTerm) -> Option<EqLineBundle> {
        match t {
            SodTerm::EquivariantM(l) => Some(*l),
            SodTerm::LineBundleY(d) => self.table.preimage(*d),
            SodTerm::Opaque(_) => None,
        }
    }

    /// `Hom_G^•(O_M(i)⊗χ_j, O_M(i')⊗χ_j') = [H^•(O_M(i'-i)) ⊗ χ_{j'-j}]^G`.
    pub fn equivariant_ext(&self, from: EqLineBundle, to: EqLineBundle) -> ExtProfile {
        let Ok(twist) = to.character.try_sub(from.character) else {
            return ExtProfile::Indeterminate;
        };
        if twist.order() != self.fourfold.ambient().order() {
            return ExtProfile::Indeterminate;
        }
        let Ok(h) = cohomology_hypersurface(&self.fourfold, to.twist - from.twist) else {
            return ExtProfile::Indeterminate;
        };
        let dims = (0..=4).map(|l| {
            let dim = invariants_dim(&h.get(l), twist).unwrap_or(0);
            (l as i64, dim)
        });
        ExtProfile::from_dims(dims)
    }

    /// `Ext^•(O_Y(0,b,c), O_Y(0,b',c'))`: pulled back from `P² × P²`.
    pub fn pulled_back_ext(&self, b: i64, c: i64, b2: i64, c2: i64) -> ExtProfile {
        ExtProfile::from_dims(
            cohomology_product(b2 - b, c2 - c)
                .into_iter()
                .map(|(d, n)| (d as i64, n)),
        )
    }
}

impl ExtOracle for StandardOracle {
    fn ext(&self, from: &SodTerm, to: &SodTerm) -> ExtProfile {
        if let (SodTerm::LineBundleY(x), SodTerm::LineBundleY(y)) = (from, to) {
            if x.a == 0 && y.a == 0 {
                return self.pulled_back_ext(x.b, x.c, y.b, y.c);
            }
        }
        match (self.m_side(from), self.m_side(to)) {
            (Some(l), Some(m)) => self.equivariant_ext(l, m),
            _ => ExtProfile::Indeterminate,
        }
    }
}
