use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::pushforward::{DivisorTable, PushforwardError};

use super::oracle::{ExtOracle, ExtProfile, StandardOracle};
use super::{
    axiom_eq12, OpaqueName, OpaqueTerm, Provenance, Sod, SodError, SodTerm, ANTICANONICAL,
};

/// A rewrite rule together with its parameters.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum Rule {
    /// Move the first `k` terms to the end, each tensored by `ω_Y^{-1}`.
    SerreRotate {
        k: usize,
    },
    /// Move the last `k` terms to the front, each tensored by `ω_Y`.
    InverseSerreRotate {
        k: usize,
    },
    SwapOrthogonal {
        pos: usize,
    },
    /// A sequence of adjacent swaps, each certified completely orthogonal.
    Reorder {
        swaps: Vec<usize>,
    },
    MutateBlockLeft {
        block_len: usize,
    },
    VerifyBlockD0 {
        start: usize,
    },
}

impl Rule {
    pub fn name(&self) -> &'static str {
        match self {
            Rule::SerreRotate { .. } => "serre_rotate",
            Rule::InverseSerreRotate { .. } => "inverse_serre_rotate",
            Rule::SwapOrthogonal { .. } => "swap_orthogonal",
            Rule::Reorder { .. } => "reorder_orthogonal",
            Rule::MutateBlockLeft { .. } => "mutate_block_left",
            Rule::VerifyBlockD0 { .. } => "verify_block_equals_D0",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rule::SerreRotate { k } | Rule::InverseSerreRotate { k } => {
                write!(f, "{}(k={k})", self.name())
            }
            Rule::SwapOrthogonal { pos } => write!(f, "{}(pos={pos})", self.name()),
            Rule::Reorder { swaps } => write!(f, "{}(swaps={swaps:?})", self.name()),
            Rule::MutateBlockLeft { block_len } => {
                write!(f, "{}(block_len={block_len})", self.name())
            }
            Rule::VerifyBlockD0 { start } => write!(f, "{}(start={start})", self.name()),
        }
    }
}

/// One Ext computation recorded as evidence.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExtCheck {
    pub from: SodTerm,
    pub to: SodTerm,
    pub profile: ExtProfile,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RuleError {
    #[error("rotation count {k} must lie in 1..{len}")]
    RotationOutOfRange { k: usize, len: usize },
    #[error("position {pos} has no right neighbour in a decomposition of length {len}")]
    PositionOutOfRange { pos: usize, len: usize },
    #[error("{} and {} are not orthogonal: {}", .0.from, .0.to, .0.profile)]
    NotOrthogonal(Box<ExtCheck>),
    #[error("orthogonality of {} and {} cannot be decided", .0.from, .0.to)]
    IndeterminateOrthogonality(Box<ExtCheck>),
    #[error("term at position {pos} is {term}, not an opaque block")]
    TargetNotOpaque { pos: usize, term: SodTerm },
    #[error("{term} has no image in the divisor table")]
    NoTableImage { term: SodTerm },
    #[error("block at {start} is not nine pulled-back line bundles")]
    BlockShape { start: usize },
    #[error("block differs from D_0 as a set: missing {missing:?}, unexpected {unexpected:?}")]
    SetMismatch {
        missing: Vec<String>,
        unexpected: Vec<String>,
    },
    #[error("cannot reorder to D_0: {0}")]
    NotReorderable(Box<RuleError>),
    #[error(transparent)]
    Sod(#[from] SodError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReplayError {
    #[error("replay failed: {0}")]
    Rule(#[from] RuleError),
    #[error("replay diverged in {0}")]
    Mismatch(&'static str),
}

/// Evidence that `after` follows from `before` by `rule`.
///
/// `normalization` lists adjacent, two-sided certified swaps applied after
/// the rule itself; their Ext checks are appended to `ext_checks`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub rule: Rule,
    pub positions: Vec<usize>,
    pub ext_checks: Vec<ExtCheck>,
    pub normalization: Vec<usize>,
    pub notes: Vec<String>,
    pub before: Sod,
    pub after: Sod,
}

/// Applies rules against a fixed Ext oracle and divisor table.
pub struct RewriteEngine {
    oracle: Box<dyn ExtOracle>,
    table: DivisorTable,
}

impl RewriteEngine {
    pub fn new(oracle: Box<dyn ExtOracle>, table: DivisorTable) -> Self {
        Self { oracle, table }
    }

    pub fn standard() -> Result<Self, PushforwardError> {
        let oracle = StandardOracle::new()?;
        let table = oracle.table().clone();
        Ok(Self::new(Box::new(oracle), table))
    }

    pub fn table(&self) -> &DivisorTable {
        &self.table
    }

    pub fn oracle(&self) -> &dyn ExtOracle {
        self.oracle.as_ref()
    }

    pub fn ext(&self, from: &SodTerm, to: &SodTerm) -> ExtCheck {
        ExtCheck {
            from: from.clone(),
            to: to.clone(),
            profile: self.oracle.ext(from, to),
        }
    }

    fn twist(&self, t: &SodTerm, times: i64) -> Result<SodTerm, RuleError> {
        let y = t
            .to_y_side(&self.table)
            .ok_or_else(|| RuleError::NoTableImage { term: t.clone() })?;
        Ok(match y {
            SodTerm::LineBundleY(d) => SodTerm::LineBundleY(
                d + crate::pushforward::Divisor3::new(
                    ANTICANONICAL.a * times,
                    ANTICANONICAL.b * times,
                    ANTICANONICAL.c * times,
                ),
            ),
            SodTerm::Opaque(o) => SodTerm::Opaque(o.twisted(times)),
            SodTerm::EquivariantM(_) => unreachable!("to_y_side maps M-side terms away"),
        })
    }

    fn finish(
        &self,
        rule: Rule,
        positions: Vec<usize>,
        ext_checks: Vec<ExtCheck>,
        notes: Vec<String>,
        before: &Sod,
        terms: Vec<SodTerm>,
    ) -> Result<Certificate, RuleError> {
        let after = Sod::new(
            terms,
            Provenance::Rewrite {
                rule: rule.name().to_string(),
            },
        )?;
        Ok(Certificate {
            rule,
            positions,
            ext_checks,
            normalization: Vec::new(),
            notes,
            before: before.clone(),
            after,
        })
    }

    /// `S^{-1}[4]` applied to the first `k` components.
    pub fn serre_rotate(&self, s: &Sod, k: usize) -> Result<Certificate, RuleError> {
        let len = s.len();
        if k == 0 || k >= len {
            return Err(RuleError::RotationOutOfRange { k, len });
        }
        let mut terms = s.terms()[k..].to_vec();
        for t in &s.terms()[..k] {
            terms.push(self.twist(t, 1)?);
        }
        let notes = vec![format!(
            "S^-1[4] tracked as ⊗ω_Y^-1 = O_Y{ANTICANONICAL}; the shift is dropped"
        )];
        self.finish(
            Rule::SerreRotate { k },
            (0..k).collect(),
            vec![],
            notes,
            s,
            terms,
        )
    }

    pub fn serre_rotate_inverse(&self, s: &Sod, k: usize) -> Result<Certificate, RuleError> {
        let len = s.len();
        if k == 0 || k >= len {
            return Err(RuleError::RotationOutOfRange { k, len });
        }
        let mut terms = Vec::with_capacity(len);
        for t in &s.terms()[len - k..] {
            terms.push(self.twist(t, -1)?);
        }
        terms.extend_from_slice(&s.terms()[..len - k]);
        self.finish(
            Rule::InverseSerreRotate { k },
            (len - k..len).collect(),
            vec![],
            vec![],
            s,
            terms,
        )
    }

    fn require_zero(check: ExtCheck) -> Result<ExtCheck, RuleError> {
        match check.profile.is_zero() {
            Some(true) => Ok(check),
            Some(false) => Err(RuleError::NotOrthogonal(Box::new(check))),
            None => Err(RuleError::IndeterminateOrthogonality(Box::new(check))),
        }
    }

    /// Swaps `terms[pos]` and `terms[pos + 1]`, appending the evidence.
    fn certified_swap(
        &self,
        terms: &mut [SodTerm],
        pos: usize,
        two_sided: bool,
        checks: &mut Vec<ExtCheck>,
    ) -> Result<(), RuleError> {
        let len = terms.len();
        if pos + 1 >= len {
            return Err(RuleError::PositionOutOfRange { pos, len });
        }
        let forward = Self::require_zero(self.ext(&terms[pos], &terms[pos + 1]))?;
        let backward = self.ext(&terms[pos + 1], &terms[pos]);
        let backward = if two_sided {
            Self::require_zero(backward)?
        } else {
            backward
        };
        checks.push(forward);
        checks.push(backward);
        terms.swap(pos, pos + 1);
        Ok(())
    }

    /// Exchanges two neighbours once `Ext^•(S[pos], S[pos+1])` is certified zero.
    /// The reverse direction vanishes by semiorthogonality and is recorded only.
    pub fn swap_orthogonal(&self, s: &Sod, pos: usize) -> Result<Certificate, RuleError> {
        let mut terms = s.terms().to_vec();
        let mut checks = Vec::new();
        self.certified_swap(&mut terms, pos, false, &mut checks)?;
        self.finish(
            Rule::SwapOrthogonal { pos },
            vec![pos, pos + 1],
            checks,
            vec![],
            s,
            terms,
        )
    }

    /// Adjacent swaps inside completely orthogonal blocks.
    pub fn reorder(&self, s: &Sod, swaps: &[usize]) -> Result<Certificate, RuleError> {
        let mut terms = s.terms().to_vec();
        let mut checks = Vec::new();
        for &pos in swaps {
            self.certified_swap(&mut terms, pos, true, &mut checks)?;
        }
        self.finish(
            Rule::Reorder {
                swaps: swaps.to_vec(),
            },
            swaps.to_vec(),
            checks,
            vec![],
            s,
            terms,
        )
    }

    /// Applies further two-sided certified swaps to a certificate's result.
    pub fn normalize(
        &self,
        mut cert: Certificate,
        swaps: &[usize],
    ) -> Result<Certificate, RuleError> {
        let mut terms = cert.after.terms().to_vec();
        for &pos in swaps {
            self.certified_swap(&mut terms, pos, true, &mut cert.ext_checks)?;
        }
        cert.after = Sod::new(terms, cert.after.provenance().clone())?;
        cert.normalization.extend_from_slice(swaps);
        Ok(cert)
    }

    /// `L_A` of the opaque term at `block_len` over the block `S[0..block_len]`.
    pub fn mutate_block_left(&self, s: &Sod, block_len: usize) -> Result<Certificate, RuleError> {
        let len = s.len();
        if block_len == 0 || block_len >= len {
            return Err(RuleError::PositionOutOfRange {
                pos: block_len,
                len,
            });
        }
        let SodTerm::Opaque(target) = &s.terms()[block_len] else {
            return Err(RuleError::TargetNotOpaque {
                pos: block_len,
                term: s.terms()[block_len].clone(),
            });
        };
        let block = s.terms()[..block_len].to_vec();
        let mutated = OpaqueTerm {
            name: OpaqueName::LeftMutation {
                block: block.clone(),
                inner: Box::new(target.clone()),
            },
            omega_twist: 0,
        };
        let mut terms = vec![SodTerm::Opaque(mutated)];
        terms.extend(block);
        terms.extend_from_slice(&s.terms()[block_len + 1..]);
        let notes = vec!["left mutation across an admissible block; symbolic only".to_string()];
        self.finish(
            Rule::MutateBlockLeft { block_len },
            (0..=block_len).collect(),
            vec![],
            notes,
            s,
            terms,
        )
    }

    /// Certifies that the nine terms from `start` are `D_0` up to certified
    /// reordering, and returns the decomposition in the `D_0` order.
    pub fn verify_block_equals_d0(&self, s: &Sod, start: usize) -> Result<Certificate, RuleError> {
        let reference: Vec<SodTerm> = axiom_eq12().terms()[1..].to_vec();
        let n = reference.len();
        if start + n != s.len() && start + n > s.len() {
            return Err(RuleError::BlockShape { start });
        }
        let block = &s.terms()[start..start + n];
        if block
            .iter()
            .any(|t| !matches!(t, SodTerm::LineBundleY(d) if d.a == 0))
        {
            return Err(RuleError::BlockShape { start });
        }

        let missing: Vec<String> = reference
            .iter()
            .filter(|t| !block.contains(t))
            .map(ToString::to_string)
            .collect();
        let unexpected: Vec<String> = block
            .iter()
            .filter(|t| !reference.contains(t))
            .map(ToString::to_string)
            .collect();
        if !missing.is_empty() || !unexpected.is_empty() {
            return Err(RuleError::SetMismatch {
                missing,
                unexpected,
            });
        }

        // Bubble sort towards the reference order; each transposition is certified.
        let rank = |t: &SodTerm| reference.iter().position(|r| r == t).expect("set checked");
        let mut terms = s.terms().to_vec();
        let mut checks = Vec::new();
        let mut swaps = Vec::new();
        loop {
            let mut changed = false;
            for i in start..start + n - 1 {
                if rank(&terms[i]) > rank(&terms[i + 1]) {
                    self.certified_swap(&mut terms, i, true, &mut checks)
                        .map_err(|e| RuleError::NotReorderable(Box::new(e)))?;
                    swaps.push(i);
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let notes = vec![format!("reordered to D_0 by swaps at {swaps:?}")];
        self.finish(
            Rule::VerifyBlockD0 { start },
            (start..start + n).collect(),
            checks,
            notes,
            s,
            terms,
        )
    }

    pub fn apply(&self, rule: &Rule, s: &Sod) -> Result<Certificate, RuleError> {
        match rule {
            Rule::SerreRotate { k } => self.serre_rotate(s, *k),
            Rule::InverseSerreRotate { k } => self.serre_rotate_inverse(s, *k),
            Rule::SwapOrthogonal { pos } => self.swap_orthogonal(s, *pos),
            Rule::Reorder { swaps } => self.reorder(s, swaps),
            Rule::MutateBlockLeft { block_len } => self.mutate_block_left(s, *block_len),
            Rule::VerifyBlockD0 { start } => self.verify_block_equals_d0(s, *start),
        }
    }

    /// Re-executes the certificate's rule on its predecessor and checks that
    /// every recorded field is reproduced.
    pub fn replay(&self, cert: &Certificate) -> Result<(), ReplayError> {
        let fresh = self.apply(&cert.rule, &cert.before)?;
        let fresh = self.normalize(fresh, &cert.normalization)?;
        if fresh.after.terms() != cert.after.terms() {
            return Err(ReplayError::Mismatch("resulting decomposition"));
        }
        if fresh.positions != cert.positions {
            return Err(ReplayError::Mismatch("positions"));
        }
        if fresh.ext_checks != cert.ext_checks {
            return Err(ReplayError::Mismatch("ext checks"));
        }
        Ok(())
    }
}
