use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::pushforward::{DivisorTable, PushforwardError};

use super::oracle::{ExtOracle, ExtProfile, StandardOracle};
use super::rules::{Certificate, ExtCheck, RewriteEngine, Rule, RuleError};
use super::{OpaqueBlock, OpaqueName, Sod, SodError, SodTerm};

/// `⟨D_{-1}, O_Y(0,i,j)⟩` with `(i, j)` in lexicographic order.
pub fn axiom_eq12() -> Sod {
    let mut terms = vec![SodTerm::opaque(OpaqueBlock::DMinus1)];
    for b in 0..=2 {
        for c in 0..=2 {
            terms.push(SodTerm::y(0, b, c));
        }
    }
    Sod::axiom("D^b(Y) = <D_-1, D_0>", terms).expect("distinct bundles")
}

/// `⟨Ku, O_M(i)⊗χ_j⟩` on the equivariant side.
pub fn axiom_eq13() -> Sod {
    let mut terms = vec![SodTerm::opaque(OpaqueBlock::KuG)];
    for i in 0..=2 {
        for j in 0..3 {
            terms.push(SodTerm::m(i, j));
        }
    }
    Sod::axiom("D^b_G(M) = <Ku, O_M(i)⊗χj>", terms).expect("no Y-side bundles")
}

/// The image of [`axiom_eq13`] under `Ψ`, as stated.
pub fn axiom_eq19() -> Sod {
    let terms = vec![
        SodTerm::opaque(OpaqueBlock::KuG),
        SodTerm::y(0, 0, 0),
        SodTerm::y(1, -2, -1),
        SodTerm::y(1, -1, -2),
        SodTerm::y(0, 1, 0),
        SodTerm::y(1, -1, -1),
        SodTerm::y(0, 0, 1),
        SodTerm::y(0, 2, 0),
        SodTerm::y(0, 0, 2),
        SodTerm::y(0, 1, 1),
    ];
    Sod::axiom("D^b(Y) = <Ψ(Ku), Ψ(O_M(i)⊗χj)>", terms).expect("distinct bundles")
}

/// Transports an equivariant decomposition to `Y` through the divisor table.
pub fn apply_psi(s: &Sod, table: &DivisorTable) -> Result<Sod, SodError> {
    let terms = s
        .terms()
        .iter()
        .map(|t| t.to_y_side(table).unwrap_or_else(|| t.clone()))
        .collect();
    Sod::axiom("Ψ image", terms)
}

/// The five decompositions displayed along the proof, as term signatures.
pub const PROOF_DISPLAYS: [[&str; 10]; 5] = [
    [
        "(0,0,0)",
        "(1,-2,-1)",
        "(1,-1,-2)",
        "(0,1,0)",
        "(1,-1,-1)",
        "(0,0,1)",
        "(0,2,0)",
        "(0,0,2)",
        "(0,1,1)",
        "Ψ(Ku_G(M))⊗ω_Y^{-1}",
    ],
    [
        "(1,-2,-1)",
        "(1,-1,-2)",
        "(0,0,0)",
        "(1,-1,-1)",
        "(0,1,0)",
        "(0,0,1)",
        "(0,2,0)",
        "(0,0,2)",
        "(0,1,1)",
        "Ψ(Ku_G(M))⊗ω_Y^{-1}",
    ],
    [
        "(0,0,0)",
        "(1,-1,-1)",
        "(0,1,0)",
        "(0,0,1)",
        "(0,2,0)",
        "(0,0,2)",
        "(0,1,1)",
        "Ψ(Ku_G(M))⊗ω_Y^{-1}",
        "(0,2,1)",
        "(0,1,2)",
    ],
    [
        "(0,0,0)",
        "(0,1,0)",
        "(0,0,1)",
        "(0,2,0)",
        "(0,0,2)",
        "(0,1,1)",
        "Ψ(Ku_G(M))⊗ω_Y^{-1}",
        "(0,2,1)",
        "(0,1,2)",
        "(0,2,2)",
    ],
    [
        "L_A(Ψ(Ku_G(M))⊗ω_Y^{-1})",
        "(0,0,0)",
        "(0,1,0)",
        "(0,0,1)",
        "(0,2,0)",
        "(0,0,2)",
        "(0,1,1)",
        "(0,2,1)",
        "(0,1,2)",
        "(0,2,2)",
    ],
];

/// Step index (0-based) whose result is compared with each display.
const DISPLAY_STEPS: [usize; 5] = [0, 1, 2, 4, 5];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TraceFailure {
    #[error(transparent)]
    Rule(#[from] RuleError),
    #[error(transparent)]
    Table(#[from] PushforwardError),
    #[error("result differs from displayed decomposition {display}: expected {expected:?}, got {actual:?}")]
    DisplayMismatch {
        display: usize,
        expected: Vec<String>,
        actual: Vec<String>,
    },
}

/// An aborted trace: the certificates issued so far and the cause.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("trace aborted at step {} ({rule}): {cause}", .step + 1)]
pub struct TraceError {
    pub step: usize,
    pub rule: Rule,
    pub completed: Vec<Certificate>,
    pub cause: TraceFailure,
}

/// Replays the proof with the standard oracle.
pub fn run_main_theorem_trace() -> Result<Vec<Certificate>, TraceError> {
    let oracle = StandardOracle::new().map_err(|e| TraceError {
        step: 0,
        rule: Rule::SerreRotate { k: 1 },
        completed: vec![],
        cause: e.into(),
    })?;
    run_main_theorem_trace_with(Box::new(oracle))
}

/// Replays the proof with a caller-supplied oracle.
pub fn run_main_theorem_trace_with(
    oracle: Box<dyn ExtOracle>,
) -> Result<Vec<Certificate>, TraceError> {
    let plan: [(Rule, &[usize]); 7] = [
        (Rule::SerreRotate { k: 1 }, &[]),
        (
            Rule::Reorder {
                swaps: vec![0, 1, 3],
            },
            &[],
        ),
        // The rotated pair lands as (0,1,2), (0,2,1); the display lists it swapped.
        (Rule::SerreRotate { k: 2 }, &[8]),
        (Rule::SwapOrthogonal { pos: 0 }, &[]),
        (Rule::SerreRotate { k: 1 }, &[]),
        (Rule::MutateBlockLeft { block_len: 6 }, &[]),
        (Rule::VerifyBlockD0 { start: 1 }, &[]),
    ];

    let table = crate::pushforward::divisor_table().map_err(|e| TraceError {
        step: 0,
        rule: plan[0].0.clone(),
        completed: vec![],
        cause: e.into(),
    })?;
    let engine = RewriteEngine::new(oracle, table);

    let mut current = axiom_eq19();
    let mut chain: Vec<Certificate> = Vec::with_capacity(plan.len());
    for (step, (rule, normalization)) in plan.into_iter().enumerate() {
        let abort = |chain: &Vec<Certificate>, cause: TraceFailure| TraceError {
            step,
            rule: rule.clone(),
            completed: chain.clone(),
            cause,
        };
        let cert = engine
            .apply(&rule, &current)
            .and_then(|c| engine.normalize(c, normalization))
            .map_err(|e| abort(&chain, e.into()))?;
        if let Some(display) = DISPLAY_STEPS.iter().position(|&s| s == step) {
            let actual = cert.after.signature();
            if actual != PROOF_DISPLAYS[display] {
                return Err(abort(
                    &chain,
                    TraceFailure::DisplayMismatch {
                        display: display + 1,
                        expected: PROOF_DISPLAYS[display]
                            .iter()
                            .map(|s| s.to_string())
                            .collect(),
                        actual,
                    },
                ));
            }
        }
        current = cert.after.clone();
        chain.push(cert);
    }
    Ok(chain)
}

/// Serializable view of a [`SodTerm`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TermRecord {
    LineBundleY {
        a: i64,
        b: i64,
        c: i64,
    },
    EquivariantM {
        i: i64,
        j: u32,
    },
    Opaque {
        name: String,
        omega_twist: i64,
        display: String,
    },
}

impl From<&SodTerm> for TermRecord {
    fn from(t: &SodTerm) -> Self {
        match t {
            SodTerm::LineBundleY(d) => TermRecord::LineBundleY {
                a: d.a,
                b: d.b,
                c: d.c,
            },
            SodTerm::EquivariantM(l) => TermRecord::EquivariantM {
                i: l.twist,
                j: l.character.value(),
            },
            SodTerm::Opaque(o) => TermRecord::Opaque {
                name: match &o.name {
                    OpaqueName::Block(b) => b.name().to_string(),
                    OpaqueName::LeftMutation { .. } => "L_A".to_string(),
                },
                omega_twist: o.omega_twist,
                display: o.to_string(),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtRecord {
    pub from: String,
    pub to: String,
    pub profile: ExtProfile,
}

impl From<&ExtCheck> for ExtRecord {
    fn from(c: &ExtCheck) -> Self {
        Self {
            from: c.from.to_string(),
            to: c.to.to_string(),
            profile: c.profile.clone(),
        }
    }
}

/// One line of the machine-readable trace.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateRecord {
    pub step: usize,
    pub rule: String,
    pub params: Rule,
    pub positions: Vec<usize>,
    pub normalization: Vec<usize>,
    pub ext_checks: Vec<ExtRecord>,
    pub notes: Vec<String>,
    pub before: Vec<String>,
    pub after: Vec<TermRecord>,
    pub after_signature: Vec<String>,
}

impl CertificateRecord {
    pub fn new(step: usize, cert: &Certificate) -> Self {
        Self {
            step,
            rule: cert.rule.name().to_string(),
            params: cert.rule.clone(),
            positions: cert.positions.clone(),
            normalization: cert.normalization.clone(),
            ext_checks: cert.ext_checks.iter().map(ExtRecord::from).collect(),
            notes: cert.notes.clone(),
            before: cert.before.signature(),
            after: cert.after.terms().iter().map(TermRecord::from).collect(),
            after_signature: cert.after.signature(),
        }
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.rule)?;
        for c in &self.ext_checks {
            writeln!(f, "  Ext({}, {}) : {}", c.from, c.to, c.profile)?;
        }
        if !self.normalization.is_empty() {
            writeln!(f, "  then swapped at {:?}", self.normalization)?;
        }
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        write!(f, "  ⇒ {}", self.after)
    }
}

/// Human-readable rendering of a certificate chain.
pub fn render_trace(chain: &[Certificate]) -> String {
    let mut out = String::new();
    if let Some(first) = chain.first() {
        out.push_str(&format!("start: {}\n", first.before));
    }
    for (i, c) in chain.iter().enumerate() {
        out.push_str(&format!("[{}] {c}\n", i + 1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pushforward::divisor_table;

    #[test]
    fn psi_of_eq13_is_eq19() {
        let psi = apply_psi(&axiom_eq13(), &divisor_table().unwrap()).unwrap();
        assert_eq!(psi.terms(), axiom_eq19().terms());
    }

    #[test]
    fn trace_has_seven_steps_and_ends_in_d0() {
        let chain = run_main_theorem_trace().unwrap();
        assert_eq!(chain.len(), 7);
        let last = chain.last().unwrap();
        assert_eq!(&last.after.terms()[1..], &axiom_eq12().terms()[1..]);
        assert!(last.after.terms()[0].is_opaque());
    }

    #[test]
    fn trace_third_display_tail() {
        let chain = run_main_theorem_trace().unwrap();
        let sig = chain[2].after.signature();
        assert_eq!(&sig[7..], &["Ψ(Ku_G(M))⊗ω_Y^{-1}", "(0,2,1)", "(0,1,2)"]);
    }

    #[test]
    fn records_and_rendering() {
        let chain = run_main_theorem_trace().unwrap();
        let rec = CertificateRecord::new(0, &chain[0]);
        assert_eq!(rec.rule, "serre_rotate");
        assert_eq!(rec.after_signature, PROOF_DISPLAYS[0]);
        assert!(render_trace(&chain).contains("verify_block_equals_D0"));
    }
}
