//! Semiorthogonal decompositions as rewritable term sequences.
//!
//! Rules (Serre rotation, orthogonal swap, block mutation) only fire when a
//! computed Ext certificate discharges their side condition. Axiom
//! decompositions are trusted inputs; only rewrites are certified.

mod oracle;
mod rules;
mod trace;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::pushforward::{Divisor3, DivisorTable, EqLineBundle};

pub use oracle::{ExtOracle, ExtProfile, StandardOracle};
pub use rules::{Certificate, ExtCheck, ReplayError, RewriteEngine, Rule, RuleError};
pub use trace::{
    apply_psi, axiom_eq12, axiom_eq13, axiom_eq19, render_trace, run_main_theorem_trace,
    run_main_theorem_trace_with, CertificateRecord, ExtRecord, TermRecord, TraceError,
    TraceFailure, PROOF_DISPLAYS,
};

/// `ω_Y^{-1} ≅ O_Y(-1, 3, 3)`.
pub const ANTICANONICAL: Divisor3 = Divisor3::new(-1, 3, 3);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SodError {
    #[error("line bundle {0} appears twice")]
    DuplicateLineBundle(Divisor3),
}

/// Named blocks that the engine cannot see inside.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OpaqueBlock {
    KuG,
    DMinus1,
    D0,
}

impl OpaqueBlock {
    pub fn name(self) -> &'static str {
        match self {
            OpaqueBlock::KuG => "Ku_G(M)",
            OpaqueBlock::DMinus1 => "D_{-1}",
            OpaqueBlock::D0 => "D_0",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "Ku_G(M)" => Some(OpaqueBlock::KuG),
            "D_{-1}" => Some(OpaqueBlock::DMinus1),
            "D_0" => Some(OpaqueBlock::D0),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum OpaqueName {
    Block(OpaqueBlock),
    /// `L_A(inner)` for the admissible block `A`.
    LeftMutation {
        block: Vec<SodTerm>,
        inner: Box<OpaqueTerm>,
    },
}

/// An opaque component twisted `omega_twist` times by `ω_Y^{-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OpaqueTerm {
    pub name: OpaqueName,
    pub omega_twist: i64,
}

impl OpaqueTerm {
    pub fn block(block: OpaqueBlock) -> Self {
        Self {
            name: OpaqueName::Block(block),
            omega_twist: 0,
        }
    }

    pub fn twisted(mut self, by: i64) -> Self {
        self.omega_twist += by;
        self
    }
}

impl fmt::Display for OpaqueTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.name {
            OpaqueName::Block(OpaqueBlock::KuG) => write!(f, "Ψ(Ku_G(M))")?,
            OpaqueName::Block(b) => write!(f, "{}", b.name())?,
            OpaqueName::LeftMutation { inner, .. } => write!(f, "L_A({inner})")?,
        }
        match self.omega_twist {
            0 => Ok(()),
            k => write!(f, "⊗ω_Y^{{{}}}", -k),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SodTerm {
    LineBundleY(Divisor3),
    EquivariantM(EqLineBundle),
    Opaque(OpaqueTerm),
}

impl SodTerm {
    pub fn y(a: i64, b: i64, c: i64) -> Self {
        SodTerm::LineBundleY(Divisor3::new(a, b, c))
    }

    pub fn m(i: i64, j: u32) -> Self {
        SodTerm::EquivariantM(EqLineBundle::of(i, j))
    }

    pub fn opaque(block: OpaqueBlock) -> Self {
        SodTerm::Opaque(OpaqueTerm::block(block))
    }

    pub fn as_line_bundle_y(&self) -> Option<Divisor3> {
        match self {
            SodTerm::LineBundleY(d) => Some(*d),
            _ => None,
        }
    }

    pub fn is_opaque(&self) -> bool {
        matches!(self, SodTerm::Opaque(_))
    }

    /// Y-side image: equivariant bundles go through the divisor table.
    pub fn to_y_side(&self, table: &DivisorTable) -> Option<SodTerm> {
        match self {
            SodTerm::EquivariantM(l) => table.image(*l).map(SodTerm::LineBundleY),
            other => Some(other.clone()),
        }
    }

    /// Compact form used to compare against displayed decompositions.
    pub fn signature(&self) -> String {
        match self {
            SodTerm::LineBundleY(d) => d.to_string(),
            other => other.to_string(),
        }
    }
}

impl fmt::Display for SodTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SodTerm::LineBundleY(d) if *d == Divisor3::default() => write!(f, "O_Y"),
            SodTerm::LineBundleY(d) => write!(f, "O_Y{d}"),
            SodTerm::EquivariantM(l) => write!(f, "{l}"),
            SodTerm::Opaque(o) => write!(f, "{o}"),
        }
    }
}

/// Where a decomposition came from.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Provenance {
    Axiom(String),
    Rewrite { rule: String },
}

/// An ordered semiorthogonal decomposition.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Sod {
    terms: Vec<SodTerm>,
    provenance: Provenance,
}

impl Sod {
    pub fn new(terms: Vec<SodTerm>, provenance: Provenance) -> Result<Self, SodError> {
        for (i, t) in terms.iter().enumerate() {
            if let SodTerm::LineBundleY(d) = t {
                if terms[..i].iter().any(|u| u.as_line_bundle_y() == Some(*d)) {
                    return Err(SodError::DuplicateLineBundle(*d));
                }
            }
        }
        Ok(Self { terms, provenance })
    }

    pub fn axiom(name: &str, terms: Vec<SodTerm>) -> Result<Self, SodError> {
        Self::new(terms, Provenance::Axiom(name.to_string()))
    }

    pub fn terms(&self) -> &[SodTerm] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn signature(&self) -> Vec<String> {
        self.terms.iter().map(SodTerm::signature).collect()
    }
}

impl fmt::Display for Sod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.terms.iter().map(ToString::to_string).collect();
        write!(f, "⟨{}⟩", parts.join(", "))
    }
}
