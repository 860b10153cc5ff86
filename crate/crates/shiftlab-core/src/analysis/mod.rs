//! Predicates with exact refutation witnesses, defect-space computations,
//! the classification record, structural decompositions and theorem
//! certificates.
//!
//! Infinite-dimensional positivity questions are only semi-decidable here;
//! verdicts are three-valued and a `Refuted` always carries a finitely
//! supported witness whose defining inequality has been checked in the
//! scalar mode of the input.

mod certs;
mod classify;
mod commutator;
mod defect;
mod predicates;
mod prop21;
mod prop22;
mod purity;
mod subspace;

pub use certs::{cert_projection_remark, cert_thm31, cert_thm41, CertOutcome};
pub use classify::{classify, dim_defect_gap, Classification, NFinite};
pub use commutator::{self_commutator, SelfCommutator};
pub use defect::{
    defect_space, defect_squared, defect_squared_adjoint, in_closure_of_range, DefectData,
};
pub use predicates::{is_contraction, is_hyponormal, psd_certainty};
pub use prop21::{decompose_prop21, Prop21Decomposition};
pub use prop22::{check_prop22, Prop22Check};
pub use purity::purity_evidence;

use crate::exactnum::NumError;
use crate::opcore::{FinSupportVector, OpError};
use thiserror::Error;

/// Three-valued verdict for semi-decidable predicates.
#[derive(Debug, Clone, PartialEq)]
pub enum Certainty {
    Certified,
    /// Carries an exact witness demonstrating failure, e.g. a finitely
    /// supported x with ⟨(I−T*T)x, x⟩ < 0.
    Refuted { witness: FinSupportVector },
    Unknown { evidence: Evidence },
}

impl Certainty {
    pub fn is_certified(&self) -> bool {
        matches!(self, Certainty::Certified)
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self, Certainty::Refuted { .. })
    }

    pub fn describe(&self) -> String {
        match self {
            Certainty::Certified => "certified".into(),
            Certainty::Refuted { .. } => "refuted (exact witness attached)".into(),
            Certainty::Unknown { evidence } => format!("unknown: {}", evidence.text),
        }
    }
}

/// Free-text evidence plus whatever sampled data backs an Unknown verdict.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Evidence {
    pub text: String,
    /// (circle angle, smallest sampled eigenvalue) pairs, when a symbol
    /// positivity scan ran.
    pub samples: Vec<(f64, f64)>,
    /// Terminal refinement dimension, when a subspace refinement ran.
    pub dim: Option<usize>,
}

impl Evidence {
    pub fn text(text: impl Into<String>) -> Self {
        Evidence {
            text: text.into(),
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum AnError {
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("defect space is not finite or not structurally representable: {0}")]
    DefectNotFinite(String),
    #[error("operator is not a certified hyponormal contraction: {0}")]
    NotCertifiedHyponormalContraction(String),
    #[error("the isometric part carries a unitary restriction on a window-supported subspace")]
    UnitaryPartFound,
    #[error(transparent)]
    Op(#[from] OpError),
    #[error(transparent)]
    Num(#[from] NumError),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

/// Certificate kinds, one per theorem surface.
#[derive(Debug, Clone, PartialEq)]
pub enum CertificateKind {
    Thm31,
    Thm41,
    Prop22,
    ProjectionRemark,
    Thm52Model(crate::opcore::ModelTag),
}

/// Issued only when every hypothesis check is certified.
#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    pub kind: CertificateKind,
    /// (hypothesis name, what was checked and how it came out).
    pub checked_hypotheses: Vec<(String, String)>,
    pub conclusion: String,
}
