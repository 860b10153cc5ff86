use crate::exactnum::Scalar;

/// Which canonical model an operator was built as.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelKind {
    X1,
    X2,
}

/// Construction metadata carried by model operators for certificate
/// round-trips. Lives here (not in `models`) so the algebra layer can carry
/// it opaquely.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelTag {
    pub kind: ModelKind,
    pub n: usize,
    pub m: usize,
    pub alphas: Vec<Scalar>,
    pub normal_dim: usize,
}

/// Construction-known facts. Algebra operations drop tags; only
/// constructors set them.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct OpTags {
    /// Purity known from the construction (pure shifts, X₂ with empty N).
    pub pure_by_construction: bool,
    /// Analyticity known from the construction (shift powers, models).
    pub analytic_by_construction: bool,
    pub model: Option<ModelTag>,
    /// Mandatory notes on fixtures that deviate from their source.
    pub adaptation_notes: Vec<String>,
}

impl OpTags {
    pub fn none() -> Self {
        OpTags::default()
    }
}
