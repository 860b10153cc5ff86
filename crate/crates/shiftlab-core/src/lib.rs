//! Exact computational engine for operators of the form
//! "block-Toeplitz with matrix Laurent-polynomial symbol + finite-rank
//! windowed correction" acting on ℓ²(Z₊)⊗Cᵖ ⊕ Cᵠ.
//!
//! The crate is layered bottom-up:
//!
//! * [`exactnum`] — scalars (complex rationals or complex doubles) and
//!   finite-dimensional linear algebra: rank, PSD certificates, spectral
//!   rank-one decompositions, inverses with singularity witnesses.
//! * [`opcore`] — the structured-operator algebra itself: canonical
//!   (symbol, windowed kernel) representation, exact ±/·/adjoint with
//!   Toeplitz normal-form reduction, application to finitely supported
//!   vectors, and a dense-truncation oracle.
//! * [`analysis`] — contraction/hyponormality verdicts with exact
//!   refutation witnesses, defect-space computations, the full
//!   classification record, structural decompositions and theorem
//!   certificates.
//! * [`models`] — canonical model operators X₁/X₂ and the worked example
//!   fixtures (with adaptation notes where the construction is a finite
//!   substitute).
//! * [`equivalence`] — explicit basis-rule unitaries for the model
//!   theorem, depth-bounded intertwining verification, and the analytic
//!   (Shimorin-style) coefficient model.

pub mod analysis;
pub mod equivalence;
pub mod exactnum;
pub mod models;
pub mod opcore;
