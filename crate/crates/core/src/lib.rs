//! Max-plus linear algebra centred on the pseudo-diagonal similarity
//! canonical form.
//!
//! Scalars live in ℝ ∪ {ε} with a ⊕ b = max(a, b) and a ⊗ b = a + b. On top
//! of the dense [`Matrix`] type the crate provides:
//!
//! - [`spectral`]: maximum cycle mean, transitive closure, critical classes,
//!   eigenspace bases, cyclicity and the empirical period of powers;
//! - [`pdiag`]: recognition of matrices similar to a pseudo-diagonal matrix,
//!   the diagonal scaling that realizes the similarity, and closed forms for
//!   powers and the eigenproblem;
//! - [`special`]: optimal-node and separable matrices;
//! - [`roots`]: the root condition, explicit k-th roots, and matrices with a
//!   root that fail the condition;
//! - [`mmipp`]: orbit simulation of x(r+1) = A ⊗ x(r).
//!
//! Library indices are 0-based. Every equality-based verdict takes a
//! [`Tolerance`].

pub mod error;
pub mod genperm;
pub mod matrix;
pub mod mmipp;
pub mod pdiag;
pub mod roots;
pub mod scalar;
pub mod special;
pub mod spectral;
pub mod text;

pub use error::Error;
pub use genperm::{conjugate, GenPerm};
pub use matrix::Matrix;
pub use pdiag::{PdiagCertificate, PdiagWitness, StabilityReport};
pub use roots::{RootConditionReport, RootWitness};
pub use scalar::{MaxPlus, Tolerance};
pub use special::{SeparableFactorization, SpecialClassification};
pub use spectral::SpectralSummary;
pub use text::parse_matrix;
