//! Exact computations for graded torsion-free modules over quasi-homogeneous
//! plane curves A = k[x,y]/(f), and the natural graded integrable connection
//! ∇ with ∇_E acting on weight-w elements by w and ∇_D = q·∇_E.

pub mod error;
pub mod field;
pub mod linalg;
pub mod poly;
pub mod roots;
pub mod curve;
pub mod semigroup;
pub mod derivation;
pub mod gradmod;
pub mod connection;
pub mod catalog;
pub mod io;
pub mod report;

pub use error::{Error, Result};
pub use field::{Field, FieldElement, NumberField, Rational};
pub use poly::{BiPoly, UniPoly};
pub use curve::{Branch, BranchInput, BranchKind, QuasiCurve, Weights};
pub use semigroup::{NumericalSemigroup, ShiftedSemigroup};
pub use derivation::{DerivationOnA, ExtendedDerivation, KoszulData, QElement};
pub use gradmod::{FreeCover, GradedPiece, GradedSubmodule, Membership, ModuleElement, WitnessTerm};
pub use connection::{ConnectionPath, ConnectionReport, VerificationSummary};
pub use catalog::{CatalogEntry, Fixture, Label};
pub use io::{CurveSpec, ModuleSpec};
