//! Combinatorial invariants of Kulikov models of Kummer surfaces attached to
//! split degeneration data of abelian surfaces: component groups, certified
//! periodic fans, dual complexes and their quotients by `[−1]`, component
//! counts under base change, and the monodromy classification of types.

pub mod degeneration;
pub mod error;
pub mod fan;
mod json;
pub mod lattice;
pub mod monodromy;
pub mod report;
pub mod strata;

pub use degeneration::{DegenerationData, DegenerationDoc, GammaElement, ConePoint, ValidationReport};
pub use error::{Error, Result};
pub use fan::{CertifiedFan, LatticeSimplex, PeriodicTriangulation, PolarizationForm};
pub use lattice::{ComponentGroup, IntMatrix, Sign};
pub use monodromy::{RationalOperator, TwoTorsionPermutation};
pub use report::{Report, ReportOptions};
pub use strata::{DeltaComplex, InvolutionAction, KulikovType};
