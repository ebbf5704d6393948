//! Exact formal group laws, their Hopf algebras, the dual enveloping
//! algebra, and the comparison map from (modified) formal group cohomology to
//! Lie algebra cohomology, together with a p-adic evaluation layer for the
//! standard groups attached to a law.
//!
//! Every object is a truncation: results are exact modulo the filtration
//! step one above the truncation degree `D`.

pub mod complexes;
pub mod error;
pub mod fgl;
pub mod hopf;
pub mod io;
pub mod lie;
pub mod padic;
pub mod linalg;
pub mod pbw;
pub mod rational;
pub mod series;
pub mod ustar;

pub use error::{Error, Result};
pub use fgl::{AxiomReport, Builtin, FormalGroupLaw, TailModel, Violation};
pub use lie::LieAlgebra;
pub use pbw::Straightener;
pub use rational::Rational;
pub use series::{MultiIndex, TruncatedSeries};
pub use ustar::{DualTensor, DualUElement};
pub use hopf::{modified_ring_check, og_antipode_apply, og_comultiply, tals, tals_inverse, ModifiedMembershipReport, Pairing};
pub use padic::{GroupPoint, PadicGroup, PadicScalar, Valuation};
