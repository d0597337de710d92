//! Finite property lattices and their distributive hulls, perfect-measurement
//! dynamics on orthomodular lattices, and the sup-enriched categorical layer
//! relating powerset maps, ideal frames with a resolution, and sup-lattices.
//!
//! Every law the library relies on is exposed as a check returning a
//! [`Verdict`] with a re-checkable witness.

pub mod catalog;
pub mod cli;
pub mod dot;
pub mod dynamics;
pub mod format;
pub mod hull;
pub mod lattice;
pub mod quantaloid;
pub mod report;
pub mod set;
pub mod verdict;

pub use catalog::{CatalogEntry, Flags, Generator};
pub use dynamics::{sasaki_hook, sasaki_projection, DiagramReport, MeasurementSetup};
pub use format::LatticeDocument;
pub use hull::{closure_c, DistributiveIdeal, IdealLattice};
pub use lattice::{AnyLattice, Elem, FiniteLattice, Frame, OrthoLattice};
pub use quantaloid::{DCHeytMorphism, PSupMorphism, SupMorphism};
pub use set::ElemSet;
pub use verdict::{Verdict, Witness};

use thiserror::Error;

/// Any error the library can report.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Lattice(#[from] lattice::LatticeError),
    #[error(transparent)]
    Hull(#[from] hull::HullError),
    #[error(transparent)]
    Dynamics(#[from] dynamics::DynamicsError),
    #[error(transparent)]
    Quantaloid(#[from] quantaloid::QuantaloidError),
    #[error(transparent)]
    Catalog(#[from] catalog::CatalogError),
    #[error(transparent)]
    Format(#[from] format::FormatError),
    #[error("{0}")]
    Usage(String),
}
