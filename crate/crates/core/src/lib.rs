//! Exact invariants for Fox torus homotopy groups, Rhodes groups of
//! transformation groups, and their evaluation (Gottlieb-type) subgroups.
//!
//! Spaces are modelled by their homotopy data ([`model::SpaceModel`]) and
//! finite group actions by [`model::TransformationModel`]. Everything here is
//! pure computation over immutable values; file formats, the shipped catalog
//! and the command-line front end live in the `thg` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod abelian;
pub mod error;
pub mod extnat;
pub mod fingroup;
pub mod fox;
pub mod matrix;
pub mod model;
pub mod report;
pub mod rhodes;
pub mod tower;

pub use abelian::FgAbelian;
pub use error::{Error, ErrorKind, Result};
pub use extnat::ExtNat;
pub use fingroup::{CayleyGroup, Subgroup};
pub use matrix::IntMatrix;
pub use model::{Pi1, SpaceModel, SubgroupData, TransformationModel};
pub use report::{CheckEntry, CheckReport, Determined, Judgement, Status, Verdict};
pub use tower::{TowerElement, TowerSummary, VirtAbelian};
