//! Modular data of rational chiral theories and their permutation orbifolds.
//!
//! The crate is organised bottom-up:
//!
//! * [`modular`] holds [`ModularData`], fusion rings and the modular-axiom
//!   validation suite.
//! * [`theories`] provides reference theories and the JSON theory format.
//! * [`groups`] implements finite permutation groups and numerically computed
//!   character tables.
//! * [`orbifold_z2`] assembles the complete modular data of the two-fold
//!   permutation orbifold `(A ⊗ A)^{Z2}`.
//! * [`spectrum`] enumerates the sectors of cyclic and full permutation
//!   orbifolds of `A^{⊗n}`.
//! * [`fixedpoint`] counts fixed-point resolutions from tabulated finite-group
//!   data.

pub mod error;
pub mod fixedpoint;
pub mod groups;
pub mod modular;
pub mod orbifold_z2;
pub mod spectrum;
pub mod theories;

pub use error::{Error, Result};
pub use modular::{
    FusionRing, Label, ModularData, ValidatedTheory, ValidationCheck, ValidationReport, EPS_INT,
    EPS_MOD,
};
