//! Harmonic analysis on finite groups: character tables, the
//! quasi-randomness degree `D` (smallest dimension of a nontrivial
//! irreducible representation), and numerical checks of the mixing
//! inequalities that `D` controls.

pub mod adversary;
pub mod catalog;
pub mod error;
pub mod group;
pub mod harmonic;
pub mod report;
pub mod seeds;
pub mod spectra;

pub use error::{Error, Result};
