use serde::Serialize;

use super::CharacterTable;
use crate::error::{Error, Result};

/// Smallest degree of a nontrivial irreducible character.
///
/// The trivial group has no nontrivial representations; its degree is
/// `None`, read as `D = infinity` (every bound `c * D^-e` becomes 0).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct QuasiRandomnessDegree {
    pub degree: Option<usize>,
    pub witness_row: Option<usize>,
}

impl QuasiRandomnessDegree {
    /// `D^-exponent`, with `D = infinity` mapping to 0.
    pub fn power(&self, exponent: f64) -> f64 {
        match self.degree {
            Some(d) => (d as f64).powf(-exponent),
            None => 0.0,
        }
    }
}

/// Minimum nontrivial degree, cross-checked against perfectness.
///
/// A nontrivial one-dimensional character exists exactly when the
/// commutator subgroup is proper, so `D = 1` iff `commutator_order < n`.
pub fn quasirandomness_degree(
    table: &CharacterTable,
    commutator_order: usize,
) -> Result<QuasiRandomnessDegree> {
    let witness = (0..table.num_characters())
        .filter(|&r| r != table.trivial_row())
        .min_by_key(|&r| (table.degree(r), r));
    let degree = witness.map(|r| table.degree(r));
    let perfect = commutator_order == table.group_order();
    if (degree == Some(1)) == perfect {
        return Err(Error::InconsistentDegree { degree, perfect });
    }
    Ok(QuasiRandomnessDegree {
        degree,
        witness_row: witness,
    })
}
