//! Class algebra, character tables and the quasi-randomness degree.

mod character_table;
mod class_algebra;
mod degree;
mod isotypic;

pub use character_table::{character_table, CharacterOptions, CharacterTable};
pub use class_algebra::{class_algebra, ClassAlgebra};
pub use degree::{quasirandomness_degree, QuasiRandomnessDegree};
pub use isotypic::{conjugation_multiplicity, isotypic_project, isotypic_rank};

use crate::catalog;
use crate::error::Result;
use crate::group::{commutator_subgroup, conjugacy_classes, ConjugacyStructure, FiniteGroup};
use crate::seeds::stream_rng;

/// A group together with everything derived from its character table.
#[derive(Debug, Clone)]
pub struct GroupAnalysis {
    pub group: FiniteGroup,
    pub classes: ConjugacyStructure,
    pub algebra: ClassAlgebra,
    pub table: CharacterTable,
    pub commutator_order: usize,
    pub degree: QuasiRandomnessDegree,
}

impl GroupAnalysis {
    pub fn new(group: FiniteGroup, seed: u64, opts: &CharacterOptions) -> Result<Self> {
        let classes = conjugacy_classes(&group);
        let algebra = class_algebra(&group, &classes);
        let mut rng = stream_rng(seed, "character-table", 0);
        let table = character_table(&group, &classes, &algebra, opts, &mut rng)?;
        let commutator_order = commutator_subgroup(&group).len();
        let degree = quasirandomness_degree(&table, commutator_order)?;
        Ok(Self {
            group,
            classes,
            algebra,
            table,
            commutator_order,
            degree,
        })
    }

    /// Resolves a catalog identifier and analyzes it with default options.
    pub fn from_name(id: &str, seed: u64) -> Result<Self> {
        Self::new(catalog::resolve(id)?, seed, &CharacterOptions::default())
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    /// `D^-exponent` (0 for the trivial group).
    pub fn d_power(&self, exponent: f64) -> f64 {
        self.degree.power(exponent)
    }

    pub fn is_perfect(&self) -> bool {
        self.commutator_order == self.group.order()
    }
}
