//! Finite groups stored as dense multiplication tables.
//!
//! Elements are the indices `0..n`. The full `n x n` table is kept in memory
//! so every product is a single lookup; the hot loops elsewhere in the crate
//! average over the whole group and would otherwise be dominated by element
//! arithmetic.

mod cayley;
mod conjugacy;
mod families;

pub use cayley::{load_cayley_table, to_cayley_text};
pub use conjugacy::{commutator_subgroup, conjugacy_classes, ConjugacyStructure};
pub use families::{build_alternating, build_cyclic, build_psl2, build_sl2, build_symmetric};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};

/// Largest order accepted anywhere in the crate (`|S_7|`).
pub const MAX_ORDER: usize = 5040;

/// Orders up to this value get an exhaustive associativity check.
pub const EXHAUSTIVE_ASSOCIATIVITY_MAX: usize = 256;

/// Number of random triples tested above [`EXHAUSTIVE_ASSOCIATIVITY_MAX`].
pub const SAMPLED_ASSOCIATIVITY_TRIPLES: usize = 100_000;

/// How associativity was established when the group was validated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum AssociativityCheck {
    Exhaustive,
    Sampled { triples: usize, threshold: usize },
}

/// A validated finite group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    mul: Vec<u16>,
    inv: Vec<u16>,
    identity: usize,
    associativity: AssociativityCheck,
}

impl FiniteGroup {
    /// Validates a multiplication table given row-major (`table[i * n + j] = i*j`).
    ///
    /// Checks the Latin-square property, locates the identity, builds the
    /// inverse table and checks associativity.
    pub fn from_table(name: impl Into<String>, order: usize, table: Vec<usize>) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidParameter(
                "group order must be positive".into(),
            ));
        }
        if order > MAX_ORDER {
            return Err(Error::OrderTooLarge {
                order,
                cap: MAX_ORDER,
            });
        }
        if table.len() != order * order {
            return Err(Error::InvalidParameter(format!(
                "table has {} entries, expected {}",
                table.len(),
                order * order
            )));
        }
        let n = order;
        for (pos, &value) in table.iter().enumerate() {
            if value >= n {
                return Err(Error::EntryOutOfRange {
                    row: pos / n,
                    column: pos % n,
                    value,
                    order: n,
                });
            }
        }

        let mut seen = vec![usize::MAX; n];
        for row in 0..n {
            seen.fill(usize::MAX);
            for column in 0..n {
                let value = table[row * n + column];
                if seen[value] != usize::MAX {
                    return Err(Error::RepeatedInRow {
                        row,
                        value,
                        first: seen[value],
                        second: column,
                    });
                }
                seen[value] = column;
            }
        }
        for column in 0..n {
            seen.fill(usize::MAX);
            for row in 0..n {
                let value = table[row * n + column];
                if seen[value] != usize::MAX {
                    return Err(Error::RepeatedInColumn {
                        column,
                        value,
                        first: seen[value],
                        second: row,
                    });
                }
                seen[value] = row;
            }
        }

        let identity = (0..n)
            .find(|&e| (0..n).all(|j| table[e * n + j] == j && table[j * n + e] == j))
            .ok_or(Error::NoIdentity)?;

        let mut inv = vec![0u16; n];
        for i in 0..n {
            // Latin rows guarantee exactly one right inverse.
            let j = (0..n)
                .find(|&j| table[i * n + j] == identity)
                .ok_or(Error::NoInverse(i))?;
            if table[j * n + i] != identity {
                return Err(Error::NoInverse(i));
            }
            inv[i] = j as u16;
        }

        let associativity = check_associativity(n, &table)?;

        Ok(Self {
            name: name.into(),
            order: n,
            mul: table.into_iter().map(|v| v as u16).collect(),
            inv,
            identity,
            associativity,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn associativity(&self) -> AssociativityCheck {
        self.associativity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// `g x g^-1`.
    #[inline]
    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    /// `a b a^-1 b^-1`.
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))
    }

    /// Row `a` of the multiplication table.
    pub fn row(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        self.mul[a * self.order..(a + 1) * self.order]
            .iter()
            .map(|&v| v as usize)
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order;
        (0..n).all(|a| (a + 1..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Returns a copy renamed to `name`.
    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Relabels elements: old element `i` becomes `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        let n = self.order;
        if perm.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                actual: perm.len(),
            });
        }
        let mut table = vec![0usize; n * n];
        for a in 0..n {
            for b in 0..n {
                table[perm[a] * n + perm[b]] = perm[self.mul(a, b)];
            }
        }
        Self::from_table(self.name.clone(), n, table)
    }
}

fn check_associativity(n: usize, table: &[usize]) -> Result<AssociativityCheck> {
    let m = |a: usize, b: usize| table[a * n + b];
    if n <= EXHAUSTIVE_ASSOCIATIVITY_MAX {
        for a in 0..n {
            for b in 0..n {
                let ab = m(a, b);
                for c in 0..n {
                    if m(ab, c) != m(a, m(b, c)) {
                        return Err(Error::NonAssociative { a, b, c });
                    }
                }
            }
        }
        Ok(AssociativityCheck::Exhaustive)
    } else {
        // Fixed seed: validation of a given table is reproducible.
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_a550c);
        for _ in 0..SAMPLED_ASSOCIATIVITY_TRIPLES {
            let (a, b, c) = (
                rng.random_range(0..n),
                rng.random_range(0..n),
                rng.random_range(0..n),
            );
            if m(m(a, b), c) != m(a, m(b, c)) {
                return Err(Error::NonAssociative { a, b, c });
            }
        }
        Ok(AssociativityCheck::Sampled {
            triples: SAMPLED_ASSOCIATIVITY_TRIPLES,
            threshold: EXHAUSTIVE_ASSOCIATIVITY_MAX,
        })
    }
}
