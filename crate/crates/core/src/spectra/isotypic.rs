//! Isotypic decomposition of the conjugation representation on `L^2(G)`.
//!
//! The representation here is the left action `(pi^g f)(x) = f(g^-1 x g)`,
//! for which `P_r = (d_r / n) sum_g conj(chi_r(g)) pi^g` projects onto the
//! `chi_r`-isotypic component.

use num_complex::Complex64;

use super::CharacterTable;
use crate::group::{ConjugacyStructure, FiniteGroup};
use crate::harmonic::GroupFunction;

/// Projection of `f` onto the `chi_row`-isotypic component of the
/// conjugation representation.
pub fn isotypic_project(
    group: &FiniteGroup,
    classes: &ConjugacyStructure,
    table: &CharacterTable,
    row: usize,
    f: &GroupFunction,
) -> GroupFunction {
    let n = group.order();
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    for g in 0..n {
        let coeff = table.value(row, classes.class_of(g)).conj();
        let g_inv = group.inv(g);
        for (x, slot) in out.iter_mut().enumerate() {
            *slot += coeff * f.get(group.conjugate(g_inv, x));
        }
    }
    let scale = table.degree(row) as f64 / n as f64;
    GroupFunction::new(out.into_iter().map(|v| v * scale).collect())
}

/// Rank of the isotypic projection, computed as its trace
/// `sum_x P_r(delta_x)(x)` by counting fixed points of conjugation.
pub fn isotypic_rank(
    group: &FiniteGroup,
    classes: &ConjugacyStructure,
    table: &CharacterTable,
    row: usize,
) -> f64 {
    let n = group.order();
    let mut trace = Complex64::new(0.0, 0.0);
    for g in 0..n {
        let fixed = (0..n).filter(|&x| group.conjugate(g, x) == x).count();
        trace += table.value(row, classes.class_of(g)).conj() * fixed as f64;
    }
    (trace * (table.degree(row) as f64 / n as f64)).re
}

/// Multiplicity of `chi_row` in the conjugation representation, computed
/// from the character alone: the permutation character of conjugation is
/// `|C_G(g)| = n / |class(g)|`, so `<pi, chi_r> = sum_c conj(chi_r(C_c))`.
pub fn conjugation_multiplicity(table: &CharacterTable, row: usize) -> f64 {
    table
        .row(row)
        .iter()
        .map(|v| v.conj())
        .sum::<Complex64>()
        .re
}
