//! Point actions composed with functions.
//!
//! `S^g x = g x` and `T^g x = x g^-1`. The operations return the composed
//! function `f o S^g`, `f o T^g`, which is what appears inside the integrals.

use super::GroupFunction;
use crate::group::FiniteGroup;

/// `x -> f(g x)`.
pub fn act_s(group: &FiniteGroup, g: usize, f: &GroupFunction) -> GroupFunction {
    GroupFunction::new(group.elements().map(|x| f.get(group.mul(g, x))).collect())
}

/// `x -> f(x g^-1)`.
pub fn act_t(group: &FiniteGroup, g: usize, f: &GroupFunction) -> GroupFunction {
    let g_inv = group.inv(g);
    GroupFunction::new(
        group
            .elements()
            .map(|x| f.get(group.mul(x, g_inv)))
            .collect(),
    )
}

/// `x -> f(g x g^-1)`, i.e. `f o S^g T^g`.
pub fn conj_action(group: &FiniteGroup, g: usize, f: &GroupFunction) -> GroupFunction {
    GroupFunction::new(
        group
            .elements()
            .map(|x| f.get(group.conjugate(g, x)))
            .collect(),
    )
}

/// Unitary actions of `G` on `L^2(G)` used by the matrix-coefficient bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Action {
    /// `f -> f o S^g T^g`; fixed vectors are class functions.
    Conjugation,
    /// `f -> f o S^g`; fixed vectors are constants.
    Left,
    /// `f -> f o T^g`; fixed vectors are constants.
    Right,
}

impl Action {
    pub fn apply(self, group: &FiniteGroup, g: usize, f: &GroupFunction) -> GroupFunction {
        match self {
            Action::Conjugation => conj_action(group, g, f),
            Action::Left => act_s(group, g, f),
            Action::Right => act_t(group, g, f),
        }
    }
}
