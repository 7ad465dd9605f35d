//! The bounded quantities: the tensor-projection gap, the matrix-coefficient
//! variance, the quadruple discrepancy and the intermediate quantities of its
//! proof.
//!
//! Every integral over `G` or `X = G` uses the weight `1/n`. Loops over the
//! outer group variable run in parallel; each term is computed independently
//! and the terms are summed serially in index order, so results do not depend
//! on the thread count.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use super::expectation::{check_pair_cap, cond_exp_conj, diag_profile, proj_fixed_tensor};
use super::{act_t, conj_action, Action, GroupFunction, PairFunction};
use crate::error::{Error, Result};
use crate::group::{ConjugacyStructure, FiniteGroup};
use crate::spectra::GroupAnalysis;

/// Imaginary parts above this on quantities that are real by symmetry are errors.
pub const IMAGINARY_TOL: f64 = 1e-9;
/// Allowed disagreement between the two routes of the step-two identity.
pub const IDENTITY_TOL: f64 = 1e-10;

/// One evaluated inequality `observed <= bound`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundCheck {
    pub quantity: String,
    pub observed: f64,
    pub bound: f64,
    /// `bound - observed`; negative means the inequality failed.
    pub margin: f64,
    pub inputs_digest: String,
    pub seed: Option<u64>,
}

impl BoundCheck {
    pub fn new(quantity: &str, observed: f64, bound: f64, inputs: &[&GroupFunction]) -> Self {
        Self {
            quantity: quantity.to_string(),
            observed,
            bound,
            margin: bound - observed,
            inputs_digest: inputs_digest(inputs),
            seed: None,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn passed(&self) -> bool {
        self.margin >= 0.0
    }
}

/// First 16 hex digits of SHA-256 over the IEEE bit patterns of the inputs.
pub fn inputs_digest(inputs: &[&GroupFunction]) -> String {
    let mut hasher = Sha256::new();
    for f in inputs {
        hasher.update((f.len() as u64).to_le_bytes());
        for v in f.values() {
            hasher.update(v.re.to_bits().to_le_bytes());
            hasher.update(v.im.to_bits().to_le_bytes());
        }
    }
    hex::encode(&hasher.finalize()[..8])
}

fn ordered_sum<T: Send>(n: usize, term: impl Fn(usize) -> T + Sync + Send) -> Vec<T> {
    (0..n).into_par_iter().map(term).collect()
}

fn check_lengths(n: usize, fs: &[&GroupFunction]) -> Result<()> {
    fs.iter().try_for_each(|f| f.check_len(n))
}

fn require_real(quantity: &str, value: Complex64) -> Result<f64> {
    if value.im.abs() > IMAGINARY_TOL {
        return Err(Error::ImaginaryResidue {
            quantity: quantity.to_string(),
            imaginary: value.im,
        });
    }
    Ok(value.re)
}

#[inline]
fn action_point(group: &FiniteGroup, action: Action, g: usize, x: usize) -> usize {
    match action {
        Action::Conjugation => group.conjugate(g, x),
        Action::Left => group.mul(g, x),
        Action::Right => group.mul(x, group.inv(g)),
    }
}

/// Fixed-vector projection for `action`: class averaging for conjugation,
/// the mean for the regular actions.
pub fn fixed_projection(
    classes: &ConjugacyStructure,
    action: Action,
    f: &GroupFunction,
) -> GroupFunction {
    match action {
        Action::Conjugation => cond_exp_conj(classes, f),
        Action::Left | Action::Right => GroupFunction::constant(f.len(), f.mean()),
    }
}

/// `||P(u (x) v) - P u (x) P v||` in `L^2(mu (x) mu)` for the conjugation
/// action, evaluated from the dense projection.
pub fn lemma_gap(a: &GroupAnalysis, u: &GroupFunction, v: &GroupFunction) -> Result<BoundCheck> {
    let n = a.order();
    check_lengths(n, &[u, v])?;
    check_pair_cap(n)?;
    let p = proj_fixed_tensor(&a.group, u, v)?;
    let eu = cond_exp_conj(&a.classes, u);
    let ev = cond_exp_conj(&a.classes, v);
    let PairFunction::Dense { values, .. } = &p else {
        unreachable!("projection is dense")
    };
    let rows: Vec<f64> = ordered_sum(n, |x| {
        (0..n)
            .map(|y| (values[x * n + y] - eu.get(x) * ev.get(y)).norm_sqr())
            .sum::<f64>()
    });
    let observed = (rows.iter().sum::<f64>() / (n * n) as f64).sqrt();
    let bound = a.d_power(0.5) * u.l2_norm() * v.l2_norm();
    Ok(BoundCheck::new("lemma", observed, bound, &[u, v]))
}

/// The same gap from the Gram identity
/// `||P(u (x) v) - Pu (x) Pv||^2 = (1/n) sum_g <pi^g u, u><pi^g v, v> - ||Pu||^2 ||Pv||^2`,
/// in `O(n^2)` without materializing `G x G` data.
pub fn lemma_gap_gram(
    group: &FiniteGroup,
    classes: &ConjugacyStructure,
    action: Action,
    u: &GroupFunction,
    v: &GroupFunction,
) -> f64 {
    let n = group.order();
    let terms = ordered_sum(n, |g| {
        let mut cu = Complex64::new(0.0, 0.0);
        let mut cv = Complex64::new(0.0, 0.0);
        for x in 0..n {
            let y = action_point(group, action, g, x);
            cu += u.get(y) * u.get(x).conj();
            cv += v.get(y) * v.get(x).conj();
        }
        cu * cv / (n * n) as f64
    });
    let total: Complex64 = terms.iter().sum::<Complex64>() / n as f64;
    let pu = fixed_projection(classes, action, u).l2_norm();
    let pv = fixed_projection(classes, action, v).l2_norm();
    (total.re - pu * pu * pv * pv).max(0.0).sqrt()
}

/// `(1/n) sum_g |<u, pi^g v> - <P u, P v>|^2` for the given action.
pub fn matrix_coefficient_variance(
    group: &FiniteGroup,
    classes: &ConjugacyStructure,
    action: Action,
    u: &GroupFunction,
    v: &GroupFunction,
) -> f64 {
    let n = group.order();
    let fixed = fixed_projection(classes, action, u).inner(&fixed_projection(classes, action, v));
    let terms = ordered_sum(n, |g| {
        let coeff = (0..n)
            .map(|x| u.get(x) * v.get(action_point(group, action, g, x)).conj())
            .sum::<Complex64>()
            / n as f64;
        (coeff - fixed).norm_sqr()
    });
    terms.iter().sum::<f64>() / n as f64
}

/// Matrix-coefficient variance checked against both constants.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorollaryCheck {
    /// Bound `D^-1/2 ||u||^2 ||v||^2`.
    pub published: BoundCheck,
    /// Bound `D^-1 ||u||^2 ||v||^2`.
    pub erratum: BoundCheck,
}

pub fn corollary_lhs(
    a: &GroupAnalysis,
    u: &GroupFunction,
    v: &GroupFunction,
) -> Result<CorollaryCheck> {
    check_lengths(a.order(), &[u, v])?;
    let observed = matrix_coefficient_variance(&a.group, &a.classes, Action::Conjugation, u, v);
    let norms = u.l2_norm().powi(2) * v.l2_norm().powi(2);
    Ok(CorollaryCheck {
        published: BoundCheck::new("corollary", observed, a.d_power(0.5) * norms, &[u, v]),
        erratum: BoundCheck::new(
            "corollary_erratum",
            observed,
            a.d_power(1.0) * norms,
            &[u, v],
        ),
    })
}

/// `(1/n) sum_x f1(x) f2(g x) f3(x g)` for every `g`.
fn triple_correlations(
    group: &FiniteGroup,
    f1: &GroupFunction,
    f2: &GroupFunction,
    f3: &GroupFunction,
) -> Vec<Complex64> {
    let n = group.order();
    ordered_sum(n, |g| {
        (0..n)
            .map(|x| f1.get(x) * (f2.get(group.mul(g, x)) * f3.get(group.mul(x, g))))
            .sum::<Complex64>()
            / n as f64
    })
}

/// The quadruple discrepancy
/// `(1/n) sum_g |(1/n) sum_x f1(x) f2(gx) f3(xg) - (mean f1) <E(f2|Phi), conj E(f3|Phi)>|`
/// against `4 D^-1/8`.
pub fn theorem_lhs(
    a: &GroupAnalysis,
    f1: &GroupFunction,
    f2: &GroupFunction,
    f3: &GroupFunction,
) -> Result<BoundCheck> {
    let n = a.order();
    check_lengths(n, &[f1, f2, f3])?;
    for f in [f1, f2, f3] {
        f.check_disc()?;
    }
    let e2 = cond_exp_conj(&a.classes, f2);
    let e3 = cond_exp_conj(&a.classes, f3);
    let structured = (0..n).map(|x| e2.get(x) * e3.get(x)).sum::<Complex64>() / n as f64;
    let product = f1.mean() * structured;
    let inner = triple_correlations(&a.group, f1, f2, f3);
    let observed = inner.iter().map(|c| (c - product).norm()).sum::<f64>() / n as f64;
    Ok(BoundCheck::new(
        "theorem",
        observed,
        4.0 * a.d_power(0.125),
        &[f1, f2, f3],
    ))
}

fn check_step_inputs(f1: &GroupFunction, others: &[&GroupFunction]) -> Result<()> {
    f1.check_step_normalized()?;
    others.iter().try_for_each(|f| f.check_disc())
}

/// `(1/n) sum_g |(1/n) sum_x f1(x) f2(gx) f3(xg)|` for normalized `f1`,
/// against `3 D^-1/8`.
pub fn step1_reduced_lhs(
    a: &GroupAnalysis,
    f1: &GroupFunction,
    f2: &GroupFunction,
    f3: &GroupFunction,
) -> Result<BoundCheck> {
    let n = a.order();
    check_lengths(n, &[f1, f2, f3])?;
    check_step_inputs(f1, &[f2, f3])?;
    let inner = triple_correlations(&a.group, f1, f2, f3);
    let observed = inner.iter().map(|c| c.norm()).sum::<f64>() / n as f64;
    Ok(BoundCheck::new(
        "step1",
        observed,
        3.0 * a.d_power(0.125),
        &[f1, f2, f3],
    ))
}

/// Step-two quantity with the residual of its order-swapped evaluation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Step2Check {
    pub check: BoundCheck,
    /// `|direct - swapped|`, where the swapped route integrates
    /// `F3 * (1/n) sum_g (F1 o T~^g)(F2 o S~^g T~^g)` over `X^2`.
    pub identity_residual: f64,
}

/// `(1/n) sum_g |(1/n) sum_x f3(x) f1(x g^-1) f2(g x g^-1)|^2` against `5 D^-1/4`.
pub fn step2_squared(
    a: &GroupAnalysis,
    f1: &GroupFunction,
    f2: &GroupFunction,
    f3: &GroupFunction,
) -> Result<Step2Check> {
    let n = a.order();
    check_lengths(n, &[f1, f2, f3])?;
    check_step_inputs(f1, &[f2, f3])?;
    check_pair_cap(n)?;
    let group = &a.group;

    let terms = ordered_sum(n, |g| {
        let g_inv = group.inv(g);
        let c = (0..n)
            .map(|x| f3.get(x) * f1.get(group.mul(x, g_inv)) * f2.get(group.conjugate(g, x)))
            .sum::<Complex64>()
            / n as f64;
        c.norm_sqr()
    });
    let observed = terms.iter().sum::<f64>() / n as f64;

    let swapped = step2_swapped(group, f1, f2, f3);
    let swapped = require_real("step2 swapped form", swapped)?;
    let identity_residual = (observed - swapped).abs();
    if identity_residual > IDENTITY_TOL {
        return Err(Error::IdentityMismatch {
            quantity: "step2".into(),
            residual: identity_residual,
        });
    }
    Ok(Step2Check {
        check: BoundCheck::new("step2", observed, 5.0 * a.d_power(0.25), &[f1, f2, f3]),
        identity_residual,
    })
}

/// `int_{X^2} F3 * Q` with `Q = (1/n) sum_g (F1 o T~^g)(F2 o S~^g T~^g)`
/// evaluated densely, `F_i = f_i (x) conj(f_i)`.
///
/// Each summand of `Q` is the elementary tensor `A_g (x) conj(A_g)` with
/// `A_g(x) = f1(x g^-1) f2(g x g^-1)`; `Q` is accumulated row by row.
fn step2_swapped(
    group: &FiniteGroup,
    f1: &GroupFunction,
    f2: &GroupFunction,
    f3: &GroupFunction,
) -> Complex64 {
    let n = group.order();
    let twisted: Vec<Complex64> = (0..n * n)
        .map(|p| {
            let (g, x) = (p / n, p % n);
            f1.get(group.mul(x, group.inv(g))) * f2.get(group.conjugate(g, x))
        })
        .collect();
    let rows = ordered_sum(n, |x| {
        let mut q = vec![Complex64::new(0.0, 0.0); n];
        for g in 0..n {
            let row = &twisted[g * n..(g + 1) * n];
            let ax = row[x];
            for (slot, ay) in q.iter_mut().zip(row) {
                *slot += ax * ay.conj();
            }
        }
        let weighted = q
            .iter()
            .zip(f3.values())
            .map(|(qv, f3y)| f3y.conj() * qv)
            .sum::<Complex64>();
        f3.get(x) * weighted / n as f64
    });
    rows.iter().sum::<Complex64>() / (n * n) as f64
}

/// `f1 * conj(f1 o T^h)`.
fn right_twist(group: &FiniteGroup, f: &GroupFunction, h: usize) -> GroupFunction {
    f * &act_t(group, h, f).conj()
}

/// `f2 * conj(f2 o S^h T^h)`.
fn conj_twist(group: &FiniteGroup, f: &GroupFunction, h: usize) -> GroupFunction {
    f * &conj_action(group, h, f).conj()
}

/// The intermediate inequality before the appeal to quasi-randomness:
/// `(1/n) sum_h int_{X^2} F1 (conj F1 o T~^h) E(F2 (conj F2 o S~^h T~^h) | Delta)`
/// against `25 D^-1/2`.
///
/// Both factors are elementary tensors `a (x) conj a`, so with
/// `phi = diag_profile` the inner integral is `(1/n) sum_z psi(z) phi(z)`,
/// where `psi` is the profile of the first factor.
pub fn step3_intermediate(
    a: &GroupAnalysis,
    f1: &GroupFunction,
    f2: &GroupFunction,
) -> Result<BoundCheck> {
    let n = a.order();
    check_lengths(n, &[f1, f2])?;
    check_step_inputs(f1, &[f2])?;
    check_pair_cap(n)?;
    let group = &a.group;
    let terms = ordered_sum(n, |h| {
        let first = right_twist(group, f1, h);
        let second = conj_twist(group, f2, h);
        let psi = diag_profile(group, &PairFunction::hermitian_square(&first));
        let phi = diag_profile(group, &PairFunction::hermitian_square(&second));
        psi.iter().zip(&phi).map(|(p, q)| p * q).sum::<Complex64>() / n as f64
    });
    let total = terms.iter().sum::<Complex64>() / n as f64;
    let observed = require_real("step3", total)?;
    Ok(BoundCheck::new(
        "step3",
        observed,
        25.0 * a.d_power(0.5),
        &[f1, f2],
    ))
}

/// `(1/n) sum_h |<f1, f1 o T^h>|^2 |<f2, f2 o S^h T^h>|^2` against `D^-1/2`.
pub fn step4_final(
    a: &GroupAnalysis,
    f1: &GroupFunction,
    f2: &GroupFunction,
) -> Result<BoundCheck> {
    let n = a.order();
    check_lengths(n, &[f1, f2])?;
    f1.check_mean_zero()?;
    if f1.l2_norm() > 1.0 + super::function::RANGE_TOL {
        return Err(Error::Constraint(format!(
            "||f1||_2 = {} exceeds 1",
            f1.l2_norm()
        )));
    }
    f2.check_disc()?;
    let group = &a.group;
    let terms = ordered_sum(n, |h| {
        let h_inv = group.inv(h);
        let mut c1 = Complex64::new(0.0, 0.0);
        let mut c2 = Complex64::new(0.0, 0.0);
        for x in 0..n {
            c1 += f1.get(x) * f1.get(group.mul(x, h_inv)).conj();
            c2 += f2.get(x) * f2.get(group.conjugate(h, x)).conj();
        }
        let scale = (n * n) as f64;
        (c1.norm_sqr() / scale) * (c2.norm_sqr() / scale)
    });
    let observed = terms.iter().sum::<f64>() / n as f64;
    Ok(BoundCheck::new(
        "step4",
        observed,
        a.d_power(0.5),
        &[f1, f2],
    ))
}

/// `||E(F2 (conj F2 o S~^h T~^h) | Delta) - |<f2, f2 o S^h T^h>|^2||` in
/// `L^2(mu (x) mu)`, against `D^-1/2`.
pub fn step4_lemma_substitution(
    a: &GroupAnalysis,
    f2: &GroupFunction,
    h: usize,
) -> Result<BoundCheck> {
    let n = a.order();
    check_lengths(n, &[f2])?;
    f2.check_disc()?;
    check_pair_cap(n)?;
    let observed = lemma_substitution_value(&a.group, f2, h);
    Ok(BoundCheck::new(
        "step4_lemma",
        observed,
        a.d_power(0.5),
        &[f2],
    ))
}

fn lemma_substitution_value(group: &FiniteGroup, f2: &GroupFunction, h: usize) -> f64 {
    let twisted = conj_twist(group, f2, h);
    let phi = diag_profile(group, &PairFunction::hermitian_square(&twisted));
    let c = twisted.mean().norm_sqr();
    // E(x, y) = phi(x^-1 y) and (x, y) -> (x, x^-1 y) preserves mu (x) mu
    let n = phi.len();
    (phi.iter().map(|p| (p - c).norm_sqr()).sum::<f64>() / n as f64).sqrt()
}

/// [`step4_lemma_substitution`] for every `h`.
pub fn step4_lemma_sweep(a: &GroupAnalysis, f2: &GroupFunction) -> Result<Vec<BoundCheck>> {
    let n = a.order();
    check_lengths(n, &[f2])?;
    f2.check_disc()?;
    check_pair_cap(n)?;
    let bound = a.d_power(0.5);
    let digest = inputs_digest(&[f2]);
    let values = ordered_sum(n, |h| lemma_substitution_value(&a.group, f2, h));
    Ok(values
        .into_iter()
        .map(|observed| BoundCheck {
            quantity: "step4_lemma".into(),
            observed,
            bound,
            margin: bound - observed,
            inputs_digest: digest.clone(),
            seed: None,
        })
        .collect())
}
