use num_complex::Complex64;
use rayon::prelude::*;

use super::{GroupFunction, PairFunction};
use crate::error::{Error, Result};
use crate::group::{ConjugacyStructure, FiniteGroup};

/// Largest order for operations that materialize dense `G x G` data.
pub const PAIR_ORDER_CAP: usize = 2000;

pub(crate) fn check_pair_cap(n: usize) -> Result<()> {
    if n > PAIR_ORDER_CAP {
        return Err(Error::TooLargeForPairs {
            order: n,
            cap: PAIR_ORDER_CAP,
        });
    }
    Ok(())
}

/// `E(f | Phi)`: the average of `f` over each conjugacy class.
pub fn cond_exp_conj(classes: &ConjugacyStructure, f: &GroupFunction) -> GroupFunction {
    let mut out = vec![Complex64::new(0.0, 0.0); f.len()];
    for c in 0..classes.num_classes() {
        let members = classes.members(c);
        let avg = members.iter().map(|&x| f.get(x)).sum::<Complex64>() / members.len() as f64;
        for &x in members {
            out[x] = avg;
        }
    }
    GroupFunction::new(out)
}

/// `phi(z) = (1/n) sum_w F(w, w z)`.
///
/// `E(F | Delta)(x, y) = phi(x^-1 y)`: substitute `w = g x` in the diagonal
/// average `(1/n) sum_g F(g x, g y)`.
pub fn diag_profile(group: &FiniteGroup, f: &PairFunction) -> Vec<Complex64> {
    let n = group.order();
    match f {
        PairFunction::Tensor { left, right } => {
            let (l, r) = (left.values(), right.values());
            (0..n)
                .into_par_iter()
                .map(|z| (0..n).map(|w| l[w] * r[group.mul(w, z)]).sum::<Complex64>() / n as f64)
                .collect()
        }
        PairFunction::Dense { .. } => (0..n)
            .into_par_iter()
            .map(|z| {
                (0..n)
                    .map(|w| f.eval(w, group.mul(w, z)))
                    .sum::<Complex64>()
                    / n as f64
            })
            .collect(),
    }
}

/// `E(F | Delta)`, the average over the diagonal left action, as a dense
/// pair function.
pub fn cond_exp_diag(group: &FiniteGroup, f: &PairFunction) -> Result<PairFunction> {
    let n = group.order();
    check_pair_cap(n)?;
    let phi = diag_profile(group, f);
    Ok(PairFunction::from_fn(n, |x, y| {
        phi[group.mul(group.inv(x), y)]
    }))
}

/// `P_{pi (x) pi}(u (x) v)` for the conjugation action: the average of
/// `(u o S^g T^g) (x) (v o S^g T^g)` over `g`.
pub fn proj_fixed_tensor(
    group: &FiniteGroup,
    u: &GroupFunction,
    v: &GroupFunction,
) -> Result<PairFunction> {
    let n = group.order();
    check_pair_cap(n)?;
    // conjugated copies, indexed [g * n + x]
    let conj_table = |f: &GroupFunction| -> Vec<Complex64> {
        (0..n * n)
            .map(|p| f.get(group.conjugate(p / n, p % n)))
            .collect()
    };
    let ug = conj_table(u);
    let vg = conj_table(v);
    let mut out = vec![Complex64::new(0.0, 0.0); n * n];
    let inv_n = 1.0 / n as f64;
    out.par_chunks_mut(n).enumerate().for_each(|(x, row)| {
        for g in 0..n {
            let a = ug[g * n + x];
            let vrow = &vg[g * n..(g + 1) * n];
            for (slot, b) in row.iter_mut().zip(vrow) {
                *slot += a * b;
            }
        }
        for slot in row.iter_mut() {
            *slot *= inv_n;
        }
    });
    PairFunction::dense(n, out)
}
