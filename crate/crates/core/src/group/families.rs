//! Builders for the concrete families used throughout the crate.
//!
//! Element orderings are fixed per family:
//! * `Z_n`: residues `0..n`.
//! * `S_m`, `A_m`: permutations of `0..m` in lexicographic order of their
//!   one-line notation; products compose right-to-left, `(s*t)(i) = s(t(i))`.
//! * `SL(2,p)`: matrices `[[a, b], [c, d]]` ordered lexicographically on
//!   `(a, b, c, d)`.
//! * `PSL(2,p)`: the lexicographically smaller of `{M, -M}`, ordered the same way.

use std::collections::HashMap;
use std::hash::Hash;

use super::FiniteGroup;
use crate::error::{Error, Result};

/// The cyclic group `Z_n` under addition mod `n`.
pub fn build_cyclic(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "cyclic group order must be at least 1".into(),
        ));
    }
    if n > super::MAX_ORDER {
        return Err(Error::OrderTooLarge {
            order: n,
            cap: super::MAX_ORDER,
        });
    }
    let table = (0..n * n).map(|p| (p / n + p % n) % n).collect();
    FiniteGroup::from_table(format!("z:{n}"), n, table)
}

pub fn build_symmetric(m: usize) -> Result<FiniteGroup> {
    check_degree(m)?;
    let perms = permutations(m);
    from_elements(format!("s:{m}"), perms, |s, t| compose(s, t))
}

pub fn build_alternating(m: usize) -> Result<FiniteGroup> {
    check_degree(m)?;
    let perms = permutations(m).into_iter().filter(|p| is_even(p)).collect();
    from_elements(format!("a:{m}"), perms, |s, t| compose(s, t))
}

pub fn build_sl2(p: usize) -> Result<FiniteGroup> {
    check_prime(p)?;
    let elements = sl2_elements(p);
    from_elements(format!("sl2:{p}"), elements, |a, b| mat_mul(a, b, p))
}

pub fn build_psl2(p: usize) -> Result<FiniteGroup> {
    check_prime(p)?;
    let mut elements: Vec<[usize; 4]> = sl2_elements(p)
        .into_iter()
        .filter(|m| *m <= negate(m, p))
        .collect();
    elements.sort();
    from_elements(format!("psl2:{p}"), elements, |a, b| {
        let c = mat_mul(a, b, p);
        c.min(negate(&c, p))
    })
}

fn check_degree(m: usize) -> Result<()> {
    if !(2..=7).contains(&m) {
        return Err(Error::InvalidParameter(format!(
            "permutation degree must be in 2..=7, got {m}"
        )));
    }
    Ok(())
}

fn check_prime(p: usize) -> Result<()> {
    let prime = p >= 2
        && (2..p)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d));
    if !prime || !(3..=13).contains(&p) {
        return Err(Error::InvalidParameter(format!(
            "p must be a prime in 3..=13, got {p}"
        )));
    }
    Ok(())
}

fn from_elements<T, F>(name: String, elements: Vec<T>, op: F) -> Result<FiniteGroup>
where
    T: Eq + Hash,
    F: Fn(&T, &T) -> T,
{
    let n = elements.len();
    let index: HashMap<&T, usize> = elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let mut table = Vec::with_capacity(n * n);
    for a in &elements {
        for b in &elements {
            let c = op(a, b);
            let k = *index.get(&c).ok_or_else(|| {
                Error::InvalidParameter(format!("{name}: product left the element set"))
            })?;
            table.push(k);
        }
    }
    FiniteGroup::from_table(name, n, table)
}

/// All permutations of `0..m` in lexicographic order.
fn permutations(m: usize) -> Vec<Vec<usize>> {
    let mut current: Vec<usize> = (0..m).collect();
    let mut out = vec![current.clone()];
    // Standard next-permutation step.
    while let Some(i) = (0..m.saturating_sub(1))
        .rev()
        .find(|&i| current[i] < current[i + 1])
    {
        let j = (i + 1..m).rev().find(|&j| current[j] > current[i]).unwrap();
        current.swap(i, j);
        current[i + 1..].reverse();
        out.push(current.clone());
    }
    out
}

fn compose(s: &[usize], t: &[usize]) -> Vec<usize> {
    t.iter().map(|&i| s[i]).collect()
}

fn is_even(p: &[usize]) -> bool {
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 0
}

fn sl2_elements(p: usize) -> Vec<[usize; 4]> {
    let mut out = Vec::with_capacity(p * (p * p - 1));
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                for d in 0..p {
                    if (a * d + p * p - b * c) % p == 1 {
                        out.push([a, b, c, d]);
                    }
                }
            }
        }
    }
    out
}

fn mat_mul(x: &[usize; 4], y: &[usize; 4], p: usize) -> [usize; 4] {
    [
        (x[0] * y[0] + x[1] * y[2]) % p,
        (x[0] * y[1] + x[1] * y[3]) % p,
        (x[2] * y[0] + x[3] * y[2]) % p,
        (x[2] * y[1] + x[3] * y[3]) % p,
    ]
}

fn negate(m: &[usize; 4], p: usize) -> [usize; 4] {
    m.map(|v| (p - v) % p)
}
