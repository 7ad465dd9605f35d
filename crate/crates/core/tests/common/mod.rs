//! Oracles that share no code path with the library's fast routines.

#![allow(dead_code)]

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex64;
use quasirandom::group::FiniteGroup;
use quasirandom::harmonic::GroupFunction;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Irreducible degrees with multiplicity, from the regular representation.
///
/// Left multiplication by a generic Hermitian `h = b + b*` in `C[G]` acts on
/// each of the `d` copies of a degree-`d` irreducible in the same way, with
/// `d` simple eigenvalues there. So the spectrum splits into clusters of size
/// `d`, exactly `d` of them per irreducible of degree `d`.
pub fn regular_degree_oracle(group: &FiniteGroup, seed: u64) -> Vec<usize> {
    let n = group.order();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    'attempt: for _ in 0..10 {
        let b: Vec<Complex64> = (0..n)
            .map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        // (L_h)[gx][x] += h_g, h = b + b*, (b*)_g = conj(b_{g^-1})
        let mut m = DMatrix::<Complex64>::zeros(n, n);
        for g in 0..n {
            let h = b[g] + b[group.inv(g)].conj();
            for x in 0..n {
                m[(group.mul(g, x), x)] += h;
            }
        }
        let mut eig: Vec<f64> = m.symmetric_eigen().eigenvalues.iter().copied().collect();
        eig.sort_by(|a, b| a.total_cmp(b));
        let mut clusters: BTreeMap<usize, usize> = BTreeMap::new();
        let mut start = 0;
        for i in 1..=n {
            if i == n || eig[i] - eig[i - 1] > 1e-7 {
                *clusters.entry(i - start).or_default() += 1;
                start = i;
            }
        }
        let mut degrees = Vec::new();
        for (&size, &count) in &clusters {
            if count % size != 0 {
                continue 'attempt;
            }
            degrees.extend(std::iter::repeat_n(size, count / size));
        }
        return degrees;
    }
    panic!("no generic element found");
}

/// Conjugacy class sizes by direct orbit enumeration.
pub fn brute_class_sizes(group: &FiniteGroup) -> Vec<usize> {
    let n = group.order();
    let mut seen = vec![false; n];
    let mut sizes = Vec::new();
    for x in 0..n {
        if seen[x] {
            continue;
        }
        let mut size = 0;
        for g in 0..n {
            let y = group.mul(group.mul(g, x), group.inv(g));
            if !seen[y] {
                seen[y] = true;
                size += 1;
            }
        }
        sizes.push(size);
    }
    sizes.sort_unstable();
    sizes
}

pub fn random_function(n: usize, rng: &mut ChaCha8Rng) -> GroupFunction {
    GroupFunction::new(
        (0..n)
            .map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect(),
    )
}

/// Independent unit-modulus values.
pub fn random_phase(n: usize, rng: &mut ChaCha8Rng) -> GroupFunction {
    GroupFunction::new(
        (0..n)
            .map(|_| Complex64::from_polar(1.0, rng.random_range(0.0..std::f64::consts::TAU)))
            .collect(),
    )
}

/// `sum_{g,x,y} f3(x) conj f3(y) f1(x g^-1) conj f1(y g^-1) f2(g x g^-1) conj f2(g y g^-1) / n^3`.
pub fn step2_quadruple_loop(
    group: &FiniteGroup,
    f1: &GroupFunction,
    f2: &GroupFunction,
    f3: &GroupFunction,
) -> Complex64 {
    let n = group.order();
    let mut total = c(0.0, 0.0);
    for g in 0..n {
        let gi = group.inv(g);
        for x in 0..n {
            let xg = group.mul(x, gi);
            let gxg = group.mul(group.mul(g, x), gi);
            let left = f3.get(x) * f1.get(xg) * f2.get(gxg);
            for y in 0..n {
                let yg = group.mul(y, gi);
                let gyg = group.mul(group.mul(g, y), gi);
                total += left * (f3.get(y) * f1.get(yg) * f2.get(gyg)).conj();
            }
        }
    }
    total / (n * n * n) as f64
}

/// `(1/n) sum_h (1/n^2) sum_{x,y} a_h(x) conj a_h(y) (1/n) sum_g b_h(g x) conj b_h(g y)`
/// with `a_h(x) = f1(x) conj f1(x h^-1)`, `b_h(x) = f2(x) conj f2(h x h^-1)`.
pub fn step3_expansion(group: &FiniteGroup, f1: &GroupFunction, f2: &GroupFunction) -> Complex64 {
    let n = group.order();
    let mut total = c(0.0, 0.0);
    for h in 0..n {
        let hi = group.inv(h);
        let a: Vec<Complex64> = (0..n)
            .map(|x| f1.get(x) * f1.get(group.mul(x, hi)).conj())
            .collect();
        let b: Vec<Complex64> = (0..n)
            .map(|x| f2.get(x) * f2.get(group.mul(group.mul(h, x), hi)).conj())
            .collect();
        for x in 0..n {
            for y in 0..n {
                let mut e = c(0.0, 0.0);
                for g in 0..n {
                    e += b[group.mul(g, x)] * b[group.mul(g, y)].conj();
                }
                total += a[x] * a[y].conj() * e / n as f64;
            }
        }
    }
    total / (n * n * n) as f64
}

/// `int_{X^2} |Q|^2` with `Q(x,y) = (1/n) sum_g f1(x g^-1) conj f1(y g^-1) f2(g x g^-1) conj f2(g y g^-1)`.
pub fn q_energy(group: &FiniteGroup, f1: &GroupFunction, f2: &GroupFunction) -> f64 {
    let n = group.order();
    let mut total = 0.0;
    for x in 0..n {
        for y in 0..n {
            let mut q = c(0.0, 0.0);
            for g in 0..n {
                let gi = group.inv(g);
                let ax = f1.get(group.mul(x, gi)) * f2.get(group.mul(group.mul(g, x), gi));
                let ay = f1.get(group.mul(y, gi)) * f2.get(group.mul(group.mul(g, y), gi));
                q += ax * ay.conj();
            }
            total += (q / n as f64).norm_sqr();
        }
    }
    total / (n * n) as f64
}

/// The quadruple discrepancy straight from its definition.
pub fn theorem_brute(group: &FiniteGroup, f: [&GroupFunction; 3]) -> f64 {
    let n = group.order();
    let class_avg = |fun: &GroupFunction, x: usize| {
        (0..n)
            .map(|g| fun.get(group.mul(group.mul(g, x), group.inv(g))))
            .sum::<Complex64>()
            / n as f64
    };
    let mean1 = (0..n).map(|x| f[0].get(x)).sum::<Complex64>() / n as f64;
    let structured = (0..n)
        .map(|x| class_avg(f[1], x) * class_avg(f[2], x))
        .sum::<Complex64>()
        / n as f64;
    let mut total = 0.0;
    for g in 0..n {
        let inner = (0..n)
            .map(|x| f[0].get(x) * f[1].get(group.mul(g, x)) * f[2].get(group.mul(x, g)))
            .sum::<Complex64>()
            / n as f64;
        total += (inner - mean1 * structured).norm();
    }
    total / n as f64
}
