//! Character tables by simultaneous diagonalization of the class matrices.
//!
//! The class matrices `M_i` (multiplication by the class sum `C_i`) commute
//! and share the eigenvectors `v_r[j] = conj(chi_r(C_j))`. After the diagonal
//! similarity `S = diag(sqrt(|C_j| / n))` these eigenvectors become
//! orthonormal, so `S M_i S^-1` is normal and its adjoint is the matrix of
//! the inverse class. A random real combination of
//! `N_i + N_i^*` and `i (N_i - N_i^*)` is therefore Hermitian; when its
//! eigenvalues are simple, each unit eigenvector is one character up to a
//! phase, and the phase is fixed by `chi_r(1) = d_r > 0`.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rand::Rng;

use super::ClassAlgebra;
use crate::error::{Error, Result};
use crate::group::{ConjugacyStructure, FiniteGroup};

/// Tolerances and retry budget for [`character_table`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CharacterOptions {
    pub orthogonality_tol: f64,
    pub integrality_tol: f64,
    /// Minimum spacing between eigenvalues of the random combination.
    pub separation_tol: f64,
    pub max_attempts: usize,
}

impl Default for CharacterOptions {
    fn default() -> Self {
        Self {
            orthogonality_tol: 1e-8,
            integrality_tol: 1e-6,
            separation_tol: 1e-6,
            max_attempts: 20,
        }
    }
}

/// Irreducible characters evaluated on conjugacy classes.
///
/// Rows are characters, columns are classes (in [`ConjugacyStructure`]
/// order). Rows are sorted by degree, then by rounded real parts in
/// descending order, then by rounded imaginary parts, so the trivial
/// character is always row 0.
#[derive(Debug, Clone, PartialEq)]
pub struct CharacterTable {
    k: usize,
    order: usize,
    values: Vec<Complex64>,
    degrees: Vec<usize>,
    class_sizes: Vec<usize>,
    trivial_row: usize,
    attempts: usize,
}

impl CharacterTable {
    pub fn num_characters(&self) -> usize {
        self.k
    }

    pub fn group_order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn value(&self, row: usize, class: usize) -> Complex64 {
        self.values[row * self.k + class]
    }

    pub fn row(&self, row: usize) -> &[Complex64] {
        &self.values[row * self.k..(row + 1) * self.k]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn degree(&self, row: usize) -> usize {
        self.degrees[row]
    }

    pub fn class_sizes(&self) -> &[usize] {
        &self.class_sizes
    }

    pub fn trivial_row(&self) -> usize {
        self.trivial_row
    }

    /// Number of random combinations tried before the spectrum separated.
    pub fn attempts(&self) -> usize {
        self.attempts
    }

    /// Degrees in ascending order.
    pub fn sorted_degrees(&self) -> Vec<usize> {
        let mut d = self.degrees.clone();
        d.sort_unstable();
        d
    }

    /// Largest deviation from `<chi_r, chi_s> = delta_rs`.
    pub fn row_orthogonality_error(&self) -> f64 {
        let n = self.order as f64;
        let mut worst: f64 = 0.0;
        for r in 0..self.k {
            for s in 0..self.k {
                let ip: Complex64 = (0..self.k)
                    .map(|c| {
                        self.value(r, c) * self.value(s, c).conj() * self.class_sizes[c] as f64
                    })
                    .sum::<Complex64>()
                    / n;
                let target = if r == s { 1.0 } else { 0.0 };
                worst = worst.max((ip - target).norm());
            }
        }
        worst
    }

    /// Largest deviation from `sum_r chi_r(c) conj(chi_r(c')) = delta_cc' n / |C_c|`.
    pub fn column_orthogonality_error(&self) -> f64 {
        let n = self.order as f64;
        let mut worst: f64 = 0.0;
        for c in 0..self.k {
            for c2 in 0..self.k {
                let s: Complex64 = (0..self.k)
                    .map(|r| self.value(r, c) * self.value(r, c2).conj())
                    .sum();
                let target = if c == c2 {
                    n / self.class_sizes[c] as f64
                } else {
                    0.0
                };
                // relative to the diagonal scale
                worst = worst.max((s - target).norm() / (n / self.class_sizes[c] as f64).sqrt());
            }
        }
        worst
    }

    fn validate(&self, opts: &CharacterOptions) -> std::result::Result<(), String> {
        let sum_sq: usize = self.degrees.iter().map(|d| d * d).sum();
        if sum_sq != self.order {
            return Err(format!(
                "sum of squared degrees {sum_sq} != order {}",
                self.order
            ));
        }
        let row_err = self.row_orthogonality_error();
        if row_err > opts.orthogonality_tol {
            return Err(format!("row orthogonality error {row_err:e}"));
        }
        let col_err = self.column_orthogonality_error();
        if col_err > opts.orthogonality_tol {
            return Err(format!("column orthogonality error {col_err:e}"));
        }
        let trivial: Vec<usize> = (0..self.k)
            .filter(|&r| {
                self.row(r)
                    .iter()
                    .all(|v| (v - 1.0).norm() < opts.orthogonality_tol)
            })
            .collect();
        if trivial.len() != 1 {
            return Err(format!("{} rows are identically 1", trivial.len()));
        }
        Ok(())
    }
}

/// Computes the character table from the class algebra.
///
/// Random weights come from `rng`; a run is reproducible given its seed.
pub fn character_table<R: Rng + ?Sized>(
    group: &FiniteGroup,
    classes: &ConjugacyStructure,
    algebra: &ClassAlgebra,
    opts: &CharacterOptions,
    rng: &mut R,
) -> Result<CharacterTable> {
    let k = classes.num_classes();
    let n = group.order();
    let sizes = classes.class_sizes();
    let scale: Vec<f64> = sizes
        .iter()
        .map(|&s| (s as f64 / n as f64).sqrt())
        .collect();
    let inverse: Vec<usize> = (0..k).map(|c| classes.inverse_class(group, c)).collect();
    let mats: Vec<Vec<f64>> = (0..k).map(|i| algebra.class_matrix(i)).collect();

    let mut last_problem = None;
    for attempt in 1..=opts.max_attempts {
        let mut h = DMatrix::<Complex64>::zeros(k, k);
        for i in 0..k {
            // divide by |C_i| so every term has eigenvalues of modulus <= 2
            let alpha = rng.random_range(-1.0..1.0) / sizes[i] as f64;
            let beta = rng.random_range(-1.0..1.0) / sizes[i] as f64;
            let (m, mi) = (&mats[i], &mats[inverse[i]]);
            for l in 0..k {
                for j in 0..k {
                    let sim = scale[l] / scale[j];
                    let plus = (m[l * k + j] + mi[l * k + j]) * sim;
                    let minus = (m[l * k + j] - mi[l * k + j]) * sim;
                    h[(l, j)] += Complex64::new(alpha * plus, -beta * minus);
                }
            }
        }
        let h = (&h + h.adjoint()).scale(0.5);
        let eig = SymmetricEigen::new(h);

        let mut sorted: Vec<f64> = eig.eigenvalues.iter().copied().collect();
        sorted.sort_by(f64::total_cmp);
        let min_gap = sorted
            .windows(2)
            .map(|w| w[1] - w[0])
            .fold(f64::INFINITY, f64::min);
        if min_gap < opts.separation_tol {
            last_problem = None;
            continue;
        }

        match extract(&eig.eigenvectors, &scale, &sizes, n, opts) {
            Ok(mut table) => {
                table.attempts = attempt;
                match table.validate(opts) {
                    Ok(()) => return Ok(table),
                    Err(e) => last_problem = Some(e),
                }
            }
            Err(e) => last_problem = Some(e),
        }
    }
    match last_problem {
        Some(problem) => Err(Error::BadCharacterTable(problem)),
        None => Err(Error::DegenerateSpectrum {
            attempts: opts.max_attempts,
        }),
    }
}

fn extract(
    vectors: &DMatrix<Complex64>,
    scale: &[f64],
    sizes: &[usize],
    n: usize,
    opts: &CharacterOptions,
) -> std::result::Result<CharacterTable, String> {
    let k = scale.len();
    let mut rows: Vec<(usize, Vec<Complex64>)> = Vec::with_capacity(k);
    for col in 0..k {
        let u = vectors.column(col);
        let head = u[0];
        if head.norm() < 1e-12 {
            return Err("eigenvector vanishes on the identity class".into());
        }
        let phase = head / head.norm();
        let degree = head.norm() * (n as f64).sqrt();
        let rounded = degree.round();
        if (degree - rounded).abs() > opts.integrality_tol || rounded < 1.0 {
            return Err(format!("non-integral degree {degree}"));
        }
        let values = (0..k).map(|j| (u[j] / phase).conj() / scale[j]).collect();
        rows.push((rounded as usize, values));
    }

    let key = |v: f64| (v * 1e6).round() as i64;
    rows.sort_by(|(da, va), (db, vb)| {
        da.cmp(db)
            .then_with(|| {
                let ra = va.iter().map(|z| -key(z.re));
                let rb = vb.iter().map(|z| -key(z.re));
                ra.cmp(rb)
            })
            .then_with(|| {
                let ia = va.iter().map(|z| -key(z.im));
                let ib = vb.iter().map(|z| -key(z.im));
                ia.cmp(ib)
            })
    });

    let degrees: Vec<usize> = rows.iter().map(|(d, _)| *d).collect();
    let values: Vec<Complex64> = rows.into_iter().flat_map(|(_, v)| v).collect();
    let trivial_row = (0..k)
        .find(|&r| {
            values[r * k..(r + 1) * k]
                .iter()
                .all(|v| (v - 1.0).norm() < opts.orthogonality_tol)
        })
        .unwrap_or(0);
    Ok(CharacterTable {
        k,
        order: n,
        values,
        degrees,
        class_sizes: sizes.to_vec(),
        trivial_row,
        attempts: 0,
    })
}
