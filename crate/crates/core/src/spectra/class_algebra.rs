use crate::group::{ConjugacyStructure, FiniteGroup};

/// Structure constants of the class-sum algebra:
/// `C_i * C_j = sum_l a[i][j][l] C_l`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassAlgebra {
    k: usize,
    constants: Vec<u64>,
}

impl ClassAlgebra {
    pub fn num_classes(&self) -> usize {
        self.k
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, l: usize) -> u64 {
        self.constants[(i * self.k + j) * self.k + l]
    }

    /// Matrix of multiplication by `C_i` in the class-sum basis:
    /// entry `(l, j)` is `a[i][j][l]`. Row-major `k x k`.
    pub fn class_matrix(&self, i: usize) -> Vec<f64> {
        let k = self.k;
        let mut m = vec![0.0; k * k];
        for l in 0..k {
            for j in 0..k {
                m[l * k + j] = self.get(i, j, l) as f64;
            }
        }
        m
    }
}

/// Exact structure constants by multiplying out class sums.
///
/// `a[i][j][l]` counts pairs `(x, y)` in `C_i x C_j` with `x y = z` for a
/// fixed `z` in `C_l`; it is obtained by counting all products landing in
/// `C_l` and dividing by `|C_l|`.
pub fn class_algebra(group: &FiniteGroup, classes: &ConjugacyStructure) -> ClassAlgebra {
    let k = classes.num_classes();
    let mut constants = vec![0u64; k * k * k];
    let mut counts = vec![0u64; k];
    for i in 0..k {
        for j in 0..k {
            counts.fill(0);
            for &x in classes.members(i) {
                for &y in classes.members(j) {
                    counts[classes.class_of(group.mul(x, y))] += 1;
                }
            }
            for l in 0..k {
                let size = classes.class_size(l) as u64;
                debug_assert_eq!(counts[l] % size, 0);
                constants[(i * k + j) * k + l] = counts[l] / size;
            }
        }
    }
    ClassAlgebra { k, constants }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_alternating, build_cyclic, build_symmetric, conjugacy_classes};

    #[test]
    fn cyclic_constants_are_addition() {
        let g = build_cyclic(5).unwrap();
        let c = conjugacy_classes(&g);
        let a = class_algebra(&g, &c);
        for i in 0..5 {
            for j in 0..5 {
                for l in 0..5 {
                    let (ci, cj, cl) = (
                        c.representatives()[i],
                        c.representatives()[j],
                        c.representatives()[l],
                    );
                    let expected = u64::from((ci + cj) % 5 == cl);
                    assert_eq!(a.get(i, j, l), expected);
                }
            }
        }
    }

    #[test]
    fn trivial_group_single_constant() {
        let g = build_cyclic(1).unwrap();
        let a = class_algebra(&g, &conjugacy_classes(&g));
        assert_eq!(a.num_classes(), 1);
        assert_eq!(a.get(0, 0, 0), 1);
    }

    #[test]
    fn s3_transpositions_squared() {
        let g = build_symmetric(3).unwrap();
        let c = conjugacy_classes(&g);
        let a = class_algebra(&g, &c);
        let by_size = |s| (0..3).find(|&i| c.class_size(i) == s).unwrap();
        let (id, rot, tr) = (by_size(1), by_size(2), by_size(3));
        assert_eq!(a.get(tr, tr, id), 3);
        assert_eq!(a.get(tr, tr, rot), 3);
        assert_eq!(a.get(tr, tr, tr), 0);
    }

    #[test]
    fn size_identity_and_inversion_symmetry() {
        let g = build_alternating(5).unwrap();
        let c = conjugacy_classes(&g);
        let a = class_algebra(&g, &c);
        let k = c.num_classes();
        for i in 0..k {
            for j in 0..k {
                let total: u64 = (0..k)
                    .map(|l| a.get(i, j, l) * c.class_size(l) as u64)
                    .sum();
                assert_eq!(total, (c.class_size(i) * c.class_size(j)) as u64);
                for l in 0..k {
                    // commutativity of the class algebra
                    assert_eq!(a.get(i, j, l), a.get(j, i, l));
                    // inverting both factors and the product
                    let (ii, jj, ll) = (
                        c.inverse_class(&g, i),
                        c.inverse_class(&g, j),
                        c.inverse_class(&g, l),
                    );
                    assert_eq!(a.get(i, j, l), a.get(jj, ii, ll));
                }
            }
        }
    }
}
