use std::collections::BTreeSet;

use super::FiniteGroup;

/// Partition of a group into conjugacy classes.
///
/// Class 0 is always the identity class; the remaining classes are ordered
/// by their smallest element index, which is also the representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyStructure {
    class_of: Vec<usize>,
    representatives: Vec<usize>,
    members: Vec<Vec<usize>>,
}

impl ConjugacyStructure {
    pub fn num_classes(&self) -> usize {
        self.representatives.len()
    }

    #[inline]
    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn class_map(&self) -> &[usize] {
        &self.class_of
    }

    pub fn representatives(&self) -> &[usize] {
        &self.representatives
    }

    pub fn members(&self, class: usize) -> &[usize] {
        &self.members[class]
    }

    pub fn class_size(&self, class: usize) -> usize {
        self.members[class].len()
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        self.members.iter().map(Vec::len).collect()
    }

    pub fn group_order(&self) -> usize {
        self.class_of.len()
    }

    /// Index of the class containing the inverses of `class`.
    pub fn inverse_class(&self, group: &FiniteGroup, class: usize) -> usize {
        self.class_of[group.inv(self.representatives[class])]
    }
}

/// Orbits of `x -> g x g^-1` over all `g`.
pub fn conjugacy_classes(group: &FiniteGroup) -> ConjugacyStructure {
    let n = group.order();
    let mut class_of = vec![usize::MAX; n];
    let mut members: Vec<Vec<usize>> = Vec::new();

    let order = std::iter::once(group.identity()).chain((0..n).filter(|&x| x != group.identity()));
    for x in order {
        if class_of[x] != usize::MAX {
            continue;
        }
        let id = members.len();
        let mut orbit = Vec::new();
        for g in 0..n {
            let y = group.conjugate(g, x);
            if class_of[y] == usize::MAX {
                class_of[y] = id;
                orbit.push(y);
            }
        }
        orbit.sort_unstable();
        members.push(orbit);
    }
    let representatives = members.iter().map(|m| m[0]).collect();
    ConjugacyStructure {
        class_of,
        representatives,
        members,
    }
}

/// The subgroup generated by all commutators `a b a^-1 b^-1`.
pub fn commutator_subgroup(group: &FiniteGroup) -> BTreeSet<usize> {
    let n = group.order();
    let mut in_set = vec![false; n];
    let mut generators = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let c = group.commutator(a, b);
            if !in_set[c] {
                in_set[c] = true;
                generators.push(c);
            }
        }
    }
    // Closure under right multiplication by generators; finite, so this is a subgroup.
    let mut frontier = generators.clone();
    while let Some(x) = frontier.pop() {
        for &s in &generators {
            let y = group.mul(x, s);
            if !in_set[y] {
                in_set[y] = true;
                frontier.push(y);
            }
        }
    }
    (0..n).filter(|&x| in_set[x]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_alternating, build_cyclic, build_sl2, build_symmetric};

    fn sorted_sizes(c: &ConjugacyStructure) -> Vec<usize> {
        let mut s = c.class_sizes();
        s.sort_unstable();
        s
    }

    /// Exhaustive check: x ~ y iff some g conjugates x to y.
    fn brute_force_consistent(g: &FiniteGroup, c: &ConjugacyStructure) -> bool {
        let n = g.order();
        (0..n).all(|x| {
            (0..n).all(|y| {
                let conj = (0..n).any(|h| g.conjugate(h, x) == y);
                conj == (c.class_of(x) == c.class_of(y))
            })
        })
    }

    #[test]
    fn abelian_groups_have_singleton_classes() {
        for n in [1, 2, 6, 12] {
            let g = build_cyclic(n).unwrap();
            let c = conjugacy_classes(&g);
            assert_eq!(c.num_classes(), n);
            assert!(c.class_sizes().iter().all(|&s| s == 1));
        }
    }

    #[test]
    fn small_nonabelian_classes() {
        let s3 = build_symmetric(3).unwrap();
        let c = conjugacy_classes(&s3);
        assert_eq!(sorted_sizes(&c), vec![1, 2, 3]);
        assert!(brute_force_consistent(&s3, &c));

        let a4 = build_alternating(4).unwrap();
        let c = conjugacy_classes(&a4);
        assert_eq!(c.num_classes(), 4);
        assert!(brute_force_consistent(&a4, &c));

        let a5 = build_alternating(5).unwrap();
        let c = conjugacy_classes(&a5);
        assert_eq!(sorted_sizes(&c), vec![1, 12, 12, 15, 20]);
        assert!(brute_force_consistent(&a5, &c));

        let sl25 = build_sl2(5).unwrap();
        let c = conjugacy_classes(&sl25);
        assert_eq!(c.num_classes(), 9);
        assert!(brute_force_consistent(&sl25, &c));
    }

    #[test]
    fn identity_class_is_first_and_singleton() {
        let g = build_sl2(3).unwrap();
        let c = conjugacy_classes(&g);
        assert_eq!(c.members(0), &[g.identity()]);
        assert_eq!(c.class_sizes().iter().sum::<usize>(), g.order());
        assert!(c.class_sizes().iter().all(|s| g.order().is_multiple_of(*s)));
    }

    #[test]
    fn commutator_subgroups() {
        let z = build_cyclic(8).unwrap();
        assert_eq!(commutator_subgroup(&z), BTreeSet::from([0]));

        let s3 = build_symmetric(3).unwrap();
        let d = commutator_subgroup(&s3);
        assert_eq!(d.len(), 3);
        // the subgroup of 3-cycles together with the identity
        let closure_ok = d
            .iter()
            .all(|&a| d.iter().all(|&b| d.contains(&s3.mul(a, b))));
        assert!(closure_ok);

        let a5 = build_alternating(5).unwrap();
        assert_eq!(commutator_subgroup(&a5).len(), 60);
        let a4 = build_alternating(4).unwrap();
        assert_eq!(commutator_subgroup(&a4).len(), 4);
    }
}
