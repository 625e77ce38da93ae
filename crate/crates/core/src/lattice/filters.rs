use serde::{Deserialize, Serialize};

use super::{Elem, ElemSet, FiniteLattice};

/// A prime filter, stored as its sorted member set.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PrimeFilter(pub ElemSet);

impl PrimeFilter {
    pub fn contains(&self, a: Elem) -> bool {
        self.0.contains(&a)
    }

    pub fn members(&self) -> &ElemSet {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Canonical order for element sets: by size, then lexicographically by members.
pub fn canonical_set_order(a: &ElemSet, b: &ElemSet) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.iter().cmp(b.iter()))
}

impl FiniteLattice {
    /// Upward closed and closed under binary meets. Contains the top element
    /// whenever it is non-empty.
    pub fn is_filter(&self, set: &ElemSet) -> bool {
        !set.is_empty()
            && set.iter().all(|&a| self.elements().all(|x| !self.leq(a, x) || set.contains(&x)))
            && set.iter().all(|&a| set.iter().all(|&b| set.contains(&self.meet(a, b))))
    }

    /// The primality predicate read literally: a filter without bottom such
    /// that `a ∨ b ∈ P` forces `a ∈ P` or `b ∈ P`.
    pub fn is_prime_filter(&self, set: &ElemSet) -> bool {
        self.is_filter(set)
            && !set.contains(&self.bot())
            && self.elements().all(|a| {
                self.elements().all(|b| {
                    !set.contains(&self.join(a, b)) || set.contains(&a) || set.contains(&b)
                })
            })
    }

    /// `a ≠ 0` and `a ≤ x ∨ y` implies `a ≤ x` or `a ≤ y`.
    pub fn is_join_prime(&self, a: Elem) -> bool {
        a != self.bot()
            && self.elements().all(|x| {
                self.elements().all(|y| {
                    !self.leq(a, self.join(x, y)) || self.leq(a, x) || self.leq(a, y)
                })
            })
    }

    /// All prime filters in canonical order (size, then members).
    ///
    /// Every filter of a finite lattice is principal, and `[a)` is prime exactly
    /// when `a` is join-prime, so the scan runs over elements, not subsets.
    pub fn prime_filters(&self) -> Vec<PrimeFilter> {
        let mut out: Vec<ElemSet> = self
            .elements()
            .filter(|&a| self.is_join_prime(a))
            .map(|a| self.principal_filter(a))
            .collect();
        out.sort_by(canonical_set_order);
        debug_assert!(
            !self.is_distributive() || out.len() == self.join_irreducibles().len(),
            "prime filter count must match join-irreducibles on distributive lattices"
        );
        out.into_iter().map(PrimeFilter).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::super::{boolean, chain, diamond, pentagon};
    use super::*;

    // Independent oracle: scan every subset against the literal predicate.
    fn prime_filters_by_subsets(l: &FiniteLattice) -> Vec<ElemSet> {
        let n = l.len();
        let mut out: Vec<ElemSet> = (0u32..1 << n)
            .map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).collect::<ElemSet>())
            .filter(|s| l.is_prime_filter(s))
            .collect();
        out.sort_by(canonical_set_order);
        out
    }

    fn as_sets(pf: Vec<PrimeFilter>) -> Vec<ElemSet> {
        pf.into_iter().map(|p| p.0).collect()
    }

    #[test]
    fn three_chain_prime_filters() {
        let l = chain(3);
        let expected: Vec<ElemSet> = vec![[2].into(), [1, 2].into()];
        assert_eq!(prime_filters_by_subsets(&l), expected);
        assert_eq!(as_sets(l.prime_filters()), expected);
    }

    #[test]
    fn two_element_boolean_prime_filters() {
        assert_eq!(as_sets(chain(2).prime_filters()), vec![ElemSet::from([1])]);
    }

    #[test]
    fn boolean_square_has_two() {
        let l = boolean(2);
        assert_eq!(l.join_irreducibles().len(), 2);
        assert_eq!(l.prime_filters().len(), 2);
        assert_eq!(as_sets(l.prime_filters()), prime_filters_by_subsets(&l));
    }

    #[test]
    fn principal_scan_matches_subset_scan_on_small_lattices() {
        let mut lattices = super::super::all_lattices(6);
        lattices.push(boolean(3));
        lattices.push(pentagon());
        lattices.push(diamond());
        for l in &lattices {
            assert_eq!(as_sets(l.prime_filters()), prime_filters_by_subsets(l), "{l:?}");
            if l.is_distributive() {
                assert_eq!(l.prime_filters().len(), l.join_irreducibles().len());
            }
        }
    }
}
