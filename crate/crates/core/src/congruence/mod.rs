//! Modal filters, congruences and the correspondence between them.

mod oracle;
mod verdicts;

pub use oracle::{all_congruences_oracle, principal_congruence, ORACLE_BOUND};
pub use verdicts::{
    check_congruence_extension, check_internal_cong_inequalities, is_simple, is_subdirectly_irreducible,
    SiVerdict,
};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::NablaAlgebra;
use crate::lattice::{canonical_set_order, Elem, ElemSet};
use crate::report::Report;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CongruenceError {
    #[error("algebra is not normal")]
    NotNormal,
    #[error("underlying lattice is not distributive")]
    NotDistributive,
    #[error("algebra is trivial")]
    Trivial,
    #[error("algebra has {size} elements, oracle bound is {max}")]
    TooLarge { size: usize, max: usize },
    #[error("not an embedding: {0}")]
    NotEmbedding(String),
    #[error("{0}")]
    Invariant(String),
}

/// `∇1 = 1` and `∇(a∧b) = ∇a∧∇b`.
pub(crate) fn is_normal(alg: &NablaAlgebra) -> bool {
    alg.nabla(alg.top()) == alg.top()
        && alg
            .elements()
            .all(|a| alg.elements().all(|b| alg.nabla(alg.meet(a, b)) == alg.meet(alg.nabla(a), alg.nabla(b))))
}

pub(crate) fn require_normal(alg: &NablaAlgebra) -> Result<(), CongruenceError> {
    if is_normal(alg) {
        Ok(())
    } else {
        Err(CongruenceError::NotNormal)
    }
}

pub(crate) fn require_normal_distributive(alg: &NablaAlgebra) -> Result<(), CongruenceError> {
    require_normal(alg)?;
    if !alg.lat().is_distributive() {
        return Err(CongruenceError::NotDistributive);
    }
    Ok(())
}

/// An upset containing 1 and closed under ∧, ∇ and □.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ModalFilter(ElemSet);

impl ModalFilter {
    pub fn members(&self) -> &ElemSet {
        &self.0
    }

    pub fn contains(&self, a: Elem) -> bool {
        self.0.contains(&a)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_subset(&self, other: &ModalFilter) -> bool {
        self.0.is_subset(&other.0)
    }

    /// Accepts `set` only if it really is a modal filter of `alg`.
    pub fn from_set(alg: &NablaAlgebra, set: ElemSet) -> Option<ModalFilter> {
        let inside = |a: Elem| set.contains(&a);
        let ok = inside(alg.top())
            && set.iter().all(|&a| {
                inside(alg.nabla(a))
                    && inside(alg.boxed(a))
                    && alg.elements().all(|b| !alg.leq(a, b) || inside(b))
                    && set.iter().all(|&b| inside(alg.meet(a, b)))
            });
        ok.then_some(ModalFilter(set))
    }
}

/// Least modal filter containing `seeds`, by fixpoint iteration.
pub fn modal_filter_closure(alg: &NablaAlgebra, seeds: &ElemSet) -> Result<ModalFilter, CongruenceError> {
    require_normal(alg)?;
    Ok(closure(alg, seeds.iter().copied()))
}

pub(crate) fn closure(alg: &NablaAlgebra, seeds: impl IntoIterator<Item = Elem>) -> ModalFilter {
    let mut inside = vec![false; alg.len()];
    inside[alg.top()] = true;
    for s in seeds {
        inside[s] = true;
    }
    loop {
        let current: Vec<Elem> = alg.elements().filter(|&a| inside[a]).collect();
        let mut grew = false;
        let mut add = |x: Elem| {
            if !inside[x] {
                inside[x] = true;
                grew = true;
            }
        };
        for &a in &current {
            add(alg.nabla(a));
            add(alg.boxed(a));
            for &b in &current {
                add(alg.meet(a, b));
            }
            for b in alg.elements().filter(|&b| alg.leq(a, b)) {
                add(b);
            }
        }
        if !grew {
            break;
        }
    }
    ModalFilter(alg.elements().filter(|&a| inside[a]).collect())
}

/// Every modal filter of a finite algebra is `m({a})` for its least element,
/// so closing each singleton finds them all. Sorted by size, then members.
pub fn all_modal_filters(alg: &NablaAlgebra) -> Result<Vec<ModalFilter>, CongruenceError> {
    require_normal(alg)?;
    let mut out: Vec<ModalFilter> = alg.elements().map(|a| closure(alg, [a])).collect();
    out.sort_by(|a, b| canonical_set_order(&a.0, &b.0));
    out.dedup();
    Ok(out)
}

/// An equivalence on the carrier, stored as block ids numbered in order of
/// first occurrence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Congruence(Vec<usize>);

impl Congruence {
    pub fn identity(n: usize) -> Self {
        Congruence((0..n).collect())
    }

    pub fn total(n: usize) -> Self {
        Congruence(vec![0; n])
    }

    /// Relabels arbitrary block labels canonically.
    pub fn from_labels<T: PartialEq>(labels: &[T]) -> Self {
        let mut firsts: Vec<&T> = Vec::new();
        let blocks = labels
            .iter()
            .map(|l| match firsts.iter().position(|f| *f == l) {
                Some(i) => i,
                None => {
                    firsts.push(l);
                    firsts.len() - 1
                }
            })
            .collect();
        Congruence(blocks)
    }

    /// `None` unless `related` is reflexive, symmetric and transitive.
    pub fn from_relation(n: usize, related: impl Fn(Elem, Elem) -> bool) -> Option<Self> {
        let mut labels = vec![usize::MAX; n];
        for x in 0..n {
            if labels[x] == usize::MAX {
                labels[x] = x;
                for (y, label) in labels.iter_mut().enumerate().skip(x + 1) {
                    if related(x, y) {
                        *label = x;
                    }
                }
            }
        }
        let c = Congruence::from_labels(&labels);
        (0..n).all(|x| (0..n).all(|y| related(x, y) == c.related(x, y))).then_some(c)
    }

    pub fn blocks(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn related(&self, x: Elem, y: Elem) -> bool {
        self.0[x] == self.0[y]
    }

    pub fn block_count(&self) -> usize {
        self.0.iter().max().map_or(0, |m| m + 1)
    }

    pub fn is_identity(&self) -> bool {
        self.block_count() == self.len()
    }

    pub fn is_total(&self) -> bool {
        self.block_count() <= 1
    }

    /// `self ⊆ other` as sets of pairs.
    pub fn is_finer(&self, other: &Congruence) -> bool {
        (0..self.len()).all(|x| (x + 1..self.len()).all(|y| !self.related(x, y) || other.related(x, y)))
    }

    /// Pulls back along `map`: `a ~ b` iff `map[a] ~ map[b]`.
    pub fn restrict(&self, map: &[Elem]) -> Congruence {
        Congruence::from_labels(&map.iter().map(|&a| self.0[a]).collect::<Vec<_>>())
    }

    /// Compatibility with every operation; `⊃` is checked when the algebra
    /// has it. Witnesses are `[x, y, z, w]` with `x ~ y`, `z ~ w`.
    pub fn check_compatible(&self, alg: &NablaAlgebra) -> Report {
        let mut r = Report::new();
        if self.len() != alg.len() {
            r.fail("carrier size", vec![self.len(), alg.len()]);
            return r;
        }
        let pairs: Vec<(Elem, Elem)> =
            alg.elements().flat_map(|x| alg.elements().map(move |y| (x, y))).filter(|&(x, y)| self.related(x, y)).collect();
        for &(x, y) in &pairs {
            r.require(self.related(alg.nabla(x), alg.nabla(y)), "respects ∇", || vec![x, y]);
            for &(z, w) in &pairs {
                let witness = || vec![x, y, z, w];
                r.require(self.related(alg.meet(x, z), alg.meet(y, w)), "respects ∧", witness);
                r.require(self.related(alg.join(x, z), alg.join(y, w)), "respects ∨", witness);
                r.require(self.related(alg.arrow(x, z), alg.arrow(y, w)), "respects →", witness);
                if let (Some(a), Some(b)) = (alg.imp(x, z), alg.imp(y, w)) {
                    r.require(self.related(a, b), "respects ⊃", witness);
                }
            }
        }
        r
    }
}

fn biconditional(alg: &NablaAlgebra, x: Elem, y: Elem) -> Elem {
    alg.meet(alg.arrow(x, y), alg.arrow(y, x))
}

/// α: `x ~ y` iff `(x→y)∧(y→x) ∈ F`.
pub fn congruence_from_filter(alg: &NablaAlgebra, filter: &ModalFilter) -> Result<Congruence, CongruenceError> {
    require_normal_distributive(alg)?;
    let c = Congruence::from_relation(alg.len(), |x, y| filter.contains(biconditional(alg, x, y)))
        .ok_or_else(|| CongruenceError::Invariant("α(F) is not an equivalence".into()))?;
    let r = c.check_compatible(alg);
    if !r.ok {
        return Err(CongruenceError::Invariant(format!("α(F) is not a congruence: {:?}", r.violations)));
    }
    Ok(c)
}

/// β: the block of 1.
pub fn filter_from_congruence(alg: &NablaAlgebra, theta: &Congruence) -> Result<ModalFilter, CongruenceError> {
    require_normal_distributive(alg)?;
    if theta.len() != alg.len() {
        return Err(CongruenceError::Invariant("congruence is over a different carrier".into()));
    }
    let set: ElemSet = alg.elements().filter(|&x| theta.related(x, alg.top())).collect();
    ModalFilter::from_set(alg, set).ok_or_else(|| CongruenceError::Invariant("β(θ) is not a modal filter".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery::{gen_heyting, gen_xn};
    use crate::lattice::{boolean, chain};

    fn set(xs: &[Elem]) -> ElemSet {
        xs.iter().copied().collect()
    }

    /// Every subset that passes the defining predicate.
    fn subset_scan(alg: &NablaAlgebra) -> Vec<ElemSet> {
        let n = alg.len();
        let mut out: Vec<ElemSet> = (0u32..1 << n)
            .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect::<ElemSet>())
            .filter(|s| ModalFilter::from_set(alg, s.clone()).is_some())
            .collect();
        out.sort_by(canonical_set_order);
        out
    }

    #[test]
    fn closure_examples() {
        let x1 = gen_xn(1).unwrap();
        assert_eq!(modal_filter_closure(&x1, &set(&[1])).unwrap().members(), &set(&[0, 1, 2]));
        let h3 = gen_heyting(&chain(3)).unwrap();
        assert_eq!(modal_filter_closure(&h3, &set(&[1])).unwrap().members(), &set(&[1, 2]));
        assert_eq!(modal_filter_closure(&h3, &set(&[])).unwrap().members(), &set(&[2]));
    }

    #[test]
    fn filter_lists_match_subset_scan() {
        let x1 = gen_xn(1).unwrap();
        let h3 = gen_heyting(&chain(3)).unwrap();
        let b2 = gen_heyting(&chain(2)).unwrap();
        let listed = |a: &NablaAlgebra| all_modal_filters(a).unwrap().into_iter().map(|f| f.0).collect::<Vec<_>>();
        assert_eq!(listed(&x1), vec![set(&[2]), set(&[0, 1, 2])]);
        assert_eq!(listed(&h3), vec![set(&[2]), set(&[1, 2]), set(&[0, 1, 2])]);
        assert_eq!(listed(&b2), vec![set(&[1]), set(&[0, 1])]);
        for a in [&x1, &h3, &b2, &gen_xn(2).unwrap(), &gen_heyting(&boolean(2)).unwrap()] {
            assert_eq!(listed(a), subset_scan(a));
        }
    }

    #[test]
    fn alpha_beta_examples() {
        let h3 = gen_heyting(&chain(3)).unwrap();
        let f = closure(&h3, [1]);
        assert_eq!(congruence_from_filter(&h3, &f).unwrap().blocks(), &[0, 1, 1]);
        assert!(congruence_from_filter(&h3, &closure(&h3, [])).unwrap().is_identity());
        let x1 = gen_xn(1).unwrap();
        assert_eq!(filter_from_congruence(&x1, &Congruence::total(3)).unwrap().members(), &set(&[0, 1, 2]));
    }

    #[test]
    fn canonical_labels() {
        assert_eq!(Congruence::from_labels(&[7, 3, 7, 5]).blocks(), &[0, 1, 0, 2]);
        assert!(Congruence::from_relation(3, |x, y| x == y || (x + y == 1)).is_some());
        assert!(Congruence::from_relation(3, |x, y| x == y || x.abs_diff(y) == 1).is_none());
        assert!(Congruence::identity(3).is_finer(&Congruence::total(3)));
        assert!(!Congruence::total(3).is_finer(&Congruence::identity(3)));
    }

    #[test]
    fn non_normal_is_rejected() {
        let x = crate::gallery::gen_trivial(&chain(2));
        assert_eq!(all_modal_filters(&x), Err(CongruenceError::NotNormal));
    }
}
