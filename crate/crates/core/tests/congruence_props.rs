mod common;

use std::collections::BTreeSet;

use nabla_core::algebra::NablaAlgebra;
use nabla_core::congruence::{
    all_congruences_oracle, all_modal_filters, congruence_from_filter, filter_from_congruence, is_simple,
    is_subdirectly_irreducible, modal_filter_closure, ModalFilter,
};
use nabla_core::lattice::{Elem, ElemSet};
use proptest::prelude::*;

/// Meets of finitely many `∇^m □^k s`, then the up-closure. Exponents up to
/// `2|A|` reach every value the sequences take.
fn term_oracle(alg: &NablaAlgebra, seeds: &ElemSet) -> ElemSet {
    let depth = 2 * alg.len();
    let mut terms: BTreeSet<Elem> = BTreeSet::from([alg.top()]);
    for &s in seeds {
        for k in 0..=depth {
            for m in 0..=depth {
                terms.insert(alg.nabla_pow(alg.box_pow(s, k), m));
            }
        }
    }
    loop {
        let meets: Vec<Elem> = terms.iter().flat_map(|&a| terms.iter().map(move |&b| (a, b))).map(|(a, b)| alg.meet(a, b)).collect();
        let before = terms.len();
        terms.extend(meets);
        if terms.len() == before {
            break;
        }
    }
    alg.elements().filter(|&y| terms.iter().any(|&t| alg.leq(t, y))).collect()
}

#[test]
fn closure_matches_term_oracle() {
    for alg in common::normal_distributive(5).iter().chain(common::fixtures().iter().map(|f| &f.1).filter(|a| common::has_nd(a))) {
        for a in alg.elements() {
            for b in alg.elements() {
                let seeds: ElemSet = [a, b].into();
                assert_eq!(modal_filter_closure(alg, &seeds).unwrap().members(), &term_oracle(alg, &seeds));
            }
        }
    }
}

#[test]
fn filters_and_congruences_correspond() {
    let fixtures: Vec<_> = common::fixtures().into_iter().map(|f| f.1).filter(|a| common::has_nd(a)).collect();
    for alg in common::normal_distributive(5).iter().chain(fixtures.iter()) {
        let filters = all_modal_filters(alg).unwrap();
        let congruences = all_congruences_oracle(alg).unwrap();
        assert_eq!(filters.len(), congruences.len());
        let images: BTreeSet<_> = filters.iter().map(|f| congruence_from_filter(alg, f).unwrap()).collect();
        assert_eq!(images, congruences.iter().cloned().collect());
        for f in &filters {
            assert_eq!(&filter_from_congruence(alg, &congruence_from_filter(alg, f).unwrap()).unwrap(), f);
        }
        for c in &congruences {
            assert_eq!(&congruence_from_filter(alg, &filter_from_congruence(alg, c).unwrap()).unwrap(), c);
        }
        for f in &filters {
            for g in &filters {
                if f.is_subset(g) {
                    let (cf, cg) = (congruence_from_filter(alg, f).unwrap(), congruence_from_filter(alg, g).unwrap());
                    assert!(cf.is_finer(&cg));
                }
            }
        }
    }
}

#[test]
fn oracle_congruences_respect_heyting_implication() {
    for alg in common::normal_distributive(5).iter().filter(|a| a.heyting_table().is_some()) {
        for c in all_congruences_oracle(alg).unwrap() {
            let r = c.check_compatible(alg);
            assert!(r.ok, "{r:?}");
        }
    }
}

#[test]
fn simple_implies_irreducible() {
    for alg in common::normal_distributive(5).iter().filter(|a| !a.is_trivial()) {
        if is_simple(alg).unwrap() {
            assert!(is_subdirectly_irreducible(alg).unwrap().holds);
        }
    }
}

#[test]
fn x_family_counts() {
    for (name, alg) in common::fixtures() {
        if name.starts_with('x') {
            assert_eq!(all_modal_filters(&alg).unwrap().len(), 2, "{name}");
        }
    }
}

fn nd_index() -> impl Strategy<Value = usize> {
    0..common::normal_distributive(5).len()
}

proptest! {
    #[test]
    fn closure_is_monotone_and_idempotent(i in nd_index(), s in prop::collection::btree_set(0usize..5, 0..4), t in prop::collection::btree_set(0usize..5, 0..4)) {
        let alg = &common::normal_distributive(5)[i];
        let clip = |x: &BTreeSet<usize>| x.iter().copied().filter(|&e| e < alg.len()).collect::<ElemSet>();
        let (s, t) = (clip(&s), clip(&t));
        let union: ElemSet = s.union(&t).copied().collect();
        let ms = modal_filter_closure(alg, &s).unwrap();
        let mu = modal_filter_closure(alg, &union).unwrap();
        prop_assert!(ms.is_subset(&mu));
        prop_assert_eq!(&modal_filter_closure(alg, ms.members()).unwrap(), &ms);
        prop_assert!(ModalFilter::from_set(alg, ms.members().clone()).is_some());
    }
}
