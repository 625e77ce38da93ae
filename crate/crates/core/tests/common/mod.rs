#![allow(dead_code)]

use std::sync::{Arc, OnceLock};

use nabla_core::algebra::{classify, FlagSet, NablaAlgebra, Property};
use nabla_core::enumerate::enumerate_algebras;
use nabla_core::gallery::algebra_fixtures;

/// Every algebra with at most `max_n ≤ 6` elements, enumerated once.
pub fn catalog(max_n: usize) -> Vec<Arc<NablaAlgebra>> {
    static SIX: OnceLock<Vec<Arc<NablaAlgebra>>> = OnceLock::new();
    let all = SIX.get_or_init(|| enumerate_algebras(6, FlagSet::EMPTY).unwrap().into_iter().map(Arc::new).collect());
    all.iter().filter(|a| a.len() <= max_n).cloned().collect()
}

pub fn normal_distributive(max_n: usize) -> Vec<Arc<NablaAlgebra>> {
    catalog(max_n).iter().filter(|a| has_nd(a)).cloned().collect()
}

pub fn has_nd(a: &NablaAlgebra) -> bool {
    let f = classify(a).flags;
    f.contains(Property::N) && f.contains(Property::D)
}

pub fn fixtures() -> Vec<(&'static str, Arc<NablaAlgebra>)> {
    algebra_fixtures().into_iter().map(|(n, a)| (n, Arc::new(a))).collect()
}
