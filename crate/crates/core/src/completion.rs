//! Dedekind-MacNeille completion of a ∇-algebra by normal ideals.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{classify, AlgebraError, AlgebraMorphism, FlagSet, NablaAlgebra, Property};
use crate::lattice::{canonical_set_order, BinaryTable, Elem, ElemSet, FiniteLattice};
use crate::report::Report;

/// Flags the completion is known to inherit.
pub fn inherited_flags() -> FlagSet {
    [Property::H, Property::N, Property::R, Property::L, Property::Fa, Property::Fu].into_iter().collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NormalIdeal(ElemSet);

fn lower_upper(lat: &FiniteLattice, set: &ElemSet) -> ElemSet {
    lat.lower_bounds(&lat.upper_bounds(set))
}

impl NormalIdeal {
    /// `Some` iff `LU(set) = set`.
    pub fn from_set(lat: &FiniteLattice, set: ElemSet) -> Option<Self> {
        (lower_upper(lat, &set) == set).then_some(NormalIdeal(set))
    }

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
}

/// All intersections of principal ideals, the whole carrier included as the
/// empty intersection. Sorted by size, then members.
pub fn normal_ideals(lat: &FiniteLattice) -> Vec<NormalIdeal> {
    let principal: Vec<ElemSet> = lat.elements().map(|a| lat.principal_ideal(a)).collect();
    let mut found: BTreeSet<ElemSet> = principal.iter().cloned().collect();
    found.insert(lat.elements().collect());
    let mut frontier: Vec<ElemSet> = found.iter().cloned().collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for s in &frontier {
            for p in &principal {
                let cut: ElemSet = s.intersection(p).copied().collect();
                if found.insert(cut.clone()) {
                    next.push(cut);
                }
            }
        }
        frontier = next;
    }
    let mut out: Vec<NormalIdeal> = found
        .into_iter()
        .map(|s| {
            let top = lat.maximum(s.iter().copied());
            assert!(top.is_some_and(|t| lat.principal_ideal(t) == s), "finite normal ideals are principal");
            NormalIdeal::from_set(lat, s).expect("intersections of principal ideals are normal")
        })
        .collect();
    out.sort_by(|a, b| canonical_set_order(&a.0, &b.0));
    out
}

/// The completion together with its ideals and the canonical embedding
/// `i(x) = (x]`.
#[derive(Debug, Clone)]
pub struct CompletedAlgebra {
    pub ideals: Vec<NormalIdeal>,
    pub algebra: Arc<NablaAlgebra>,
    pub embedding: AlgebraMorphism,
}

impl CompletedAlgebra {
    pub fn embedding_table(&self) -> &[Elem] {
        self.embedding.map()
    }
}

fn invariant(msg: impl Into<String>) -> AlgebraError {
    AlgebraError::Invariant(msg.into())
}

/// Runs the generic construction: ideal lattice, lifted ∇ and →, canonical
/// embedding. The completion's flags must cover the source's flags among
/// H, N, R, L, Fa, Fu, and for finite input `i` must be an isomorphism.
pub fn dm_complete(alg: &Arc<NablaAlgebra>) -> Result<CompletedAlgebra, AlgebraError> {
    let base = alg.lat();
    let ideals = normal_ideals(base);
    let k = ideals.len();
    let index = |s: &ElemSet| ideals.iter().position(|i| &i.0 == s);
    let lat = FiniteLattice::from_fn(k, |a, b| ideals[a].0.is_subset(&ideals[b].0))?;

    for a in 0..k {
        for b in 0..k {
            let cut: ElemSet = ideals[a].0.intersection(&ideals[b].0).copied().collect();
            let union: ElemSet = ideals[a].0.union(&ideals[b].0).copied().collect();
            if index(&cut) != Some(lat.meet(a, b)) || index(&lower_upper(base, &union)) != Some(lat.join(a, b)) {
                return Err(invariant(format!("ideal lattice operations disagree at ({a}, {b})")));
            }
        }
    }

    let nabla: Vec<Elem> = ideals
        .iter()
        .map(|n| {
            let images: ElemSet = n.0.iter().flat_map(|&x| base.principal_ideal(alg.nabla(x))).collect();
            index(&lower_upper(base, &images)).ok_or_else(|| invariant("lifted ∇ is not a normal ideal"))
        })
        .collect::<Result<_, _>>()?;
    let mut arrow = Vec::with_capacity(k * k);
    for m in &ideals {
        for n in &ideals {
            let set: ElemSet =
                alg.elements().filter(|&x| m.0.iter().all(|&y| n.contains(alg.meet(alg.nabla(x), y)))).collect();
            arrow.push(index(&set).ok_or_else(|| invariant("lifted → is not a normal ideal"))?);
        }
    }
    let completed = Arc::new(NablaAlgebra::build(lat, nabla, BinaryTable::from_flat(k, arrow))?);

    let map: Vec<Elem> = alg
        .elements()
        .map(|x| index(&base.principal_ideal(x)).ok_or_else(|| invariant("(x] is missing")))
        .collect::<Result<_, _>>()?;
    let embedding =
        AlgebraMorphism::validated(alg.clone(), completed.clone(), map, alg.heyting_table().is_some())?;
    if !embedding.is_injective() || !embedding.is_surjective() {
        return Err(invariant("canonical embedding of a finite algebra is not bijective"));
    }
    let before = classify(alg).flags.intersection(inherited_flags());
    let after = classify(&completed).flags;
    if !before.is_subset(after) {
        return Err(invariant(format!("completion has {after}, source has {before}")));
    }
    Ok(CompletedAlgebra { ideals, algebra: completed, embedding })
}

pub const UNIQUENESS_BOUND: usize = 6;
pub const UNIQUE_CLAUSE: &str = "exactly one structure makes i a morphism";
pub const LIFTED_CLAUSE: &str = "the only structure is the lifted one";

/// Searches every ∇' table on the ideal lattice; for each, the adjunction
/// leaves at most one candidate per → entry. Counts the pairs for which `i`
/// preserves ∇ and →.
pub fn check_completion_uniqueness(alg: &Arc<NablaAlgebra>) -> Result<Report, AlgebraError> {
    if alg.len() > UNIQUENESS_BOUND {
        return Err(AlgebraError::Shape(format!(
            "uniqueness search is limited to {UNIQUENESS_BOUND} elements, got {}",
            alg.len()
        )));
    }
    let done = dm_complete(alg)?;
    let (c, i) = (&done.algebra, done.embedding_table());
    let lat = c.lat();
    let k = c.len();
    let mut hits: Vec<(Vec<Elem>, Vec<Elem>)> = Vec::new();
    let mut table = vec![0; k];
    'tables: loop {
        if alg.elements().all(|x| table[i[x]] == i[alg.nabla(x)]) {
            let mut arrow = Vec::with_capacity(k * k);
            let mut ok = true;
            'entries: for m in 0..k {
                for n in 0..k {
                    let below: Vec<Elem> =
                        lat.elements().filter(|&z| lat.leq(lat.meet(table[z], m), n)).collect();
                    let candidate = lat.maximum(below.iter().copied());
                    match candidate {
                        Some(top) if below.len() == lat.elements().filter(|&z| lat.leq(z, top)).count() => {
                            arrow.push(top)
                        }
                        _ => {
                            ok = false;
                            break 'entries;
                        }
                    }
                }
            }
            if ok && alg.elements().all(|x| alg.elements().all(|y| arrow[i[x] * k + i[y]] == i[alg.arrow(x, y)])) {
                hits.push((table.clone(), arrow));
            }
        }
        for slot in table.iter_mut() {
            *slot += 1;
            if *slot < k {
                continue 'tables;
            }
            *slot = 0;
        }
        break;
    }
    let mut r = Report::new();
    r.require(hits.len() == 1, UNIQUE_CLAUSE, || vec![hits.len()]);
    let lifted = (c.nabla_table().to_vec(), c.arrow_table().entries().to_vec());
    r.require(hits.iter().all(|h| *h == lifted), LIFTED_CLAUSE, Vec::new);
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery::{gen_heyting, gen_trivial, gen_xn};
    use crate::lattice::{boolean, chain, pentagon};

    fn down_sets_scan(lat: &FiniteLattice) -> Vec<ElemSet> {
        let n = lat.len();
        let mut out: Vec<ElemSet> = (0u32..1 << n)
            .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect::<ElemSet>())
            .filter(|s| NormalIdeal::from_set(lat, s.clone()).is_some())
            .collect();
        out.sort_by(canonical_set_order);
        out
    }

    #[test]
    fn ideal_examples() {
        let sets = |l: &FiniteLattice| normal_ideals(l).into_iter().map(|i| i.0).collect::<Vec<_>>();
        let c3 = sets(&chain(3));
        assert_eq!(c3, vec![[0].into(), [0, 1].into(), [0, 1, 2].into()]);
        assert_eq!(sets(&chain(1)).len(), 1);
        assert_eq!(sets(&boolean(2)).len(), 4);
        for l in [chain(3), boolean(2), pentagon(), boolean(3)] {
            assert_eq!(sets(&l), down_sets_scan(&l));
        }
    }

    #[test]
    fn completion_examples() {
        let x1 = Arc::new(gen_xn(1).unwrap());
        let c = dm_complete(&x1).unwrap();
        assert_eq!(c.embedding_table(), &[0, 1, 2]);
        assert_eq!(c.algebra.nabla_table(), x1.nabla_table());

        let t = Arc::new(gen_trivial(&chain(2)));
        let c = dm_complete(&t).unwrap();
        assert_eq!(c.algebra.nabla_table(), &[0, 0]);

        let b4 = Arc::new(gen_heyting(&boolean(2)).unwrap());
        let c = dm_complete(&b4).unwrap();
        assert_eq!(c.algebra.len(), 4);
        let i = c.embedding_table();
        assert!(b4.elements().all(|x| c.algebra.nabla(i[x]) == i[x]));
    }

    #[test]
    fn uniqueness_on_small_fixtures() {
        for alg in [gen_xn(1).unwrap(), gen_heyting(&boolean(2)).unwrap(), gen_trivial(&chain(3))] {
            let r = check_completion_uniqueness(&Arc::new(alg)).unwrap();
            assert!(r.ok, "{r:?}");
        }
    }
}
