use std::sync::Arc;

use super::{frame_flags, frame_profile, FrameMorphism, KripkeError, KripkeFrame};
use crate::algebra::{classify, AlgebraError, AlgebraMorphism, NablaAlgebra, Property};
use crate::lattice::{upset_lattice, BinaryTable, Elem, ElemSet, PrimeFilter, UpSetFamily};

/// 𝔘(K): the upsets of a frame with its ∇ and →, plus the upset indexing.
#[derive(Debug, Clone)]
pub struct UpsetAlgebra {
    pub family: UpSetFamily,
    pub algebra: Arc<NablaAlgebra>,
}

/// 𝔓(A): prime filters ordered by inclusion, with `(P,Q) ∈ R` iff `∇[P] ⊆ Q`.
#[derive(Debug, Clone)]
pub struct PrimeFrame {
    pub filters: Vec<PrimeFilter>,
    pub frame: Arc<KripkeFrame>,
}

impl PrimeFrame {
    pub fn index_of(&self, members: &ElemSet) -> Option<Elem> {
        self.filters.iter().position(|p| p.members() == members)
    }
}

fn invariant(msg: String) -> KripkeError {
    KripkeError::Invariant(msg)
}

pub fn upset_algebra(k: &KripkeFrame) -> Result<UpsetAlgebra, KripkeError> {
    let family = upset_lattice(k.len(), k.order_flat())?;
    let bits = |pred: &dyn Fn(Elem) -> bool| k.worlds().filter(|&w| pred(w)).fold(0u64, |m, w| m | 1 << w);
    let preds: Vec<u64> = k.worlds().map(|x| bits(&|y| k.r(y, x))).collect();
    let succs: Vec<u64> = k.worlds().map(|x| bits(&|y| k.r(x, y))).collect();
    let lookup = |mask: u64| {
        family.index_of_mask(mask).ok_or_else(|| invariant(format!("{mask:#b} is not an upset")))
    };

    let nabla = (0..family.len())
        .map(|i| lookup(bits(&|x| preds[x] & family.mask(i) != 0)))
        .collect::<Result<Vec<_>, _>>()?;
    let n = family.len();
    let mut arrow = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let bad = family.mask(i) & !family.mask(j);
            arrow.push(lookup(bits(&|x| succs[x] & bad == 0))?);
        }
    }
    let algebra = NablaAlgebra::build(family.lattice().clone(), nabla, BinaryTable::from_flat(n, arrow))?;

    let frame_flags_held = frame_profile(k).flags;
    let alg_flags = classify(&algebra).flags;
    if !alg_flags.contains(Property::H) || !frame_flags_held.is_subset(alg_flags) {
        return Err(invariant(format!("frame flags {frame_flags_held} not transported to {alg_flags}")));
    }
    Ok(UpsetAlgebra { family, algebra: Arc::new(algebra) })
}

pub fn prime_frame(alg: &NablaAlgebra) -> Result<PrimeFrame, KripkeError> {
    let lat = alg.lat();
    if !lat.is_distributive() {
        return Err(KripkeError::NotDistributive);
    }
    let filters = lat.prime_filters();
    let n = filters.len();
    let mut leq = vec![false; n * n];
    let mut r = vec![false; n * n];
    for (i, p) in filters.iter().enumerate() {
        for (j, q) in filters.iter().enumerate() {
            leq[i * n + j] = p.members().is_subset(q.members());
            let by_image = p.members().iter().all(|&x| q.contains(alg.nabla(x)));
            let by_definition = alg.elements().all(|a| {
                alg.elements().all(|b| !(p.contains(alg.arrow(a, b)) && q.contains(a)) || q.contains(b))
            });
            if by_image != by_definition {
                return Err(invariant(format!("relation characterizations disagree at ({i},{j})")));
            }
            r[i * n + j] = by_image;
        }
    }
    let frame = KripkeFrame::from_flat(n, leq, r)?;

    let wanted = classify(alg).flags.intersection(frame_flags());
    let got = frame_profile(&frame).flags;
    if !wanted.is_subset(got) {
        return Err(invariant(format!("algebra flags {wanted} not transported to frame flags {got}")));
    }
    Ok(PrimeFrame { filters, frame: Arc::new(frame) })
}

/// `i_A(a) = {P : a ∈ P}`, an isomorphism `A → 𝔘𝔓(A)` for finite distributive A.
pub fn canonical_frame_embedding(alg: &Arc<NablaAlgebra>) -> Result<AlgebraMorphism, KripkeError> {
    let pf = prime_frame(alg)?;
    let ua = upset_algebra(&pf.frame)?;
    let map = alg
        .elements()
        .map(|a| {
            let mask = pf.filters.iter().enumerate().filter(|(_, p)| p.contains(a)).fold(0u64, |m, (i, _)| m | 1 << i);
            ua.family.index_of_mask(mask).ok_or_else(|| invariant(format!("i({a}) is not an upset")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let heyting = alg.heyting_table().is_some();
    let m = AlgebraMorphism::new(alg.clone(), ua.algebra, map, heyting)?;
    let report = m.check();
    if !report.ok || !m.is_injective() || !m.is_surjective() {
        return Err(invariant(format!("canonical embedding is not an isomorphism: {report:?}")));
    }
    Ok(m)
}

/// 𝔘(f) = f⁻¹ : 𝔘(K') → 𝔘(K).
pub fn inverse_image_morphism(f: &FrameMorphism) -> Result<AlgebraMorphism, KripkeError> {
    let report = f.check();
    if !report.ok {
        return Err(KripkeError::NotKripkeMorphism(report));
    }
    let src = upset_algebra(f.source())?;
    let tgt = upset_algebra(f.target())?;
    let map = (0..tgt.family.len())
        .map(|j| {
            let v = tgt.family.mask(j);
            let pre = f.source().worlds().filter(|&w| v >> f.apply(w) & 1 == 1).fold(0u64, |m, w| m | 1 << w);
            src.family.index_of_mask(pre).ok_or_else(|| invariant(format!("preimage of upset {j} is not an upset")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let m = AlgebraMorphism::new(tgt.algebra, src.algebra, map, f.is_heyting())?;
    let r = m.check();
    if !r.ok {
        return Err(invariant(format!("preimage map is not a ∇-algebra morphism: {r:?}")));
    }
    if f.is_surjective() && !m.is_injective() {
        return Err(invariant("preimage along a surjection is not injective".into()));
    }
    Ok(m)
}

/// 𝔓(f) = f⁻¹ : 𝔓(B) → 𝔓(A).
pub fn prime_inverse_morphism(f: &AlgebraMorphism) -> Result<FrameMorphism, KripkeError> {
    let report = f.check();
    if !report.ok {
        return Err(AlgebraError::NotMorphism(report).into());
    }
    let pa = prime_frame(f.source())?;
    let pb = prime_frame(f.target())?;
    let map = pb
        .filters
        .iter()
        .enumerate()
        .map(|(j, q)| {
            let pre: ElemSet = f.source().elements().filter(|&a| q.contains(f.apply(a))).collect();
            pa.index_of(&pre).ok_or_else(|| invariant(format!("preimage of prime filter {j} is not prime")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let m = FrameMorphism::new(pb.frame, pa.frame, map, f.preserves_heyting())?;
    let r = m.check();
    if !r.ok {
        return Err(invariant(format!("preimage map is not a Kripke morphism: {r:?}")));
    }
    if f.is_injective() && !m.is_surjective() {
        return Err(invariant("preimage along an embedding is not surjective".into()));
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::find_embeddings;
    use crate::gallery::{gen_heyting, gen_xn};
    use crate::lattice::{boolean, chain, find_isomorphism};

    const T: bool = true;
    const F: bool = false;

    fn point() -> KripkeFrame {
        KripkeFrame::new(&[vec![T]], &[vec![T]]).unwrap()
    }

    fn chain2() -> KripkeFrame {
        KripkeFrame::new(&[vec![T, T], vec![F, T]], &[vec![T, T], vec![F, T]]).unwrap()
    }

    #[test]
    fn upset_algebras_of_small_frames() {
        let p = upset_algebra(&point()).unwrap();
        assert_eq!(*p.algebra, gen_heyting(&chain(2)).unwrap());
        let c = upset_algebra(&chain2()).unwrap();
        assert_eq!(*c.algebra, gen_heyting(&chain(3)).unwrap());
    }

    #[test]
    fn upset_heyting_matches_frame_formula() {
        let ua = upset_algebra(&chain2()).unwrap();
        let k = chain2();
        let h = ua.algebra.heyting_table().unwrap();
        for i in 0..ua.family.len() {
            for j in 0..ua.family.len() {
                let (u, v) = (ua.family.mask(i), ua.family.mask(j));
                let formula = k
                    .worlds()
                    .filter(|&x| k.worlds().all(|y| !(k.leq(x, y) && u >> y & 1 == 1) || v >> y & 1 == 1))
                    .fold(0u64, |m, x| m | 1 << x);
                assert_eq!(ua.family.mask(h.get(i, j)), formula);
            }
        }
    }

    #[test]
    fn prime_frame_of_x1() {
        let pf = prime_frame(&gen_xn(1).unwrap()).unwrap();
        let members: Vec<Vec<Elem>> = pf.filters.iter().map(|p| p.members().iter().copied().collect()).collect();
        assert_eq!(members, vec![vec![2], vec![1, 2]]);
        assert_eq!(pf.frame.relation_matrix(), vec![vec![T, T], vec![F, F]]);
        assert_eq!(pf.frame.pi(), Some(&[0, 0][..]));
    }

    #[test]
    fn prime_frames_of_heyting_chains() {
        let b2 = prime_frame(&gen_heyting(&chain(2)).unwrap()).unwrap();
        assert_eq!(*b2.frame, point());
        let h3 = prime_frame(&gen_heyting(&chain(3)).unwrap()).unwrap();
        assert_eq!(*h3.frame, chain2());
        assert!(matches!(prime_frame(&crate::gallery::gen_trivial(&crate::lattice::pentagon())), Err(KripkeError::NotDistributive)));
    }

    #[test]
    fn canonical_embedding_of_x1() {
        let x1 = Arc::new(gen_xn(1).unwrap());
        let i = canonical_frame_embedding(&x1).unwrap();
        assert_eq!(i.map(), &[0, 1, 2]);
        let b4 = Arc::new(gen_heyting(&boolean(2)).unwrap());
        let i = canonical_frame_embedding(&b4).unwrap();
        assert!(find_isomorphism(i.target().lat(), b4.lat()).is_some());
    }

    #[test]
    fn morphism_functors_on_the_two_into_three_embedding() {
        let b2 = Arc::new(gen_heyting(&chain(2)).unwrap());
        let h3 = Arc::new(gen_heyting(&chain(3)).unwrap());
        let f = find_embeddings(&b2, &h3, true).pop().unwrap();
        let pf = prime_inverse_morphism(&f).unwrap();
        assert_eq!(pf.map(), &[0, 0]);
        assert!(pf.is_surjective());
        assert!(pf.is_heyting());

        let uf = inverse_image_morphism(&pf).unwrap();
        assert_eq!(uf.map(), &[0, 2]);
        assert!(uf.is_injective());
    }

    #[test]
    fn identities_are_preserved() {
        let x1 = Arc::new(gen_xn(1).unwrap());
        let id = AlgebraMorphism::identity(x1);
        let p = prime_inverse_morphism(&id).unwrap();
        assert_eq!(p.map(), &[0, 1]);
        let u = inverse_image_morphism(&FrameMorphism::identity(Arc::new(chain2()))).unwrap();
        assert_eq!(u.map(), &[0, 1, 2]);
    }
}
