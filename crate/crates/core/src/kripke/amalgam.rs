use std::sync::Arc;

use super::{
    canonical_frame_embedding, frame_profile, inverse_image_morphism, prime_inverse_morphism, upset_algebra,
    FrameMorphism, KripkeError, KripkeFrame,
};
use crate::algebra::{classify, AlgebraError, AlgebraMorphism, FlagSet, NablaAlgebra, Property};
use crate::lattice::Elem;

/// Pullback of `f: K1 → K0` and `g: K2 → K0` with its projections.
#[derive(Debug, Clone)]
pub struct FrameAmalgam {
    pub frame: Arc<KripkeFrame>,
    pub worlds: Vec<(Elem, Elem)>,
    pub p: FrameMorphism,
    pub q: FrameMorphism,
}

/// Flags that amalgamation is known to transport.
fn amalgamable() -> FlagSet {
    [Property::R, Property::L, Property::Fa].into_iter().collect()
}

fn check_class(c: FlagSet) -> Result<(), KripkeError> {
    if !c.is_subset(amalgamable()) {
        return Err(KripkeError::FlagMismatch(format!("class {c} must be a subset of {{R,L,Fa}}")));
    }
    Ok(())
}

pub fn amalgamate_frames(f: &FrameMorphism, g: &FrameMorphism, class: FlagSet) -> Result<FrameAmalgam, KripkeError> {
    check_class(class)?;
    if *f.target() != *g.target() {
        return Err(KripkeError::Shape("f and g must share their target frame".into()));
    }
    let (k1, k2, k0) = (f.source(), g.source(), f.target());
    for (name, k) in [("K0", k0), ("K1", k1), ("K2", k2)] {
        let profile = frame_profile(k);
        if !profile.has(Property::N) {
            return Err(KripkeError::NotNormal(name.into()));
        }
        if !class.is_subset(profile.flags) {
            return Err(KripkeError::FlagMismatch(format!("{name} has {} but the class is {class}", profile.flags)));
        }
    }
    for (name, m) in [("f", f), ("g", g)] {
        let r = m.check();
        if !r.ok {
            return Err(KripkeError::NotKripkeMorphism(r));
        }
        if !m.is_surjective() {
            return Err(KripkeError::NotSurjective(name.into()));
        }
    }

    let worlds: Vec<(Elem, Elem)> = k1
        .worlds()
        .flat_map(|y| k2.worlds().map(move |z| (y, z)))
        .filter(|&(y, z)| f.apply(y) == g.apply(z))
        .collect();
    let n = worlds.len();
    let leq = |i: usize, j: usize| k1.leq(worlds[i].0, worlds[j].0) && k2.leq(worlds[i].1, worlds[j].1);
    let rel = |i: usize, j: usize| k1.r(worlds[i].0, worlds[j].0) && k2.r(worlds[i].1, worlds[j].1);
    let frame = Arc::new(KripkeFrame::from_fn(n, leq, rel)?);

    let (pi1, pi2) = (k1.pi().expect("normal"), k2.pi().expect("normal"));
    let expected: Option<Vec<Elem>> =
        worlds.iter().map(|&(y, z)| worlds.iter().position(|&w| w == (pi1[y], pi2[z]))).collect();
    if expected.as_deref() != frame.pi() {
        return Err(KripkeError::Invariant("pullback π is not the product of the witnesses".into()));
    }

    let heyting = f.is_heyting() && g.is_heyting();
    let p = FrameMorphism::new(frame.clone(), k1.clone(), worlds.iter().map(|w| w.0).collect(), heyting)?;
    let q = FrameMorphism::new(frame.clone(), k2.clone(), worlds.iter().map(|w| w.1).collect(), heyting)?;
    for (name, m) in [("p", &p), ("q", &q)] {
        let r = m.check();
        if !r.ok || !m.is_surjective() {
            return Err(KripkeError::Invariant(format!("projection {name} is not a surjective morphism: {r:?}")));
        }
    }
    let held = frame_profile(&frame).flags;
    if !class.with(Property::N).is_subset(held) {
        return Err(KripkeError::Invariant(format!("pullback has {held}, expected {class} and N")));
    }
    Ok(FrameAmalgam { frame, worlds, p, q })
}

/// The completed square `g1 ∘ f1 = g2 ∘ f2` and the frames it was built from.
#[derive(Debug, Clone)]
pub struct AlgebraAmalgam {
    pub b: Arc<NablaAlgebra>,
    pub g1: AlgebraMorphism,
    pub g2: AlgebraMorphism,
    pub k0: Arc<KripkeFrame>,
    pub k1: Arc<KripkeFrame>,
    pub k2: Arc<KripkeFrame>,
    pub pullback: FrameAmalgam,
}

fn require_embedding(name: &str, f: &AlgebraMorphism) -> Result<(), KripkeError> {
    let r = f.check();
    if !r.ok {
        return Err(AlgebraError::NotMorphism(r).into());
    }
    if !f.is_injective() {
        return Err(KripkeError::NotEmbedding(format!("{name} is not injective")));
    }
    Ok(())
}

/// Amalgamates `f1: A0 ↪ A1` and `f2: A0 ↪ A2` through the prime filter
/// frames: pull back `𝔓(f1)` and `𝔓(f2)`, take upsets, and compose with the
/// canonical embeddings.
pub fn amalgamate_algebras(
    f1: &AlgebraMorphism,
    f2: &AlgebraMorphism,
    class: FlagSet,
) -> Result<AlgebraAmalgam, KripkeError> {
    check_class(class)?;
    if *f1.source() != *f2.source() {
        return Err(KripkeError::Shape("f1 and f2 must share their source algebra".into()));
    }
    let needed = class.with(Property::N).with(Property::D);
    for (name, a) in [("A0", f1.source()), ("A1", f1.target()), ("A2", f2.target())] {
        let flags = classify(a).flags;
        if !needed.is_subset(flags) {
            return Err(KripkeError::FlagMismatch(format!("{name} has {flags}, needs {needed}")));
        }
    }
    require_embedding("f1", f1)?;
    require_embedding("f2", f2)?;

    let pf1 = prime_inverse_morphism(f1)?;
    let pf2 = prime_inverse_morphism(f2)?;
    let pullback = amalgamate_frames(&pf1, &pf2, class)?;
    let b = upset_algebra(&pullback.frame)?.algebra;
    let up = inverse_image_morphism(&pullback.p)?;
    let uq = inverse_image_morphism(&pullback.q)?;
    let g1 = canonical_frame_embedding(f1.target())?.then(&up)?;
    let g2 = canonical_frame_embedding(f2.target())?.then(&uq)?;

    require_embedding("g1", &g1).map_err(|e| KripkeError::Invariant(e.to_string()))?;
    require_embedding("g2", &g2).map_err(|e| KripkeError::Invariant(e.to_string()))?;
    let left: Vec<Elem> = f1.map().iter().map(|&a| g1.apply(a)).collect();
    let right: Vec<Elem> = f2.map().iter().map(|&a| g2.apply(a)).collect();
    if left != right {
        return Err(KripkeError::Invariant("amalgamation square does not commute".into()));
    }
    let flags = classify(&b).flags;
    if !needed.is_subset(flags) {
        return Err(KripkeError::Invariant(format!("amalgam has {flags}, expected {needed}")));
    }
    Ok(AlgebraAmalgam {
        b,
        g1,
        g2,
        k0: pf1.target().clone(),
        k1: pf1.source().clone(),
        k2: pf2.source().clone(),
        pullback,
    })
}
