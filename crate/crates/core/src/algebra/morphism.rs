use std::sync::Arc;

use super::{AlgebraError, NablaAlgebra};
use crate::lattice::Elem;
use crate::report::Report;

/// An index map between two algebras. Construction checks shape only;
/// [`AlgebraMorphism::check`] evaluates the preservation clauses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraMorphism {
    source: Arc<NablaAlgebra>,
    target: Arc<NablaAlgebra>,
    map: Vec<Elem>,
    preserves_heyting: bool,
}

impl AlgebraMorphism {
    pub fn new(
        source: Arc<NablaAlgebra>,
        target: Arc<NablaAlgebra>,
        map: Vec<Elem>,
        preserves_heyting: bool,
    ) -> Result<Self, AlgebraError> {
        if map.len() != source.len() {
            return Err(AlgebraError::Shape(format!(
                "map has {} entries, source has {} elements",
                map.len(),
                source.len()
            )));
        }
        if let Some(i) = map.iter().position(|&v| v >= target.len()) {
            return Err(AlgebraError::Shape(format!("map[{i}] = {} is out of range", map[i])));
        }
        Ok(AlgebraMorphism { source, target, map, preserves_heyting })
    }

    /// Builds and rejects unless every clause holds.
    pub fn validated(
        source: Arc<NablaAlgebra>,
        target: Arc<NablaAlgebra>,
        map: Vec<Elem>,
        preserves_heyting: bool,
    ) -> Result<Self, AlgebraError> {
        let m = Self::new(source, target, map, preserves_heyting)?;
        let r = m.check();
        if r.ok {
            Ok(m)
        } else {
            Err(AlgebraError::NotMorphism(r))
        }
    }

    pub fn identity(alg: Arc<NablaAlgebra>) -> Self {
        let map = alg.elements().collect();
        let heyting = alg.heyting_table().is_some();
        AlgebraMorphism { source: alg.clone(), target: alg, map, preserves_heyting: heyting }
    }

    pub fn source(&self) -> &Arc<NablaAlgebra> {
        &self.source
    }

    pub fn target(&self) -> &Arc<NablaAlgebra> {
        &self.target
    }

    pub fn map(&self) -> &[Elem] {
        &self.map
    }

    pub fn apply(&self, a: Elem) -> Elem {
        self.map[a]
    }

    pub fn preserves_heyting(&self) -> bool {
        self.preserves_heyting
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target.len()];
        self.map.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.target.len()];
        self.map.iter().for_each(|&v| seen[v] = true);
        seen.into_iter().all(|s| s)
    }

    /// `next ∘ self`. The middle algebras must be equal.
    pub fn then(&self, next: &AlgebraMorphism) -> Result<AlgebraMorphism, AlgebraError> {
        if *self.target != *next.source {
            return Err(AlgebraError::Shape("composed morphisms do not share an algebra".into()));
        }
        Ok(AlgebraMorphism {
            source: self.source.clone(),
            target: next.target.clone(),
            map: self.map.iter().map(|&a| next.map[a]).collect(),
            preserves_heyting: self.preserves_heyting && next.preserves_heyting,
        })
    }

    pub fn check(&self) -> Report {
        let (s, t, f) = (&*self.source, &*self.target, &self.map);
        let mut r = Report::new();
        r.require(f[s.bot()] == t.bot(), "preserves 0", Vec::new);
        r.require(f[s.top()] == t.top(), "preserves 1", Vec::new);
        let heyting = if self.preserves_heyting {
            match (s.heyting_table(), t.heyting_table()) {
                (Some(hs), Some(ht)) => Some((hs, ht)),
                _ => {
                    r.fail("⊃ defined on both sides", vec![]);
                    None
                }
            }
        } else {
            None
        };
        for a in s.elements() {
            r.require(f[s.nabla(a)] == t.nabla(f[a]), "preserves ∇", || vec![a]);
            for b in s.elements() {
                r.require(f[s.meet(a, b)] == t.meet(f[a], f[b]), "preserves ∧", || vec![a, b]);
                r.require(f[s.join(a, b)] == t.join(f[a], f[b]), "preserves ∨", || vec![a, b]);
                r.require(f[s.arrow(a, b)] == t.arrow(f[a], f[b]), "preserves →", || vec![a, b]);
                if let Some((hs, ht)) = heyting {
                    r.require(f[hs.get(a, b)] == ht.get(f[a], f[b]), "preserves ⊃", || vec![a, b]);
                }
            }
        }
        r.set_flag("injective", self.is_injective());
        r
    }
}

/// Every injective morphism `a → b`, in lexicographic order of maps.
pub fn find_embeddings(a: &Arc<NablaAlgebra>, b: &Arc<NablaAlgebra>, heyting: bool) -> Vec<AlgebraMorphism> {
    let mut out = Vec::new();
    if a.len() > b.len() || (heyting && (a.heyting_table().is_none() || b.heyting_table().is_none())) {
        return out;
    }
    let mut map = vec![usize::MAX; a.len()];
    let mut used = vec![false; b.len()];
    extend(a, b, 0, &mut map, &mut used, &mut |m| {
        let f = AlgebraMorphism::new(a.clone(), b.clone(), m.to_vec(), heyting).expect("shape is right");
        if f.check().ok {
            out.push(f);
        }
    });
    out
}

fn extend(
    a: &NablaAlgebra,
    b: &NablaAlgebra,
    next: Elem,
    map: &mut Vec<Elem>,
    used: &mut Vec<bool>,
    emit: &mut dyn FnMut(&[Elem]),
) {
    if next == a.len() {
        emit(map);
        return;
    }
    for img in b.elements() {
        if used[img] {
            continue;
        }
        let forced = (next == a.bot() && img != b.bot()) || (next == a.top() && img != b.top());
        let clash = (0..next).any(|x| {
            let y = map[x];
            a.leq(x, next) != b.leq(y, img)
                || a.leq(next, x) != b.leq(img, y)
                || consistent_op(a.meet(x, next), b.meet(y, img), next, img, map)
                || consistent_op(a.join(x, next), b.join(y, img), next, img, map)
                || consistent_op(a.arrow(x, next), b.arrow(y, img), next, img, map)
                || consistent_op(a.arrow(next, x), b.arrow(img, y), next, img, map)
        }) || consistent_op(a.nabla(next), b.nabla(img), next, img, map);
        if forced || clash {
            continue;
        }
        map[next] = img;
        used[img] = true;
        extend(a, b, next + 1, map, used, emit);
        used[img] = false;
        map[next] = usize::MAX;
    }
}

/// True when the source value is already mapped and the image disagrees.
fn consistent_op(src: Elem, tgt: Elem, next: Elem, img: Elem, map: &[Elem]) -> bool {
    let mapped = if src == next { Some(img) } else if src < next { Some(map[src]) } else { None };
    matches!(mapped, Some(v) if v != tgt)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{chain, BinaryTable};

    fn heyting_id(n: usize) -> Arc<NablaAlgebra> {
        let l = chain(n);
        let h = l.heyting_table().unwrap();
        Arc::new(NablaAlgebra::build(l, (0..n).collect(), h).unwrap())
    }

    fn trivial(n: usize) -> Arc<NablaAlgebra> {
        Arc::new(NablaAlgebra::build(chain(n), vec![0; n], BinaryTable::constant(n, n - 1)).unwrap())
    }

    #[test]
    fn identity_is_embedding() {
        let arrow = BinaryTable::from_rows(3, &[vec![2, 2, 2], vec![1, 2, 2], vec![1, 1, 2]]).unwrap();
        let x1 = Arc::new(NablaAlgebra::build(chain(3), vec![0, 0, 2], arrow).unwrap());
        let r = AlgebraMorphism::identity(x1).check();
        assert!(r.ok);
        assert_eq!(r.flag("injective"), Some(true));
    }

    #[test]
    fn collapse_between_trivial_algebras() {
        let r = AlgebraMorphism::new(trivial(3), trivial(2), vec![0, 1, 1], false).unwrap().check();
        assert!(r.ok);
        assert_eq!(r.flag("injective"), Some(false));
    }

    #[test]
    fn boolean_into_three_chain() {
        let f = AlgebraMorphism::new(heyting_id(2), heyting_id(3), vec![0, 2], true).unwrap();
        let r = f.check();
        assert!(r.ok, "{r:?}");
        assert_eq!(r.flag("injective"), Some(true));
        let found = find_embeddings(&heyting_id(2), &heyting_id(3), true);
        assert_eq!(found.iter().map(|f| f.map().to_vec()).collect::<Vec<_>>(), vec![vec![0, 2]]);
    }

    #[test]
    fn non_morphism_has_witness() {
        let f = AlgebraMorphism::new(heyting_id(3), heyting_id(3), vec![0, 0, 2], false).unwrap();
        assert!(!f.check().ok);
        let g = AlgebraMorphism::new(heyting_id(2), heyting_id(3), vec![0, 1], false).unwrap();
        assert_eq!(g.check().witness("preserves 1"), Some(&[][..]));
        assert!(AlgebraMorphism::new(heyting_id(2), heyting_id(3), vec![0, 3], false).is_err());
    }

    #[test]
    fn composition() {
        let f = AlgebraMorphism::new(heyting_id(2), heyting_id(3), vec![0, 2], true).unwrap();
        let id = AlgebraMorphism::identity(heyting_id(3));
        assert_eq!(f.then(&id).unwrap().map(), f.map());
        assert!(id.then(&f).is_err());
    }
}
