use std::sync::Arc;

use super::{KripkeError, KripkeFrame};
use crate::lattice::Elem;
use crate::report::Report;

/// A map between frames. Construction checks shape only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrameMorphism {
    source: Arc<KripkeFrame>,
    target: Arc<KripkeFrame>,
    map: Vec<Elem>,
    heyting: bool,
}

pub const ORDER_PRESERVING: &str = "order-preserving";
pub const FORTH: &str = "(k,l) ∈ R ⇒ (fk,fl) ∈ R'";
pub const BACK_SUCCESSOR: &str = "(fk,l') ∈ R' ⇒ ∃l: (k,l) ∈ R, fl = l'";
pub const BACK_PREDECESSOR: &str = "(l',fk) ∈ R' ⇒ ∃l: (l,k) ∈ R, fl ≥ l'";
pub const HEYTING_BACK: &str = "fk ≤ l' ⇒ ∃l ≥ k: fl = l'";
pub const NORMAL_CHARACTERIZATION: &str = "clauses agree with f∘π = π'∘f and π'⁻¹(↑fk) = f[π⁻¹(↑k)]";

impl FrameMorphism {
    pub fn new(
        source: Arc<KripkeFrame>,
        target: Arc<KripkeFrame>,
        map: Vec<Elem>,
        heyting: bool,
    ) -> Result<Self, KripkeError> {
        if map.len() != source.len() {
            return Err(KripkeError::Shape(format!(
                "map has {} entries, source has {} worlds",
                map.len(),
                source.len()
            )));
        }
        if let Some(i) = map.iter().position(|&v| v >= target.len()) {
            return Err(KripkeError::Shape(format!("map[{i}] = {} is out of range", map[i])));
        }
        Ok(FrameMorphism { source, target, map, heyting })
    }

    pub fn validated(
        source: Arc<KripkeFrame>,
        target: Arc<KripkeFrame>,
        map: Vec<Elem>,
        heyting: bool,
    ) -> Result<Self, KripkeError> {
        let f = Self::new(source, target, map, heyting)?;
        let r = f.check();
        if r.ok {
            Ok(f)
        } else {
            Err(KripkeError::NotKripkeMorphism(r))
        }
    }

    pub fn identity(k: Arc<KripkeFrame>) -> Self {
        let map = k.worlds().collect();
        FrameMorphism { source: k.clone(), target: k, map, heyting: true }
    }

    pub fn source(&self) -> &Arc<KripkeFrame> {
        &self.source
    }

    pub fn target(&self) -> &Arc<KripkeFrame> {
        &self.target
    }

    pub fn map(&self) -> &[Elem] {
        &self.map
    }

    pub fn apply(&self, w: Elem) -> Elem {
        self.map[w]
    }

    pub fn is_heyting(&self) -> bool {
        self.heyting
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.len()];
        self.map.iter().for_each(|&v| hit[v] = true);
        hit.into_iter().all(|h| h)
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &FrameMorphism) -> Result<FrameMorphism, KripkeError> {
        if *self.target != *next.source {
            return Err(KripkeError::Shape("composed morphisms do not share a frame".into()));
        }
        Ok(FrameMorphism {
            source: self.source.clone(),
            target: next.target.clone(),
            map: self.map.iter().map(|&w| next.map[w]).collect(),
            heyting: self.heyting && next.heyting,
        })
    }

    /// Evaluates each clause by direct quantification. When both frames are
    /// normal, also evaluates the π-form and records a violation if the two
    /// verdicts differ.
    pub fn check(&self) -> Report {
        let (k, k2, f) = (&*self.source, &*self.target, &self.map);
        let mut r = Report::new();
        for a in k.worlds() {
            for b in k.worlds() {
                r.require(!k.leq(a, b) || k2.leq(f[a], f[b]), ORDER_PRESERVING, || vec![a, b]);
                r.require(!k.r(a, b) || k2.r(f[a], f[b]), FORTH, || vec![a, b]);
            }
        }
        for kk in k.worlds() {
            for l2 in k2.worlds() {
                if k2.r(f[kk], l2) {
                    let ok = k.worlds().any(|l| k.r(kk, l) && f[l] == l2);
                    r.require(ok, BACK_SUCCESSOR, || vec![kk, l2]);
                }
                if k2.r(l2, f[kk]) {
                    let ok = k.worlds().any(|l| k.r(l, kk) && k2.leq(l2, f[l]));
                    r.require(ok, BACK_PREDECESSOR, || vec![kk, l2]);
                }
                if self.heyting && k2.leq(f[kk], l2) {
                    let ok = k.worlds().any(|l| k.leq(kk, l) && f[l] == l2);
                    r.require(ok, HEYTING_BACK, || vec![kk, l2]);
                }
            }
        }
        if let (Some(pi), Some(pi2)) = (k.pi(), k2.pi()) {
            if !r.has(ORDER_PRESERVING) {
                let clauses = !(r.has(FORTH) || r.has(BACK_SUCCESSOR) || r.has(BACK_PREDECESSOR));
                let commutes = k.worlds().all(|w| f[pi[w]] == pi2[f[w]]);
                let fibres = k.worlds().all(|kk| {
                    k2.worlds().all(|l2| {
                        let lhs = k2.leq(f[kk], pi2[l2]);
                        let rhs = k.worlds().any(|l| k.leq(kk, pi[l]) && f[l] == l2);
                        lhs == rhs
                    })
                });
                r.require(clauses == (commutes && fibres), NORMAL_CHARACTERIZATION, || {
                    vec![clauses as Elem, commutes as Elem, fibres as Elem]
                });
                r.set_flag("pi-commutes", commutes);
            }
        }
        r.set_flag("surjective", self.is_surjective());
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const T: bool = true;
    const F: bool = false;

    fn point() -> Arc<KripkeFrame> {
        Arc::new(KripkeFrame::new(&[vec![T]], &[vec![T]]).unwrap())
    }

    fn chain2(r: [[bool; 2]; 2]) -> Arc<KripkeFrame> {
        Arc::new(KripkeFrame::new(&[vec![T, T], vec![F, T]], &[r[0].to_vec(), r[1].to_vec()]).unwrap())
    }

    #[test]
    fn chain_onto_point_is_heyting_and_surjective() {
        let f = FrameMorphism::new(chain2([[T, T], [F, T]]), point(), vec![0, 0], true).unwrap();
        let r = f.check();
        assert!(r.ok, "{r:?}");
        assert_eq!(r.flag("surjective"), Some(true));
    }

    #[test]
    fn identity_is_valid() {
        for k in [point(), chain2([[T, T], [F, T]]), chain2([[T, T], [F, F]])] {
            assert!(FrameMorphism::identity(k).check().ok);
        }
    }

    #[test]
    fn collapsing_x1_frame_fails_back_successor() {
        // World 1 has no R-successor, but its image does.
        let f = FrameMorphism::new(chain2([[T, T], [F, F]]), point(), vec![0, 0], false).unwrap();
        let r = f.check();
        assert!(!r.ok);
        assert_eq!(r.witness(BACK_SUCCESSOR), Some(&[1, 0][..]));
        assert!(!r.has(NORMAL_CHARACTERIZATION));
    }

    #[test]
    fn shape_and_composition() {
        assert!(FrameMorphism::new(point(), point(), vec![1], false).is_err());
        let c = chain2([[T, T], [F, T]]);
        let f = FrameMorphism::new(c.clone(), point(), vec![0, 0], true).unwrap();
        let id = FrameMorphism::identity(c);
        assert_eq!(id.then(&f).unwrap().map(), &[0, 0]);
        assert!(f.then(&id).is_err());
    }
}
