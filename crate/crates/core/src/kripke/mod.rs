//! Kripke frames `(W, ≤, R)` with `≤ ∘ R ∘ ≤ ⊆ R`, their morphisms, the
//! functors between frames and distributive ∇-algebras, and amalgamation.

mod amalgam;
mod functors;
mod morphism;

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{AlgebraError, FlagSet, Property};
use crate::lattice::{check_partial_order, flatten_square, Elem, LatticeError, OrderViolation};
use crate::report::Report;

pub use amalgam::{amalgamate_algebras, amalgamate_frames, AlgebraAmalgam, FrameAmalgam};
pub use functors::{
    canonical_frame_embedding, inverse_image_morphism, prime_frame, prime_inverse_morphism, upset_algebra,
    PrimeFrame, UpsetAlgebra,
};
pub use morphism::FrameMorphism;

/// Flags that make sense for frames.
pub const FRAME_FLAGS: [Property; 5] = [Property::N, Property::R, Property::L, Property::Fa, Property::Fu];

pub fn frame_flags() -> FlagSet {
    FRAME_FLAGS.into_iter().collect()
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KripkeError {
    #[error("shape error: {0}")]
    Shape(String),
    #[error("order is not a partial order: {0}")]
    NotPartialOrder(OrderViolation),
    #[error("R is not compatible with ≤: k'={0} ≤ k={1}, (k,l)=({1},{2}) ∈ R, l ≤ l'={3}, but (k',l') ∉ R", witness[0], witness[1], witness[2], witness[3])]
    NotCompatible { witness: [Elem; 4] },
    #[error("{0} is not normal")]
    NotNormal(String),
    #[error("{0} is not surjective")]
    NotSurjective(String),
    #[error("flag mismatch: {0}")]
    FlagMismatch(String),
    #[error("not a Kripke morphism: {0:?}")]
    NotKripkeMorphism(Report),
    #[error("not an embedding: {0}")]
    NotEmbedding(String),
    #[error("algebra is not distributive")]
    NotDistributive,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

/// A validated frame. The normality witness π is computed at construction
/// when it exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KripkeFrame {
    n: usize,
    leq: Vec<bool>,
    r: Vec<bool>,
    pi: Result<Vec<Elem>, Vec<Elem>>,
}

impl KripkeFrame {
    pub fn new(leq: &[Vec<bool>], r: &[Vec<bool>]) -> Result<Self, KripkeError> {
        let n = leq.len();
        if r.len() != n {
            return Err(KripkeError::Shape(format!("r has {} rows, leq has {n}", r.len())));
        }
        let leq = flatten_square(leq)?;
        let r = flatten_square(r)?;
        Self::from_flat(n, leq, r)
    }

    pub fn from_fn(
        n: usize,
        leq: impl Fn(Elem, Elem) -> bool,
        r: impl Fn(Elem, Elem) -> bool,
    ) -> Result<Self, KripkeError> {
        let leq = (0..n * n).map(|i| leq(i / n, i % n)).collect();
        let r = (0..n * n).map(|i| r(i / n, i % n)).collect();
        Self::from_flat(n, leq, r)
    }

    pub fn from_flat(n: usize, leq: Vec<bool>, r: Vec<bool>) -> Result<Self, KripkeError> {
        if leq.len() != n * n || r.len() != n * n {
            return Err(KripkeError::Shape(format!("matrices must be {n}×{n}")));
        }
        check_partial_order(n, &leq).map_err(KripkeError::NotPartialOrder)?;
        let mut frame = KripkeFrame { n, leq, r, pi: Err(vec![]) };
        if let Some(witness) = frame.compatibility_failure() {
            return Err(KripkeError::NotCompatible { witness });
        }
        frame.pi = frame.normality_witness();
        Ok(frame)
    }

    fn compatibility_failure(&self) -> Option<[Elem; 4]> {
        for k in self.worlds() {
            for l in self.worlds().filter(|&l| self.r(k, l)) {
                for k2 in self.worlds().filter(|&k2| self.leq(k2, k)) {
                    if let Some(l2) = self.worlds().find(|&l2| self.leq(l, l2) && !self.r(k2, l2)) {
                        return Some([k2, k, l, l2]);
                    }
                }
            }
        }
        None
    }

    /// π(y) must be the maximum of the R-column of y. Returns the table, or
    /// a witness: `[y]` (no maximum), `[a, b]` (π not monotone on a ≤ b) or
    /// `[x, y, x]` (R and x ≤ π(y) disagree at (x, y)).
    fn normality_witness(&self) -> Result<Vec<Elem>, Vec<Elem>> {
        let mut pi = Vec::with_capacity(self.n);
        for y in self.worlds() {
            let column: Vec<Elem> = self.worlds().filter(|&x| self.r(x, y)).collect();
            match column.iter().copied().find(|&m| column.iter().all(|&x| self.leq(x, m))) {
                Some(m) => pi.push(m),
                None => return Err(vec![y]),
            }
        }
        for a in self.worlds() {
            for b in self.worlds() {
                if self.leq(a, b) && !self.leq(pi[a], pi[b]) {
                    return Err(vec![a, b]);
                }
            }
        }
        for x in self.worlds() {
            for y in self.worlds() {
                if self.r(x, y) != self.leq(x, pi[y]) {
                    return Err(vec![x, y, x]);
                }
            }
        }
        Ok(pi)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn worlds(&self) -> std::ops::Range<Elem> {
        0..self.n
    }

    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.leq[a * self.n + b]
    }

    pub fn r(&self, a: Elem, b: Elem) -> bool {
        self.r[a * self.n + b]
    }

    pub fn pi(&self) -> Option<&[Elem]> {
        self.pi.as_deref().ok()
    }

    pub fn is_normal(&self) -> bool {
        self.pi.is_ok()
    }

    pub fn order_flat(&self) -> &[bool] {
        &self.leq
    }

    pub fn order_matrix(&self) -> Vec<Vec<bool>> {
        self.leq.chunks(self.n.max(1)).take(self.n).map(<[bool]>::to_vec).collect()
    }

    pub fn relation_matrix(&self) -> Vec<Vec<bool>> {
        self.r.chunks(self.n.max(1)).take(self.n).map(<[bool]>::to_vec).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FrameProfile {
    pub flags: FlagSet,
    pub pi: Option<Vec<Elem>>,
    pub witnesses: BTreeMap<Property, Vec<Elem>>,
}

impl FrameProfile {
    pub fn has(&self, p: Property) -> bool {
        self.flags.contains(p)
    }
}

fn first_pair(k: &KripkeFrame, bad: impl Fn(Elem, Elem) -> bool) -> Option<Vec<Elem>> {
    k.worlds().flat_map(|a| k.worlds().map(move |b| (a, b))).find(|&(a, b)| bad(a, b)).map(|(a, b)| vec![a, b])
}

pub fn frame_profile(k: &KripkeFrame) -> FrameProfile {
    let ws = || k.worlds();
    let fa_fails = |x: Elem| !ws().any(|y| k.r(y, x) && ws().all(|z| !k.r(y, z) || k.leq(x, z)));
    let fu_fails = |x: Elem| !ws().any(|y| k.r(x, y) && ws().all(|z| !k.r(z, y) || k.leq(z, x)));
    let found = [
        (Property::N, k.pi.as_ref().err().cloned()),
        (Property::R, first_pair(k, |a, b| k.leq(a, b) && !k.r(a, b))),
        (Property::L, first_pair(k, |a, b| k.r(a, b) && !k.leq(a, b))),
        (Property::Fa, ws().find(|&x| fa_fails(x)).map(|x| vec![x])),
        (Property::Fu, ws().find(|&x| fu_fails(x)).map(|x| vec![x])),
    ];
    let mut flags = FlagSet::EMPTY;
    let mut witnesses = BTreeMap::new();
    for (p, w) in found {
        match w {
            None => flags.insert(p),
            Some(w) => {
                witnesses.insert(p, w);
            }
        }
    }
    let profile = FrameProfile { flags, pi: k.pi().map(<[Elem]>::to_vec), witnesses };
    let r = check_normal_conditions(k, &profile);
    assert!(r.ok, "π-characterizations disagree with the frame conditions: {r:?}");
    profile
}

/// On normal frames, R, L, Fa and Fu read off π: `w ≤ π(w)`, `π(w) ≤ w`,
/// π an order embedding, π surjective.
pub fn check_normal_conditions(k: &KripkeFrame, profile: &FrameProfile) -> Report {
    let mut r = Report::new();
    let Some(pi) = k.pi() else { return r };
    let ws = || k.worlds();
    let mut hit = vec![false; k.len()];
    pi.iter().for_each(|&v| hit[v] = true);
    let via_pi = [
        (Property::R, ws().all(|w| k.leq(w, pi[w]))),
        (Property::L, ws().all(|w| k.leq(pi[w], w))),
        (Property::Fa, ws().all(|u| ws().all(|v| !k.leq(pi[u], pi[v]) || k.leq(u, v)))),
        (Property::Fu, hit.into_iter().all(|h| h)),
    ];
    for (p, v) in via_pi {
        r.require(profile.has(p) == v, p.name(), || vec![profile.has(p) as Elem, v as Elem]);
    }
    r
}
