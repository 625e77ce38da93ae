use serde::Serialize;

use super::{AlgebraError, NablaAlgebra};
use crate::lattice::{BinaryTable, Elem, FiniteLattice};
use crate::report::{Report, Violation};

/// A lattice with a candidate implication, not yet known to come from a ∇.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrongAlgebraCandidate {
    pub lat: FiniteLattice,
    pub arrow: BinaryTable,
}

impl StrongAlgebraCandidate {
    pub fn new(lat: FiniteLattice, arrow: BinaryTable) -> Result<Self, AlgebraError> {
        let n = lat.len();
        if arrow.size() != n {
            return Err(AlgebraError::Shape(format!("arrow is {0}×{0}, expected {n}×{n}", arrow.size())));
        }
        if arrow.entries().iter().any(|&v| v >= n) {
            return Err(AlgebraError::Shape("arrow entry out of range".into()));
        }
        Ok(StrongAlgebraCandidate { lat, arrow })
    }

    pub fn from_algebra(alg: &NablaAlgebra) -> Self {
        StrongAlgebraCandidate { lat: alg.lat().clone(), arrow: alg.arrow_table().clone() }
    }

    fn arrow(&self, a: Elem, b: Elem) -> Elem {
        self.arrow.get(a, b)
    }

    /// □a = 1 → a.
    pub fn boxed(&self, a: Elem) -> Elem {
        self.arrow(self.lat.top(), a)
    }
}

pub const MEET_INTERNALIZING: &str = "meet-internalizing";
pub const JOIN_INTERNALIZING: &str = "join-internalizing";

/// Checks the implication axioms; the two internalization properties are
/// reported as flags, not violations.
pub fn check_implication_axioms(s: &StrongAlgebraCandidate) -> Report {
    let l = &s.lat;
    let mut r = Report::new();
    let mut meet_int = true;
    let mut join_int = true;
    for a in l.elements() {
        r.require(s.arrow(a, a) == l.top(), "internal reflexivity", || vec![a]);
        for b in l.elements() {
            for c in l.elements() {
                if l.leq(a, b) {
                    r.require(l.leq(s.arrow(b, c), s.arrow(a, c)), "antitone in first argument", || vec![a, b, c]);
                    r.require(l.leq(s.arrow(c, a), s.arrow(c, b)), "monotone in second argument", || vec![a, b, c]);
                }
                r.require(
                    l.leq(l.meet(s.arrow(a, b), s.arrow(b, c)), s.arrow(a, c)),
                    "internal transitivity",
                    || vec![a, b, c],
                );
                meet_int &= s.arrow(a, l.meet(b, c)) == l.meet(s.arrow(a, b), s.arrow(a, c));
                join_int &= s.arrow(l.join(a, b), c) == l.meet(s.arrow(a, c), s.arrow(b, c));
            }
        }
    }
    r.set_flag(MEET_INTERNALIZING, meet_int);
    r.set_flag(JOIN_INTERNALIZING, join_int);
    r
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "kebab-case")]
pub enum NablaFromStrong {
    Found { nabla: Vec<Elem> },
    Absent { violation: Violation },
}

impl NablaFromStrong {
    pub fn nabla(&self) -> Option<&[Elem]> {
        match self {
            NablaFromStrong::Found { nabla } => Some(nabla),
            NablaFromStrong::Absent { .. } => None,
        }
    }
}

/// Over a finite distributive lattice, → comes from some ∇ iff □ preserves
/// meets and `b → c = □(b ⊃ c)`. The ∇ is then the left adjoint of □.
pub fn nabla_from_strong(s: &StrongAlgebraCandidate) -> Result<NablaFromStrong, AlgebraError> {
    let l = &s.lat;
    let h = l.heyting_table().ok_or(AlgebraError::NotDistributive)?;
    let absent = |axiom: &str, witness: Vec<Elem>| {
        Ok(NablaFromStrong::Absent { violation: Violation { axiom: axiom.into(), witness } })
    };

    if s.boxed(l.top()) != l.top() {
        return absent("□1 = 1", vec![]);
    }
    for a in l.elements() {
        for b in l.elements() {
            if s.boxed(l.meet(a, b)) != l.meet(s.boxed(a), s.boxed(b)) {
                return absent("□(a∧b) = □a∧□b", vec![a, b]);
            }
        }
    }
    for b in l.elements() {
        for c in l.elements() {
            if s.arrow(b, c) != s.boxed(h.get(b, c)) {
                return absent("b→c = □(b⊃c)", vec![b, c]);
            }
        }
    }

    let nabla: Vec<Elem> = l
        .elements()
        .map(|a| {
            l.minimum(l.elements().filter(|&b| l.leq(a, s.boxed(b))))
                .ok_or_else(|| AlgebraError::Invariant(format!("□ has no left adjoint at {a}")))
        })
        .collect::<Result<_, _>>()?;
    NablaAlgebra::build(l.clone(), nabla.clone(), s.arrow.clone())
        .map_err(|e| AlgebraError::Invariant(format!("adjoint of □ does not validate: {e}")))?;
    Ok(NablaFromStrong::Found { nabla })
}
