//! ∇-algebras: a bounded lattice with a unary ∇ and a binary → satisfying
//! `∇c ∧ a ≤ b ⇔ c ≤ a → b`.

mod morphism;
mod properties;
mod strong;

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::lattice::{BinaryTable, Elem, FiniteLattice, LatticeError};
use crate::report::Report;

pub use morphism::{find_embeddings, AlgebraMorphism};
pub use properties::{
    check_basic_properties, check_characterizations, check_faithful_heyting, check_on_one, classify,
    FlagSet, Property, PropertyProfile,
};
pub use strong::{check_implication_axioms, nabla_from_strong, NablaFromStrong, StrongAlgebraCandidate};

/// Which half of the adjunction failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    /// `∇c ∧ a ≤ b` holds but `c ≤ a → b` does not.
    NablaToArrow,
    /// `c ≤ a → b` holds but `∇c ∧ a ≤ b` does not.
    ArrowToNabla,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Direction::NablaToArrow => f.write_str("∇c ∧ a ≤ b but c ≰ a → b"),
            Direction::ArrowToNabla => f.write_str("c ≤ a → b but ∇c ∧ a ≰ b"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("shape error: {0}")]
    Shape(String),
    #[error("adjunction fails at (a,b,c)=({a},{b},{c}): {direction}")]
    AdjunctionFailure { a: Elem, b: Elem, c: Elem, direction: Direction },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("lattice is not distributive")]
    NotDistributive,
    #[error("not a ∇-algebra morphism: {0:?}")]
    NotMorphism(Report),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

/// Shape check shared by every table-taking entry point.
pub fn check_shapes(lat: &FiniteLattice, nabla: &[Elem], arrow: &BinaryTable) -> Result<(), AlgebraError> {
    let n = lat.len();
    if nabla.len() != n {
        return Err(AlgebraError::Shape(format!("nabla has {} entries, expected {n}", nabla.len())));
    }
    if arrow.size() != n {
        return Err(AlgebraError::Shape(format!("arrow is {0}×{0}, expected {n}×{n}", arrow.size())));
    }
    if let Some(a) = nabla.iter().position(|&v| v >= n) {
        return Err(AlgebraError::Shape(format!("nabla[{a}] = {} is out of range", nabla[a])));
    }
    if let Some(i) = arrow.entries().iter().position(|&v| v >= n) {
        return Err(AlgebraError::Shape(format!(
            "arrow[{}][{}] = {} is out of range",
            i / n,
            i % n,
            arrow.entries()[i]
        )));
    }
    Ok(())
}

/// A validated ∇-algebra. `boxed` (□a = 1 → a) and the Heyting table are derived.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NablaAlgebra {
    lat: FiniteLattice,
    nabla: Vec<Elem>,
    arrow: BinaryTable,
    boxed: Vec<Elem>,
    heyting: Option<BinaryTable>,
}

impl NablaAlgebra {
    pub fn build(lat: FiniteLattice, nabla: Vec<Elem>, arrow: BinaryTable) -> Result<Self, AlgebraError> {
        check_shapes(&lat, &nabla, &arrow)?;
        if let Some((a, b, c, direction)) = adjunction_failure(&lat, &nabla, &arrow) {
            return Err(AlgebraError::AdjunctionFailure { a, b, c, direction });
        }
        let top = lat.top();
        let boxed = lat.elements().map(|a| arrow.get(top, a)).collect();
        let heyting = lat.heyting_table();
        let alg = NablaAlgebra { lat, nabla, arrow, boxed, heyting };
        alg.check_derived_laws()?;
        Ok(alg)
    }

    /// The laws every ∇-algebra satisfies as a consequence of the adjunction.
    fn check_derived_laws(&self) -> Result<(), AlgebraError> {
        let l = &self.lat;
        let fail = |what: &str, w: &[Elem]| Err(AlgebraError::Invariant(format!("{what} fails at {w:?}")));
        if self.nabla(l.bot()) != l.bot() {
            return fail("∇0 = 0", &[]);
        }
        if self.boxed(l.top()) != l.top() {
            return fail("□1 = 1", &[]);
        }
        for a in l.elements() {
            for b in l.elements() {
                if self.nabla(l.join(a, b)) != l.join(self.nabla(a), self.nabla(b)) {
                    return fail("∇ preserves joins", &[a, b]);
                }
                if self.boxed(l.meet(a, b)) != l.meet(self.boxed(a), self.boxed(b)) {
                    return fail("□ preserves meets", &[a, b]);
                }
                if !l.leq(a, b) {
                    continue;
                }
                if !l.leq(self.nabla(a), self.nabla(b)) {
                    return fail("∇ is monotone", &[a, b]);
                }
                for c in l.elements() {
                    if !l.leq(self.arrow(b, c), self.arrow(a, c)) {
                        return fail("→ is antitone in its first argument", &[a, b, c]);
                    }
                    if !l.leq(self.arrow(c, a), self.arrow(c, b)) {
                        return fail("→ is monotone in its second argument", &[a, b, c]);
                    }
                }
            }
        }
        Ok(())
    }

    pub fn lat(&self) -> &FiniteLattice {
        &self.lat
    }

    pub fn len(&self) -> usize {
        self.lat.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lat.is_empty()
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        self.lat.elements()
    }

    pub fn nabla(&self, a: Elem) -> Elem {
        self.nabla[a]
    }

    pub fn arrow(&self, a: Elem, b: Elem) -> Elem {
        self.arrow.get(a, b)
    }

    /// □a = 1 → a.
    pub fn boxed(&self, a: Elem) -> Elem {
        self.boxed[a]
    }

    /// The Heyting implication a ⊃ b, when the lattice has one.
    pub fn imp(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.heyting.as_ref().map(|h| h.get(a, b))
    }

    pub fn nabla_table(&self) -> &[Elem] {
        &self.nabla
    }

    pub fn arrow_table(&self) -> &BinaryTable {
        &self.arrow
    }

    pub fn box_table(&self) -> &[Elem] {
        &self.boxed
    }

    pub fn heyting_table(&self) -> Option<&BinaryTable> {
        self.heyting.as_ref()
    }

    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        self.lat.meet(a, b)
    }

    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        self.lat.join(a, b)
    }

    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.lat.leq(a, b)
    }

    pub fn top(&self) -> Elem {
        self.lat.top()
    }

    pub fn bot(&self) -> Elem {
        self.lat.bot()
    }

    /// `∇^k a`.
    pub fn nabla_pow(&self, a: Elem, k: usize) -> Elem {
        (0..k).fold(a, |x, _| self.nabla(x))
    }

    /// `□^k a`.
    pub fn box_pow(&self, a: Elem, k: usize) -> Elem {
        (0..k).fold(a, |x, _| self.boxed(x))
    }

    pub fn is_trivial(&self) -> bool {
        self.len() == 1
    }
}

/// First `(a, b, c)` in lexicographic order where the adjunction fails.
fn adjunction_failure(
    lat: &FiniteLattice,
    nabla: &[Elem],
    arrow: &BinaryTable,
) -> Option<(Elem, Elem, Elem, Direction)> {
    for a in lat.elements() {
        for b in lat.elements() {
            let ab = arrow.get(a, b);
            for c in lat.elements() {
                let left = lat.leq(lat.meet(nabla[c], a), b);
                let right = lat.leq(c, ab);
                if left && !right {
                    return Some((a, b, c, Direction::NablaToArrow));
                }
                if right && !left {
                    return Some((a, b, c, Direction::ArrowToNabla));
                }
            }
        }
    }
    None
}

/// The unique arrow making `(lat, nabla, →)` a ∇-algebra, if there is one:
/// `a → b = max {c : ∇c ∧ a ≤ b}`.
pub fn derive_arrow(lat: &FiniteLattice, nabla: &[Elem]) -> Option<BinaryTable> {
    if nabla.len() != lat.len() || nabla.iter().any(|&v| v >= lat.len()) {
        return None;
    }
    let n = lat.len();
    let mut data = Vec::with_capacity(n * n);
    for a in lat.elements() {
        for b in lat.elements() {
            let m = lat.maximum(lat.elements().filter(|&c| lat.leq(lat.meet(nabla[c], a), b)))?;
            data.push(m);
        }
    }
    let arrow = BinaryTable::from_flat(n, data);
    adjunction_failure(lat, nabla, &arrow).is_none().then_some(arrow)
}

pub const AXIOM_LATTICE: &str = "bounded-lattice";
pub const AXIOM_MEET_ARROW: &str = "(a∧b)→a = 1";
pub const AXIOM_NABLA_MEET: &str = "∇(a∧b) ≤ ∇a∧∇b";
pub const AXIOM_MODUS_PONENS: &str = "a∧∇(a→b) ≤ b";
pub const AXIOM_FOLD: &str = "c∧[(∇c∧a)→b] ≤ a→b";

/// Evaluates the equational presentation of ∇-algebras over all tuples.
/// Agrees with [`NablaAlgebra::build`] on every input.
pub fn check_equational_axioms(
    lat: &FiniteLattice,
    nabla: &[Elem],
    arrow: &BinaryTable,
) -> Result<Report, AlgebraError> {
    check_shapes(lat, nabla, arrow)?;
    let mut r = Report::new();
    if let Err(e) = lat.check_laws() {
        r.fail(AXIOM_LATTICE, match e {
            LatticeError::LawViolation { witness, .. } => witness,
            _ => vec![],
        });
    }
    let top = lat.top();
    for a in lat.elements() {
        for b in lat.elements() {
            let ab = arrow.get(a, b);
            let m = lat.meet(a, b);
            r.require(arrow.get(m, a) == top, AXIOM_MEET_ARROW, || vec![a, b]);
            r.require(lat.leq(nabla[m], lat.meet(nabla[a], nabla[b])), AXIOM_NABLA_MEET, || vec![a, b]);
            r.require(lat.leq(lat.meet(a, nabla[ab]), b), AXIOM_MODUS_PONENS, || vec![a, b]);
            for c in lat.elements() {
                let lhs = lat.meet(c, arrow.get(lat.meet(nabla[c], a), b));
                r.require(lat.leq(lhs, ab), AXIOM_FOLD, || vec![a, b, c]);
            }
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{chain, pentagon};

    fn x1_arrow() -> BinaryTable {
        BinaryTable::from_rows(3, &[vec![2, 2, 2], vec![1, 2, 2], vec![1, 1, 2]]).unwrap()
    }

    #[test]
    fn trivial_and_heyting_on_three_chain() {
        let l = chain(3);
        assert!(NablaAlgebra::build(l.clone(), vec![0; 3], BinaryTable::constant(3, 2)).is_ok());
        let h = l.heyting_table().unwrap();
        assert!(NablaAlgebra::build(l, vec![0, 1, 2], h).is_ok());
    }

    #[test]
    fn identity_nabla_with_constant_top_arrow_fails() {
        let err = NablaAlgebra::build(chain(3), vec![0, 1, 2], BinaryTable::constant(3, 2)).unwrap_err();
        assert_eq!(
            err,
            AlgebraError::AdjunctionFailure { a: 1, b: 0, c: 1, direction: Direction::ArrowToNabla }
        );
    }

    #[test]
    fn shape_errors() {
        let l = chain(2);
        assert!(matches!(
            NablaAlgebra::build(l.clone(), vec![0], BinaryTable::constant(2, 1)),
            Err(AlgebraError::Shape(_))
        ));
        assert!(matches!(
            NablaAlgebra::build(l.clone(), vec![0, 2], BinaryTable::constant(2, 1)),
            Err(AlgebraError::Shape(_))
        ));
        assert!(matches!(
            check_equational_axioms(&l, &[0, 0], &BinaryTable::constant(3, 1)),
            Err(AlgebraError::Shape(_))
        ));
    }

    #[test]
    fn derive_arrow_examples() {
        // Max-search by hand for the shift dynamics on the 3-chain.
        assert_eq!(derive_arrow(&chain(3), &[0, 0, 2]), Some(x1_arrow()));
        for l in [chain(1), chain(4), pentagon()] {
            let n = l.len();
            assert_eq!(derive_arrow(&l, &vec![l.bot(); n]), Some(BinaryTable::constant(n, l.top())));
        }
        assert_eq!(derive_arrow(&pentagon(), &[0, 1, 2, 3, 4]), None);
        assert_eq!(derive_arrow(&chain(2), &[1, 1]), None);
    }

    #[test]
    fn equational_axioms_examples() {
        assert!(check_equational_axioms(&chain(3), &[0, 0, 2], &x1_arrow()).unwrap().ok);
        let r = check_equational_axioms(&chain(2), &[0, 1], &BinaryTable::constant(2, 1)).unwrap();
        assert!(!r.ok);
        assert_eq!(r.witness(AXIOM_MODUS_PONENS), Some(&[1, 0][..]));
        for l in [chain(3), pentagon()] {
            let n = l.len();
            assert!(check_equational_axioms(&l, &vec![0; n], &BinaryTable::constant(n, l.top())).unwrap().ok);
        }
    }

    #[test]
    fn derived_tables() {
        let a = NablaAlgebra::build(chain(3), vec![0, 0, 2], x1_arrow()).unwrap();
        assert_eq!(a.box_table(), &[1, 1, 2]);
        assert!(a.heyting_table().is_some());
        assert_eq!(a.nabla_pow(1, 1), 0);
        assert_eq!(a.box_pow(0, 2), 1);
    }
}
