//! Finite bounded lattices stored as dense index tables.
//!
//! Elements are the indices `0..n`. The order matrix is the only input; meet
//! and join tables, the bounds, and everything else are derived once at
//! construction and never change afterwards.

mod catalog;
mod filters;
mod iso;
mod table;
mod upset;

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

pub use catalog::{all_lattices, boolean, chain, diamond, pentagon, product, MAX_CATALOG_SIZE};
pub use filters::{canonical_set_order, PrimeFilter};
pub use iso::{find_isomorphism, isomorphisms};
pub use table::BinaryTable;
pub use upset::{upset_lattice, UpSetFamily, MAX_POSET_POINTS};

/// Index of an element inside a finite structure.
pub type Elem = usize;

/// A set of element indices, iterated in ascending order.
pub type ElemSet = BTreeSet<Elem>;

/// The first partial-order law found to fail, with its witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "law", rename_all = "snake_case")]
pub enum OrderViolation {
    Reflexivity { a: Elem },
    Antisymmetry { a: Elem, b: Elem },
    Transitivity { a: Elem, b: Elem, c: Elem },
}

impl OrderViolation {
    pub fn witness(&self) -> Vec<Elem> {
        match *self {
            OrderViolation::Reflexivity { a } => vec![a],
            OrderViolation::Antisymmetry { a, b } => vec![a, b],
            OrderViolation::Transitivity { a, b, c } => vec![a, b, c],
        }
    }
}

impl fmt::Display for OrderViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            OrderViolation::Reflexivity { a } => write!(f, "{a} ≰ {a}"),
            OrderViolation::Antisymmetry { a, b } => {
                write!(f, "{a} ≤ {b} and {b} ≤ {a} but {a} ≠ {b}")
            }
            OrderViolation::Transitivity { a, b, c } => {
                write!(f, "{a} ≤ {b} ≤ {c} but {a} ≰ {c}")
            }
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("order matrix is not square: row {row} has {len} entries, expected {n}")]
    NotSquare { n: usize, row: usize, len: usize },
    #[error("not a partial order: {0}")]
    NotPartialOrder(OrderViolation),
    #[error("elements {a} and {b} have no meet")]
    NoMeet { a: Elem, b: Elem },
    #[error("elements {a} and {b} have no join")]
    NoJoin { a: Elem, b: Elem },
    #[error("order has no least or no greatest element")]
    NoBounds,
    #[error("lattice law `{law}` fails at {witness:?}")]
    LawViolation { law: &'static str, witness: Vec<Elem> },
    #[error("poset has {points} points; at most {max} are supported")]
    TooLarge { points: usize, max: usize },
}

/// Checks reflexivity, antisymmetry and transitivity of a flat `n × n` relation.
pub fn check_partial_order(n: usize, leq: &[bool]) -> Result<(), OrderViolation> {
    debug_assert_eq!(leq.len(), n * n);
    let at = |a: usize, b: usize| leq[a * n + b];
    for a in 0..n {
        if !at(a, a) {
            return Err(OrderViolation::Reflexivity { a });
        }
    }
    for a in 0..n {
        for b in a + 1..n {
            if at(a, b) && at(b, a) {
                return Err(OrderViolation::Antisymmetry { a, b });
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            if !at(a, b) {
                continue;
            }
            for c in 0..n {
                if at(b, c) && !at(a, c) {
                    return Err(OrderViolation::Transitivity { a, b, c });
                }
            }
        }
    }
    Ok(())
}

/// Flattens a square boolean matrix, rejecting ragged input.
pub fn flatten_square(rows: &[Vec<bool>]) -> Result<Vec<bool>, LatticeError> {
    let n = rows.len();
    let mut flat = Vec::with_capacity(n * n);
    for (row, r) in rows.iter().enumerate() {
        if r.len() != n {
            return Err(LatticeError::NotSquare { n, row, len: r.len() });
        }
        flat.extend_from_slice(r);
    }
    Ok(flat)
}

/// A validated finite bounded lattice.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteLattice {
    n: usize,
    leq: Vec<bool>,
    meet: Vec<Elem>,
    join: Vec<Elem>,
    bot: Elem,
    top: Elem,
}

impl fmt::Debug for FiniteLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteLattice")
            .field("n", &self.n)
            .field("leq", &self.order_matrix())
            .finish()
    }
}

impl FiniteLattice {
    /// Builds a lattice from a square order matrix (`leq[a][b]` iff `a ≤ b`).
    pub fn new(leq: &[Vec<bool>]) -> Result<Self, LatticeError> {
        let n = leq.len();
        Self::from_flat(n, flatten_square(leq)?)
    }

    /// Builds a lattice on `0..n` with the order given by a predicate.
    pub fn from_fn(n: usize, leq: impl Fn(Elem, Elem) -> bool) -> Result<Self, LatticeError> {
        let flat = (0..n * n).map(|i| leq(i / n, i % n)).collect();
        Self::from_flat(n, flat)
    }

    pub fn from_flat(n: usize, leq: Vec<bool>) -> Result<Self, LatticeError> {
        assert_eq!(leq.len(), n * n, "flat order matrix has the wrong length");
        check_partial_order(n, &leq).map_err(LatticeError::NotPartialOrder)?;
        let at = |a: usize, b: usize| leq[a * n + b];

        let bot = (0..n).find(|&b| (0..n).all(|x| at(b, x))).ok_or(LatticeError::NoBounds)?;
        let top = (0..n).find(|&t| (0..n).all(|x| at(x, t))).ok_or(LatticeError::NoBounds)?;

        let mut meet = vec![0; n * n];
        let mut join = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                let glb = (0..n)
                    .filter(|&c| at(c, a) && at(c, b))
                    .find(|&c| (0..n).all(|d| !(at(d, a) && at(d, b)) || at(d, c)))
                    .ok_or(LatticeError::NoMeet { a, b })?;
                let lub = (0..n)
                    .filter(|&c| at(a, c) && at(b, c))
                    .find(|&c| (0..n).all(|d| !(at(a, d) && at(b, d)) || at(c, d)))
                    .ok_or(LatticeError::NoJoin { a, b })?;
                meet[a * n + b] = glb;
                join[a * n + b] = lub;
            }
        }

        let lattice = FiniteLattice { n, leq, meet, join, bot, top };
        lattice.check_laws()?;
        Ok(lattice)
    }

    /// The lattice identities. They follow from the order being a lattice, so
    /// a failure here means the tables were derived incorrectly.
    pub fn check_laws(&self) -> Result<(), LatticeError> {
        let fail = |law, witness| Err(LatticeError::LawViolation { law, witness });
        for a in self.elements() {
            if self.meet(a, a) != a || self.join(a, a) != a {
                return fail("idempotence", vec![a]);
            }
            if !self.leq(self.bot, a) || !self.leq(a, self.top) {
                return fail("bounds", vec![a]);
            }
            for b in self.elements() {
                if self.meet(a, b) != self.meet(b, a) || self.join(a, b) != self.join(b, a) {
                    return fail("commutativity", vec![a, b]);
                }
                if self.meet(a, self.join(a, b)) != a || self.join(a, self.meet(a, b)) != a {
                    return fail("absorption", vec![a, b]);
                }
                for c in self.elements() {
                    if self.meet(self.meet(a, b), c) != self.meet(a, self.meet(b, c))
                        || self.join(self.join(a, b), c) != self.join(a, self.join(b, c))
                    {
                        return fail("associativity", vec![a, b, c]);
                    }
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.n
    }

    #[inline]
    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.leq[a * self.n + b]
    }

    #[inline]
    pub fn lt(&self, a: Elem, b: Elem) -> bool {
        a != b && self.leq(a, b)
    }

    #[inline]
    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        self.meet[a * self.n + b]
    }

    #[inline]
    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        self.join[a * self.n + b]
    }

    pub fn bot(&self) -> Elem {
        self.bot
    }

    pub fn top(&self) -> Elem {
        self.top
    }

    pub fn order_matrix(&self) -> Vec<Vec<bool>> {
        self.leq.chunks(self.n.max(1)).take(self.n).map(<[bool]>::to_vec).collect()
    }

    pub fn meet_all(&self, items: impl IntoIterator<Item = Elem>) -> Elem {
        items.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    pub fn join_all(&self, items: impl IntoIterator<Item = Elem>) -> Elem {
        items.into_iter().fold(self.bot, |acc, x| self.join(acc, x))
    }

    /// The greatest element of `items`, if the set has one.
    pub fn maximum(&self, items: impl IntoIterator<Item = Elem>) -> Option<Elem> {
        let items: Vec<Elem> = items.into_iter().collect();
        items.iter().copied().find(|&m| items.iter().all(|&x| self.leq(x, m)))
    }

    /// The least element of `items`, if the set has one.
    pub fn minimum(&self, items: impl IntoIterator<Item = Elem>) -> Option<Elem> {
        let items: Vec<Elem> = items.into_iter().collect();
        items.iter().copied().find(|&m| items.iter().all(|&x| self.leq(m, x)))
    }

    /// First triple `(a, b, c)` with `a ∧ (b ∨ c) ≠ (a ∧ b) ∨ (a ∧ c)`.
    pub fn distributivity_witness(&self) -> Option<[Elem; 3]> {
        for a in self.elements() {
            for b in self.elements() {
                for c in self.elements() {
                    let lhs = self.meet(a, self.join(b, c));
                    let rhs = self.join(self.meet(a, b), self.meet(a, c));
                    if lhs != rhs {
                        return Some([a, b, c]);
                    }
                }
            }
        }
        None
    }

    pub fn is_distributive(&self) -> bool {
        self.distributivity_witness().is_none()
    }

    /// The relative pseudo-complement `a ⊃ b = max {c : c ∧ a ≤ b}`, if it exists.
    pub fn relative_pseudocomplement(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.maximum(self.elements().filter(|&c| self.leq(self.meet(c, a), b)))
    }

    /// First pair with no relative pseudo-complement.
    pub fn heyting_witness(&self) -> Option<(Elem, Elem)> {
        for a in self.elements() {
            for b in self.elements() {
                if self.relative_pseudocomplement(a, b).is_none() {
                    return Some((a, b));
                }
            }
        }
        None
    }

    /// The Heyting implication table, present exactly when every pair has a
    /// relative pseudo-complement. On finite lattices this coincides with
    /// distributivity.
    pub fn heyting_table(&self) -> Option<BinaryTable> {
        let mut data = Vec::with_capacity(self.n * self.n);
        for a in self.elements() {
            for b in self.elements() {
                data.push(self.relative_pseudocomplement(a, b)?);
            }
        }
        let table = BinaryTable::from_flat(self.n, data);
        debug_assert!(self.is_distributive());
        Some(table)
    }

    pub fn principal_ideal(&self, a: Elem) -> ElemSet {
        self.elements().filter(|&x| self.leq(x, a)).collect()
    }

    pub fn principal_filter(&self, a: Elem) -> ElemSet {
        self.elements().filter(|&x| self.leq(a, x)).collect()
    }

    pub fn up_closure(&self, set: &ElemSet) -> ElemSet {
        self.elements().filter(|&x| set.iter().any(|&s| self.leq(s, x))).collect()
    }

    pub fn upper_bounds(&self, set: &ElemSet) -> ElemSet {
        self.elements().filter(|&x| set.iter().all(|&s| self.leq(s, x))).collect()
    }

    pub fn lower_bounds(&self, set: &ElemSet) -> ElemSet {
        self.elements().filter(|&x| set.iter().all(|&s| self.leq(x, s))).collect()
    }

    /// Join-irreducible elements: non-bottom and not the join of two strictly
    /// smaller elements.
    pub fn join_irreducibles(&self) -> Vec<Elem> {
        self.elements()
            .filter(|&a| a != self.bot)
            .filter(|&a| {
                !self.elements().any(|x| {
                    self.lt(x, a) && self.elements().any(|y| self.lt(y, a) && self.join(x, y) == a)
                })
            })
            .collect()
    }

    /// Elements covered by `a` (immediate predecessors).
    pub fn lower_covers(&self, a: Elem) -> Vec<Elem> {
        self.elements()
            .filter(|&x| self.lt(x, a))
            .filter(|&x| !self.elements().any(|y| self.lt(x, y) && self.lt(y, a)))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_element_lattice() {
        let l = FiniteLattice::new(&[vec![true]]).unwrap();
        assert_eq!((l.bot(), l.top()), (0, 0));
        assert!(l.is_distributive());
    }

    #[test]
    fn three_chain_is_min_max() {
        let l = chain(3);
        for a in 0..3 {
            for b in 0..3 {
                assert_eq!(l.meet(a, b), a.min(b));
                assert_eq!(l.join(a, b), a.max(b));
            }
        }
    }

    #[test]
    fn rejects_non_square() {
        let err = FiniteLattice::new(&[vec![true, true], vec![true]]).unwrap_err();
        assert!(matches!(err, LatticeError::NotSquare { row: 1, .. }));
    }

    #[test]
    fn rejects_order_violations_with_witness() {
        let err = FiniteLattice::new(&[vec![false]]).unwrap_err();
        assert_eq!(err, LatticeError::NotPartialOrder(OrderViolation::Reflexivity { a: 0 }));

        let err = FiniteLattice::new(&[vec![true, true], vec![true, true]]).unwrap_err();
        assert_eq!(err, LatticeError::NotPartialOrder(OrderViolation::Antisymmetry { a: 0, b: 1 }));

        // 0 ≤ 1 ≤ 2 without 0 ≤ 2
        let rows = vec![
            vec![true, true, false],
            vec![false, true, true],
            vec![false, false, true],
        ];
        let err = FiniteLattice::new(&rows).unwrap_err();
        assert_eq!(
            err,
            LatticeError::NotPartialOrder(OrderViolation::Transitivity { a: 0, b: 1, c: 2 })
        );
    }

    #[test]
    fn rejects_missing_bounds_and_joins() {
        // two-element antichain
        let err = FiniteLattice::new(&[vec![true, false], vec![false, true]]).unwrap_err();
        assert_eq!(err, LatticeError::NoBounds);
        assert_eq!(FiniteLattice::new(&[]).unwrap_err(), LatticeError::NoBounds);

        // bottom, two atoms 1 and 2, two incomparable covers 3 and 4 of both, top
        let up = |a: usize, b: usize| {
            a == b || a == 0 || b == 5 || (matches!(a, 1 | 2) && matches!(b, 3 | 4))
        };
        let err = FiniteLattice::from_fn(6, up).unwrap_err();
        assert_eq!(err, LatticeError::NoJoin { a: 1, b: 2 });
    }

    #[test]
    fn distributivity_of_standard_lattices() {
        assert!(chain(4).is_distributive());
        assert!(boolean(2).is_distributive());
        assert!(!pentagon().is_distributive());
        assert!(!diamond().is_distributive());
    }

    #[test]
    fn three_chain_heyting_table() {
        let h = chain(3).heyting_table().unwrap();
        assert_eq!(h.get(1, 0), 0);
        assert_eq!(h.get(2, 1), 1);
        for a in 0..3 {
            for b in a..3 {
                assert_eq!(h.get(a, b), 2);
            }
        }
    }

    #[test]
    fn two_element_boolean_is_classical() {
        let h = chain(2).heyting_table().unwrap();
        assert_eq!(h.rows(), vec![vec![1, 1], vec![0, 1]]);
    }

    #[test]
    fn pentagon_has_no_heyting_table() {
        let n5 = pentagon();
        assert!(n5.heyting_table().is_none());
        assert!(n5.heyting_witness().is_some());
    }

    #[test]
    fn join_irreducibles_of_boolean_square() {
        assert_eq!(boolean(2).join_irreducibles().len(), 2);
        assert_eq!(chain(4).join_irreducibles(), vec![1, 2, 3]);
    }
}
