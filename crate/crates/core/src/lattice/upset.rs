use std::collections::HashMap;

use super::filters::canonical_set_order;
use super::{check_partial_order, Elem, ElemSet, FiniteLattice, LatticeError};

/// Upsets are stored as `u64` bitmasks.
pub const MAX_POSET_POINTS: usize = 64;

/// The upsets of a finite poset, ordered by size and then lexicographically,
/// together with the lattice they form under inclusion.
#[derive(Debug, Clone)]
pub struct UpSetFamily {
    points: usize,
    members: Vec<ElemSet>,
    masks: Vec<u64>,
    index: HashMap<u64, usize>,
    lattice: FiniteLattice,
}

impl UpSetFamily {
    pub fn points(&self) -> usize {
        self.points
    }

    pub fn members(&self) -> &[ElemSet] {
        &self.members
    }

    pub fn member(&self, i: Elem) -> &ElemSet {
        &self.members[i]
    }

    pub fn lattice(&self) -> &FiniteLattice {
        &self.lattice
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn mask(&self, i: Elem) -> u64 {
        self.masks[i]
    }

    pub fn index_of_mask(&self, mask: u64) -> Option<Elem> {
        self.index.get(&mask).copied()
    }

    pub fn index_of(&self, set: &ElemSet) -> Option<Elem> {
        if set.iter().any(|&p| p >= self.points) {
            return None;
        }
        self.index_of_mask(to_mask(set))
    }
}

pub fn to_mask(set: &ElemSet) -> u64 {
    set.iter().fold(0, |m, &p| m | 1 << p)
}

pub fn from_mask(mask: u64) -> ElemSet {
    (0..64).filter(|p| mask >> p & 1 == 1).collect()
}

/// Enumerates the upsets of the poset `(0..points, leq)`; `leq` is flat
/// row-major. Output-sensitive: no subset scan.
pub fn upset_lattice(points: usize, leq: &[bool]) -> Result<UpSetFamily, LatticeError> {
    if points > MAX_POSET_POINTS {
        return Err(LatticeError::TooLarge { points, max: MAX_POSET_POINTS });
    }
    assert_eq!(leq.len(), points * points, "flat order matrix has the wrong length");
    check_partial_order(points, leq).map_err(LatticeError::NotPartialOrder)?;
    let at = |a: usize, b: usize| leq[a * points + b];

    // Visit points so that everything strictly above a point comes first.
    let mut order: Vec<usize> = (0..points).collect();
    order.sort_by_key(|&p| (0..points).filter(|&q| at(p, q)).count());
    let above: Vec<u64> = (0..points)
        .map(|p| (0..points).filter(|&q| q != p && at(p, q)).fold(0, |m, q| m | 1 << q))
        .collect();

    let mut masks = Vec::new();
    let mut stack = vec![(0usize, 0u64)];
    while let Some((depth, mask)) = stack.pop() {
        if depth == points {
            masks.push(mask);
            continue;
        }
        let p = order[depth];
        stack.push((depth + 1, mask));
        if above[p] & !mask == 0 {
            stack.push((depth + 1, mask | 1 << p));
        }
    }

    let mut members: Vec<ElemSet> = masks.iter().map(|&m| from_mask(m)).collect();
    members.sort_by(canonical_set_order);
    let masks: Vec<u64> = members.iter().map(to_mask).collect();
    let index: HashMap<u64, usize> = masks.iter().enumerate().map(|(i, &m)| (m, i)).collect();

    let n = masks.len();
    let mut order_flat = vec![false; n * n];
    let mut meet = vec![0; n * n];
    let mut join = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            order_flat[a * n + b] = masks[a] & !masks[b] == 0;
            meet[a * n + b] = index[&(masks[a] & masks[b])];
            join[a * n + b] = index[&(masks[a] | masks[b])];
        }
    }
    let lattice = FiniteLattice { n, leq: order_flat, meet, join, bot: 0, top: n - 1 };

    Ok(UpSetFamily { points, members, masks, index, lattice })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn flat(points: usize, leq: impl Fn(usize, usize) -> bool) -> Vec<bool> {
        (0..points * points).map(|i| leq(i / points, i % points)).collect()
    }

    // Oracle: scan all subsets.
    fn upsets_by_subsets(points: usize, leq: &[bool]) -> Vec<ElemSet> {
        let mut out: Vec<ElemSet> = (0u64..1 << points)
            .filter(|&m| {
                (0..points).all(|a| {
                    m >> a & 1 == 0 || (0..points).all(|b| !leq[a * points + b] || m >> b & 1 == 1)
                })
            })
            .map(from_mask)
            .collect();
        out.sort_by(canonical_set_order);
        out
    }

    #[test]
    fn antichain_gives_powerset() {
        let leq = flat(3, |a, b| a == b);
        let fam = upset_lattice(3, &leq).unwrap();
        assert_eq!(fam.len(), 8);
        assert!(fam.lattice().is_distributive());
        assert_eq!(fam.members(), upsets_by_subsets(3, &leq).as_slice());
    }

    #[test]
    fn chain_gives_chain() {
        let leq = flat(4, |a, b| a <= b);
        let fam = upset_lattice(4, &leq).unwrap();
        assert_eq!(fam.len(), 5);
        assert_eq!(fam.member(1), &ElemSet::from([3]));
        assert_eq!(fam.members(), upsets_by_subsets(4, &leq).as_slice());
    }

    #[test]
    fn agrees_with_subset_scan_and_validated_lattice() {
        let posets: Vec<(usize, Vec<bool>)> = vec![
            (0, vec![]),
            (1, vec![true]),
            (4, flat(4, |a, b| a == b || (a == 0 && b >= 2) || (a == 1 && b == 3))),
            (5, flat(5, |a, b| a == b || a == 0 || (a == 1 && b == 2))),
        ];
        for (points, leq) in posets {
            let fam = upset_lattice(points, &leq).unwrap();
            assert_eq!(fam.members(), upsets_by_subsets(points, &leq).as_slice());
            let checked = FiniteLattice::from_fn(fam.len(), |a, b| fam.mask(a) & !fam.mask(b) == 0)
                .unwrap();
            assert_eq!(&checked, fam.lattice());
            for (i, s) in fam.members().iter().enumerate() {
                assert_eq!(fam.index_of(s), Some(i));
            }
        }
    }

    #[test]
    fn rejects_large_and_invalid() {
        assert!(matches!(
            upset_lattice(65, &vec![false; 65 * 65]),
            Err(LatticeError::TooLarge { points: 65, .. })
        ));
        assert!(matches!(
            upset_lattice(2, &[true, true, true, true]),
            Err(LatticeError::NotPartialOrder(_))
        ));
    }
}
