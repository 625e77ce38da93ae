use std::collections::BTreeSet;

use super::{Congruence, CongruenceError};
use crate::algebra::NablaAlgebra;
use crate::lattice::Elem;

pub const ORACLE_BOUND: usize = 10;

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.0[root] != root {
            root = self.0[root];
        }
        let mut cur = x;
        while self.0[cur] != root {
            cur = std::mem::replace(&mut self.0[cur], root);
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.0[ra.max(rb)] = ra.min(rb);
        true
    }

    fn into_congruence(mut self) -> Congruence {
        let roots: Vec<usize> = (0..self.0.len()).map(|x| self.find(x)).collect();
        Congruence::from_labels(&roots)
    }
}

/// Least equivalence containing `(a, b)` that is closed under ∧, ∨, ∇ and →
/// (one argument at a time). ⊃ is not used.
pub fn principal_congruence(alg: &NablaAlgebra, a: Elem, b: Elem) -> Congruence {
    let n = alg.len();
    let mut uf = UnionFind::new(n);
    uf.union(a, b);
    loop {
        let mut grew = false;
        for x in 0..n {
            for y in x + 1..n {
                if uf.find(x) != uf.find(y) {
                    continue;
                }
                grew |= uf.union(alg.nabla(x), alg.nabla(y));
                for z in 0..n {
                    grew |= uf.union(alg.meet(x, z), alg.meet(y, z));
                    grew |= uf.union(alg.join(x, z), alg.join(y, z));
                    grew |= uf.union(alg.arrow(x, z), alg.arrow(y, z));
                    grew |= uf.union(alg.arrow(z, x), alg.arrow(z, y));
                }
            }
        }
        if !grew {
            return uf.into_congruence();
        }
    }
}

fn join(a: &Congruence, b: &Congruence) -> Congruence {
    let mut uf = UnionFind::new(a.len());
    for x in 0..a.len() {
        for y in x + 1..a.len() {
            if a.related(x, y) || b.related(x, y) {
                uf.union(x, y);
            }
        }
    }
    uf.into_congruence()
}

/// All congruences, without reference to filters: principal congruences of
/// every pair, closed under joins. Sorted by block vector.
pub fn all_congruences_oracle(alg: &NablaAlgebra) -> Result<Vec<Congruence>, CongruenceError> {
    let n = alg.len();
    if n > ORACLE_BOUND {
        return Err(CongruenceError::TooLarge { size: n, max: ORACLE_BOUND });
    }
    let mut found: BTreeSet<Congruence> = BTreeSet::new();
    found.insert(Congruence::identity(n));
    for a in 0..n {
        for b in a + 1..n {
            found.insert(principal_congruence(alg, a, b));
        }
    }
    let principal: Vec<Congruence> = found.iter().cloned().collect();
    let mut frontier = principal.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for c in &frontier {
            for p in &principal {
                let j = join(c, p);
                if found.insert(j.clone()) {
                    next.push(j);
                }
            }
        }
        frontier = next;
    }
    Ok(found.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery::{gen_heyting, gen_xn};
    use crate::lattice::{chain, FiniteLattice};

    #[test]
    fn counts() {
        assert_eq!(all_congruences_oracle(&gen_xn(1).unwrap()).unwrap().len(), 2);
        assert_eq!(all_congruences_oracle(&gen_heyting(&chain(3)).unwrap()).unwrap().len(), 3);
        let one = FiniteLattice::new(&[vec![true]]).unwrap();
        assert_eq!(all_congruences_oracle(&gen_heyting(&one).unwrap()).unwrap(), vec![Congruence::identity(1)]);
    }

    #[test]
    fn principal_on_chain() {
        let h3 = gen_heyting(&chain(3)).unwrap();
        assert_eq!(principal_congruence(&h3, 1, 2).blocks(), &[0, 1, 1]);
        assert!(principal_congruence(&h3, 0, 1).is_total());
    }

    #[test]
    fn too_large() {
        let x4 = gen_xn(4).unwrap();
        assert_eq!(all_congruences_oracle(&x4), Err(CongruenceError::TooLarge { size: 17, max: ORACLE_BOUND }));
    }
}
