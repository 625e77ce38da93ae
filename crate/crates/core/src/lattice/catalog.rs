use super::{find_isomorphism, FiniteLattice};

/// Largest size accepted by [`all_lattices`].
pub const MAX_CATALOG_SIZE: usize = 8;

/// The chain `0 < 1 < … < n-1`.
pub fn chain(n: usize) -> FiniteLattice {
    assert!(n > 0, "a lattice needs at least one element");
    FiniteLattice::from_fn(n, |a, b| a <= b).expect("chains are lattices")
}

/// The Boolean lattice of subsets of a `k`-set; element `i` is the bitmask `i`.
pub fn boolean(k: u32) -> FiniteLattice {
    let n = 1usize << k;
    FiniteLattice::from_fn(n, |a, b| a & b == a).expect("powersets are lattices")
}

/// N5: bottom 0, top 4, with `1 < 3` and `2` incomparable to both.
pub fn pentagon() -> FiniteLattice {
    FiniteLattice::from_fn(5, |a, b| a == b || a == 0 || b == 4 || (a, b) == (1, 3))
        .expect("N5 is a lattice")
}

/// M3: bottom 0, top 4, three pairwise incomparable atoms.
pub fn diamond() -> FiniteLattice {
    FiniteLattice::from_fn(5, |a, b| a == b || a == 0 || b == 4).expect("M3 is a lattice")
}

/// Componentwise product; the pair `(i, j)` has index `i * b.len() + j`.
pub fn product(a: &FiniteLattice, b: &FiniteLattice) -> FiniteLattice {
    let m = b.len();
    FiniteLattice::from_fn(a.len() * m, |x, y| a.leq(x / m, y / m) && b.leq(x % m, y % m))
        .expect("products of lattices are lattices")
}

/// One representative of every isomorphism class of lattices with at most
/// `max_n` elements, ordered by size and then by discovery order.
///
/// Representatives have bottom `0`, top `n-1`, and are naturally labelled
/// (`a ≤ b` implies `a ≤ b` as integers).
pub fn all_lattices(max_n: usize) -> Vec<FiniteLattice> {
    assert!(max_n <= MAX_CATALOG_SIZE, "catalog is limited to {MAX_CATALOG_SIZE} elements");
    let mut out = Vec::new();
    for n in 1..=max_n {
        out.extend(lattices_of_size(n));
    }
    out
}

fn lattices_of_size(n: usize) -> Vec<FiniteLattice> {
    if n <= 2 {
        return vec![chain(n)];
    }
    let inner = n - 2;
    let pairs: Vec<(usize, usize)> =
        (0..inner).flat_map(|i| (i + 1..inner).map(move |j| (i, j))).collect();

    let mut reps: Vec<FiniteLattice> = Vec::new();
    for mask in 0u64..1 << pairs.len() {
        let mut rel = vec![false; inner * inner];
        for (bit, &(i, j)) in pairs.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                rel[i * inner + j] = true;
            }
        }
        let transitive = (0..inner).all(|i| {
            (0..inner).all(|j| {
                !rel[i * inner + j] || (0..inner).all(|k| !rel[j * inner + k] || rel[i * inner + k])
            })
        });
        if !transitive {
            continue;
        }
        let leq = |a: usize, b: usize| {
            a == b || a == 0 || b == n - 1 || (a > 0 && b < n - 1 && b > 0 && a < n - 1 && rel[(a - 1) * inner + (b - 1)])
        };
        let Ok(l) = FiniteLattice::from_fn(n, leq) else { continue };
        if reps.iter().all(|r| find_isomorphism(r, &l).is_none()) {
            reps.push(l);
        }
    }
    reps
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_by_size() {
        let all = all_lattices(7);
        let counts: Vec<usize> = (1..=7).map(|n| all.iter().filter(|l| l.len() == n).count()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 5, 15, 53]);
    }

    #[test]
    fn catalog_is_deterministic_and_naturally_labelled() {
        let a = all_lattices(6);
        assert_eq!(a, all_lattices(6));
        for l in &a {
            assert_eq!(l.bot(), 0);
            assert_eq!(l.top(), l.len() - 1);
            for x in l.elements() {
                for y in l.elements() {
                    assert!(!l.leq(x, y) || x <= y);
                }
            }
        }
    }

    #[test]
    fn five_element_lattices_include_n5_and_m3() {
        let five: Vec<_> = all_lattices(5).into_iter().filter(|l| l.len() == 5).collect();
        for special in [pentagon(), diamond(), chain(5)] {
            assert!(five.iter().any(|l| find_isomorphism(l, &special).is_some()));
        }
        assert_eq!(five.iter().filter(|l| l.is_distributive()).count(), 3);
    }

    #[test]
    fn standard_constructions() {
        assert_eq!(boolean(3).len(), 8);
        assert!(boolean(3).is_distributive());
        assert!(!pentagon().is_distributive());
        assert!(!diamond().is_distributive());
        let p = product(&chain(2), &chain(3));
        assert_eq!(p.len(), 6);
        assert_eq!(p.join(1, 3), 4);
    }
}
