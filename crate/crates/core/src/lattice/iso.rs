use super::{Elem, FiniteLattice};

/// Per-element invariants preserved by any order isomorphism.
fn signature(l: &FiniteLattice, a: Elem) -> (usize, usize, usize, usize) {
    let below = l.elements().filter(|&x| l.leq(x, a)).count();
    let above = l.elements().filter(|&x| l.leq(a, x)).count();
    let lower_covers = l.lower_covers(a).len();
    let upper_covers = l.elements().filter(|&x| l.lower_covers(x).contains(&a)).count();
    (below, above, lower_covers, upper_covers)
}

/// All order isomorphisms `a → b`, as index maps, in lexicographic order.
pub fn isomorphisms(a: &FiniteLattice, b: &FiniteLattice) -> Vec<Vec<Elem>> {
    let mut found = Vec::new();
    search(a, b, usize::MAX, &mut found);
    found
}

/// Some order isomorphism `a → b`, if one exists.
pub fn find_isomorphism(a: &FiniteLattice, b: &FiniteLattice) -> Option<Vec<Elem>> {
    let mut found = Vec::new();
    search(a, b, 1, &mut found);
    found.pop()
}

fn search(a: &FiniteLattice, b: &FiniteLattice, limit: usize, found: &mut Vec<Vec<Elem>>) {
    let n = a.len();
    if n != b.len() {
        return;
    }
    let sig_a: Vec<_> = a.elements().map(|x| signature(a, x)).collect();
    let sig_b: Vec<_> = b.elements().map(|x| signature(b, x)).collect();
    let mut sorted_a = sig_a.clone();
    let mut sorted_b = sig_b.clone();
    sorted_a.sort_unstable();
    sorted_b.sort_unstable();
    if sorted_a != sorted_b {
        return;
    }

    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    extend(a, b, &sig_a, &sig_b, 0, &mut map, &mut used, limit, found);
}

#[allow(clippy::too_many_arguments)]
fn extend(
    a: &FiniteLattice,
    b: &FiniteLattice,
    sig_a: &[(usize, usize, usize, usize)],
    sig_b: &[(usize, usize, usize, usize)],
    next: Elem,
    map: &mut Vec<Elem>,
    used: &mut Vec<bool>,
    limit: usize,
    found: &mut Vec<Vec<Elem>>,
) {
    if found.len() >= limit {
        return;
    }
    if next == a.len() {
        found.push(map.clone());
        return;
    }
    for image in b.elements() {
        if used[image] || sig_a[next] != sig_b[image] {
            continue;
        }
        let consistent = (0..next).all(|prev| {
            a.leq(prev, next) == b.leq(map[prev], image)
                && a.leq(next, prev) == b.leq(image, map[prev])
        });
        if !consistent {
            continue;
        }
        map[next] = image;
        used[image] = true;
        extend(a, b, sig_a, sig_b, next + 1, map, used, limit, found);
        used[image] = false;
        map[next] = usize::MAX;
    }
}
