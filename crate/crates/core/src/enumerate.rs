//! Exhaustive catalog of small ∇-algebras.

use crate::algebra::{classify, derive_arrow, FlagSet, NablaAlgebra};
use crate::gallery::GalleryError;
use crate::lattice::{all_lattices, Elem, FiniteLattice};

pub const MAX_ENUM_SIZE: usize = 6;

/// Every join-preserving ∇ with `∇0 = 0` on `lat`, in odometer order of its
/// values on the join-irreducibles.
pub fn join_endomorphisms(lat: &FiniteLattice) -> Vec<Vec<Elem>> {
    let ji = lat.join_irreducibles();
    let n = lat.len();
    let mut out = Vec::new();
    let mut values = vec![0usize; ji.len()];
    loop {
        let nabla: Vec<Elem> = lat
            .elements()
            .map(|a| lat.join_all(ji.iter().zip(&values).filter(|(&j, _)| lat.leq(j, a)).map(|(_, &v)| v)))
            .collect();
        let preserves = lat.elements().all(|a| {
            lat.elements().all(|b| nabla[lat.join(a, b)] == lat.join(nabla[a], nabla[b]))
        });
        if preserves && ji.iter().zip(&values).all(|(&j, &v)| nabla[j] == v) {
            out.push(nabla);
        }
        // Advance the odometer; the leftmost digit is the most significant.
        let Some(pos) = (0..values.len()).rev().find(|&i| values[i] + 1 < n) else { break };
        values[pos] += 1;
        values[pos + 1..].iter_mut().for_each(|v| *v = 0);
    }
    out
}

/// All ∇-algebras on lattices with at most `max_n` elements whose profile
/// contains `filter`. Deterministic: lattices in catalog order, then ∇ tables.
pub fn enumerate_algebras(max_n: usize, filter: FlagSet) -> Result<Vec<NablaAlgebra>, GalleryError> {
    if !(1..=MAX_ENUM_SIZE).contains(&max_n) {
        return Err(GalleryError::OutOfRange { what: "max_n", value: max_n, min: 1, max: MAX_ENUM_SIZE });
    }
    let mut out = Vec::new();
    for lat in all_lattices(max_n) {
        for nabla in join_endomorphisms(&lat) {
            let Some(arrow) = derive_arrow(&lat, &nabla) else { continue };
            let alg = NablaAlgebra::build(lat.clone(), nabla, arrow).expect("derived arrow validates");
            if filter.is_subset(classify(&alg).flags) {
                out.push(alg);
            }
        }
    }
    Ok(out)
}
