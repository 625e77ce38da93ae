//! Generators for the standard example algebras and a named fixture list.

use thiserror::Error;

use crate::algebra::{
    classify, derive_arrow, AlgebraError, NablaAlgebra, Property, StrongAlgebraCandidate,
};
use crate::lattice::{boolean, chain, pentagon, BinaryTable, Elem, FiniteLattice};

pub const MAX_XN: usize = 6;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GalleryError {
    #[error("{what} = {value} is out of range {min}..={max}")]
    OutOfRange { what: &'static str, value: usize, min: usize, max: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Opens of `X_n = {1..n} ∪ {ω}`: every subset of `{1..n}` plus `X_n`.
/// Points `1..n` are bits `0..n-1`, ω is bit `n`. Sorted by (size, members).
pub fn xn_opens(n: usize) -> Vec<u64> {
    let mut opens: Vec<u64> = (0..1u64 << n).collect();
    opens.push((1 << (n + 1)) - 1);
    let members = |m: u64| (0..=n).filter(move |i| m >> i & 1 == 1);
    opens.sort_by(|&a, &b| a.count_ones().cmp(&b.count_ones()).then_with(|| members(a).cmp(members(b))));
    opens
}

/// The algebra of opens of `X_n` with ∇ the preimage of the shift
/// `x ↦ x+1`, `n ↦ ω`, `ω ↦ ω`. Simple, normal, Heyting.
pub fn gen_xn(n: usize) -> Result<NablaAlgebra, GalleryError> {
    if !(1..=MAX_XN).contains(&n) {
        return Err(GalleryError::OutOfRange { what: "n", value: n, min: 1, max: MAX_XN });
    }
    let opens = xn_opens(n);
    let index = |m: u64| opens.iter().position(|&o| o == m).expect("preimage of an open is open");
    let lat = FiniteLattice::from_fn(opens.len(), |a, b| opens[a] & !opens[b] == 0).map_err(AlgebraError::from)?;
    // With 0-based points the shift is j ↦ min(j+1, n).
    let preimage = |u: u64| (0..=n).filter(|&j| u >> (j + 1).min(n) & 1 == 1).fold(0u64, |m, j| m | 1 << j);
    let nabla: Vec<Elem> = opens.iter().map(|&u| index(preimage(u))).collect();
    let arrow = derive_arrow(&lat, &nabla)
        .ok_or_else(|| AlgebraError::Invariant("shift preimage has no arrow".into()))?;
    let alg = NablaAlgebra::build(lat, nabla, arrow)?;

    let profile = classify(&alg);
    for p in [Property::N, Property::H, Property::D] {
        if !profile.has(p) {
            return Err(AlgebraError::Invariant(format!("X_{n} algebra lacks {p}")).into());
        }
    }
    if let Some(u) = alg.elements().find(|&u| u != alg.top() && alg.nabla_pow(u, n) != alg.bot()) {
        return Err(AlgebraError::Invariant(format!("∇^{n} of {u} is not empty")).into());
    }
    if !crate::congruence::is_simple(&alg).map_err(|e| AlgebraError::Invariant(e.to_string()))? {
        return Err(AlgebraError::Invariant(format!("X_{n} algebra is not simple")).into());
    }
    Ok(alg)
}

/// `∇a = 0`, `a → b = 1`.
pub fn gen_trivial(lat: &FiniteLattice) -> NablaAlgebra {
    let n = lat.len();
    NablaAlgebra::build(lat.clone(), vec![lat.bot(); n], BinaryTable::constant(n, lat.top()))
        .expect("trivial ∇-algebras always validate")
}

/// `∇a = a`, `→` the Heyting implication.
pub fn gen_heyting(lat: &FiniteLattice) -> Result<NablaAlgebra, AlgebraError> {
    let h = lat.heyting_table().ok_or(AlgebraError::NotDistributive)?;
    NablaAlgebra::build(lat.clone(), lat.elements().collect(), h)
}

/// On the 3-chain of upsets of `a < b`, with `f(a) = f(b) = a`:
/// `U → V = f⁻¹U ⊃ f⁻¹V`. An implication that no ∇ induces.
pub fn gen_cex3() -> StrongAlgebraCandidate {
    let lat = chain(3);
    let h = lat.heyting_table().expect("chains are Heyting");
    // Upsets ∅, {b}, {a,b}; nothing maps to b, so f⁻¹{b} = ∅.
    let preimage = [0, 0, 2];
    let arrow = BinaryTable::from_fn(3, |u, v| h.get(preimage[u], preimage[v]));
    StrongAlgebraCandidate::new(lat, arrow).expect("shape is right")
}

/// A named gallery payload.
#[derive(Debug, Clone)]
pub enum Payload {
    Lattice(FiniteLattice),
    Algebra(NablaAlgebra),
    Frame(crate::kripke::KripkeFrame),
    StrongCandidate(StrongAlgebraCandidate),
}

#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: &'static str,
    pub payload: Payload,
}

/// Every named fixture. Each one passes its validator.
pub fn fixtures() -> Vec<Fixture> {
    use crate::kripke::KripkeFrame;
    let alg = |name, a: NablaAlgebra| Fixture { name, payload: Payload::Algebra(a) };
    let frame = |name, leq: Vec<Vec<bool>>, r: Vec<Vec<bool>>| Fixture {
        name,
        payload: Payload::Frame(KripkeFrame::new(&leq, &r).expect("gallery frames validate")),
    };
    let mut out = vec![
        Fixture { name: "c3", payload: Payload::Lattice(chain(3)) },
        Fixture { name: "n5", payload: Payload::Lattice(pentagon()) },
        alg("x1", gen_xn(1).expect("X_1")),
        alg("x2", gen_xn(2).expect("X_2")),
        alg("x3", gen_xn(3).expect("X_3")),
        alg("b2", gen_heyting(&chain(2)).expect("2-chain")),
        alg("h3", gen_heyting(&chain(3)).expect("3-chain")),
        alg("h4", gen_heyting(&chain(4)).expect("4-chain")),
        alg("b4", gen_heyting(&boolean(2)).expect("boolean square")),
        alg("b8", gen_heyting(&boolean(3)).expect("boolean cube")),
        alg("trivial-c2", gen_trivial(&chain(2))),
        alg("trivial-c3", gen_trivial(&chain(3))),
        alg("trivial-n5", gen_trivial(&pentagon())),
        Fixture { name: "cex3", payload: Payload::StrongCandidate(gen_cex3()) },
    ];
    let t = true;
    let f = false;
    out.push(frame("point", vec![vec![t]], vec![vec![t]]));
    out.push(frame("chain2", vec![vec![t, t], vec![f, t]], vec![vec![t, t], vec![f, t]]));
    out.push(frame("chain2-full", vec![vec![t, t], vec![f, t]], vec![vec![t, t], vec![t, t]]));
    out.push(frame("x1-frame", vec![vec![t, t], vec![f, t]], vec![vec![t, t], vec![f, f]]));
    out.push(frame(
        "grid",
        vec![vec![t, t, t, t], vec![f, t, f, t], vec![f, f, t, t], vec![f, f, f, t]],
        vec![vec![t, t, t, t], vec![f, t, f, t], vec![f, f, t, t], vec![f, f, f, t]],
    ));
    out
}

/// The gallery algebras only.
pub fn algebra_fixtures() -> Vec<(&'static str, NablaAlgebra)> {
    fixtures()
        .into_iter()
        .filter_map(|f| match f.payload {
            Payload::Algebra(a) => Some((f.name, a)),
            _ => None,
        })
        .collect()
}
