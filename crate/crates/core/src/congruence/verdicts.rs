use serde::{Deserialize, Serialize};

use super::{
    all_congruences_oracle, closure, congruence_from_filter, filter_from_congruence, require_normal_distributive,
    CongruenceError, ModalFilter, ORACLE_BOUND,
};
use crate::algebra::{AlgebraMorphism, NablaAlgebra};
use crate::lattice::Elem;
use crate::report::Report;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SiVerdict {
    pub holds: bool,
    pub witness: Option<Elem>,
}

fn is_left(alg: &NablaAlgebra) -> bool {
    alg.elements().all(|a| alg.leq(alg.nabla(a), a))
}

fn is_right(alg: &NablaAlgebra) -> bool {
    alg.elements().all(|a| alg.leq(a, alg.nabla(a)))
}

fn proper(alg: &NablaAlgebra) -> impl Iterator<Item = Elem> + '_ {
    alg.elements().filter(move |&a| a != alg.top())
}

/// Some power `op^k y` with `k ≤ |A|` satisfies `test`.
fn some_power(alg: &NablaAlgebra, y: Elem, op: impl Fn(Elem) -> Elem, test: impl Fn(Elem) -> bool) -> bool {
    let mut z = y;
    for _ in 0..=alg.len() {
        if test(z) {
            return true;
        }
        z = op(z);
    }
    false
}

type UnaryOp<'a> = Box<dyn Fn(Elem) -> Elem + 'a>;

/// Power criteria on left (∇-powers) and right (□-powers) algebras.
fn power_criteria(alg: &NablaAlgebra) -> Vec<(&'static str, UnaryOp<'_>)> {
    let mut out: Vec<(&'static str, UnaryOp<'_>)> = Vec::new();
    if is_left(alg) {
        out.push(("∇", Box::new(|a| alg.nabla(a))));
    }
    if is_right(alg) {
        out.push(("□", Box::new(|a| alg.boxed(a))));
    }
    out
}

/// Subdirectly irreducible iff some `x ≠ 1` lies in `m({y})` for every
/// `y ≠ 1`. The witness is the largest-index such `x`.
pub fn is_subdirectly_irreducible(alg: &NablaAlgebra) -> Result<SiVerdict, CongruenceError> {
    require_normal_distributive(alg)?;
    if alg.is_trivial() {
        return Err(CongruenceError::Trivial);
    }
    let generated: Vec<ModalFilter> = proper(alg).map(|y| closure(alg, [y])).collect();
    let witness = proper(alg).filter(|&x| generated.iter().all(|m| m.contains(x))).last();
    let verdict = SiVerdict { holds: witness.is_some(), witness };

    for (name, op) in power_criteria(alg) {
        let by_powers =
            proper(alg).any(|x| proper(alg).all(|y| some_power(alg, y, &op, |z| alg.leq(z, x))));
        if by_powers != verdict.holds {
            return Err(CongruenceError::Invariant(format!("{name}-power criterion disagrees on irreducibility")));
        }
    }
    if alg.len() <= ORACLE_BOUND {
        let nontrivial: Vec<_> = all_congruences_oracle(alg)?.into_iter().filter(|c| !c.is_identity()).collect();
        let monolith = nontrivial.iter().any(|c| nontrivial.iter().all(|d| c.is_finer(d)));
        if monolith != verdict.holds {
            return Err(CongruenceError::Invariant("congruence oracle disagrees on irreducibility".into()));
        }
    }
    Ok(verdict)
}

/// Simple iff `0 ∈ m({x})` for every `x ≠ 1`. A one-element algebra is not
/// simple.
pub fn is_simple(alg: &NablaAlgebra) -> Result<bool, CongruenceError> {
    require_normal_distributive(alg)?;
    if alg.is_trivial() {
        return Ok(false);
    }
    let holds = proper(alg).all(|x| closure(alg, [x]).contains(alg.bot()));

    for (name, op) in power_criteria(alg) {
        let by_powers = proper(alg).all(|x| some_power(alg, x, &op, |z| z == alg.bot()));
        if by_powers != holds {
            return Err(CongruenceError::Invariant(format!("{name}-power criterion disagrees on simplicity")));
        }
    }
    if alg.len() <= ORACLE_BOUND && (all_congruences_oracle(alg)?.len() == 2) != holds {
        return Err(CongruenceError::Invariant("congruence oracle disagrees on simplicity".into()));
    }
    Ok(holds)
}

pub const MEET_CLAUSE: &str = "x→y ≤ (x∧z)→(y∧z)";
pub const JOIN_CLAUSE: &str = "x→y ≤ (x∨z)→(y∨z)";
pub const NABLA_CLAUSE: &str = "∇(x→y) ≤ ∇x→∇y";
pub const PREFIX_CLAUSE: &str = "□(x→y) ≤ (z→x)→(z→y)";
pub const SUFFIX_CLAUSE: &str = "□(x→y) ≤ (y→z)→(x→z)";
pub const HEYTING_PREFIX_CLAUSE: &str = "x→y ≤ (z⊃x)→(z⊃y)";
pub const HEYTING_SUFFIX_CLAUSE: &str = "x→y ≤ (y⊃z)→(x⊃z)";

/// Scans all triples. The two ⊃ clauses run only when the algebra has ⊃,
/// recorded in the `heyting` flag.
pub fn check_internal_cong_inequalities(alg: &NablaAlgebra) -> Result<Report, CongruenceError> {
    require_normal_distributive(alg)?;
    let mut r = Report::new();
    r.set_flag("heyting", alg.heyting_table().is_some());
    let (ar, le) = (|a, b| alg.arrow(a, b), |a, b| alg.leq(a, b));
    for x in alg.elements() {
        for y in alg.elements() {
            let xy = ar(x, y);
            let bxy = alg.boxed(xy);
            r.require(le(alg.nabla(xy), ar(alg.nabla(x), alg.nabla(y))), NABLA_CLAUSE, || vec![x, y]);
            for z in alg.elements() {
                let w = || vec![x, y, z];
                r.require(le(xy, ar(alg.meet(x, z), alg.meet(y, z))), MEET_CLAUSE, w);
                r.require(le(xy, ar(alg.join(x, z), alg.join(y, z))), JOIN_CLAUSE, w);
                r.require(le(bxy, ar(ar(z, x), ar(z, y))), PREFIX_CLAUSE, w);
                r.require(le(bxy, ar(ar(y, z), ar(x, z))), SUFFIX_CLAUSE, w);
                if let Some(h) = alg.heyting_table() {
                    r.require(le(xy, ar(h.get(z, x), h.get(z, y))), HEYTING_PREFIX_CLAUSE, w);
                    r.require(le(xy, ar(h.get(y, z), h.get(x, z))), HEYTING_SUFFIX_CLAUSE, w);
                }
            }
        }
    }
    Ok(r)
}

pub const EXTENSION_CLAUSE: &str = "extension restricts to θ";
pub const CONSERVATIVE_CLAUSE: &str = "m_B(F) ∩ A = F";

/// For each congruence θ of the source of `inclusion`, extends it to the
/// target by `α_B(m_B(β(θ)))` and checks the restriction. Witnesses are θ's
/// block vectors.
pub fn check_congruence_extension(inclusion: &AlgebraMorphism) -> Result<Report, CongruenceError> {
    let (sub, big) = (inclusion.source(), inclusion.target());
    let checked = inclusion.check();
    if !checked.ok {
        return Err(CongruenceError::NotEmbedding(format!("{:?}", checked.violations)));
    }
    if !inclusion.is_injective() {
        return Err(CongruenceError::NotEmbedding("map is not injective".into()));
    }
    for alg in [sub, big] {
        require_normal_distributive(alg)?;
        if alg.len() > ORACLE_BOUND {
            return Err(CongruenceError::TooLarge { size: alg.len(), max: ORACLE_BOUND });
        }
    }
    let mut r = Report::new();
    for theta in all_congruences_oracle(sub)? {
        let f = filter_from_congruence(sub, &theta)?;
        let g = closure(big, f.members().iter().map(|&a| inclusion.apply(a)));
        let conservative = sub.elements().all(|a| g.contains(inclusion.apply(a)) == f.contains(a));
        r.require(conservative, CONSERVATIVE_CLAUSE, || theta.blocks().to_vec());
        let phi = congruence_from_filter(big, &g)?;
        r.require(phi.restrict(inclusion.map()) == theta, EXTENSION_CLAUSE, || theta.blocks().to_vec());
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::find_embeddings;
    use crate::gallery::{gen_heyting, gen_xn};
    use crate::lattice::{boolean, chain};

    #[test]
    fn si_examples() {
        assert_eq!(is_subdirectly_irreducible(&gen_xn(1).unwrap()).unwrap(), SiVerdict { holds: true, witness: Some(1) });
        let h3 = gen_heyting(&chain(3)).unwrap();
        assert_eq!(is_subdirectly_irreducible(&h3).unwrap(), SiVerdict { holds: true, witness: Some(1) });
        let b4 = gen_heyting(&boolean(2)).unwrap();
        assert_eq!(is_subdirectly_irreducible(&b4).unwrap(), SiVerdict { holds: false, witness: None });
        let one = gen_heyting(&chain(1)).unwrap();
        assert_eq!(is_subdirectly_irreducible(&one), Err(CongruenceError::Trivial));
    }

    #[test]
    fn simple_examples() {
        assert!(is_simple(&gen_xn(1).unwrap()).unwrap());
        assert!(!is_simple(&gen_heyting(&chain(3)).unwrap()).unwrap());
        assert!(is_simple(&gen_heyting(&chain(2)).unwrap()).unwrap());
        assert!(!is_simple(&gen_heyting(&chain(1)).unwrap()).unwrap());
        for n in 1..=3 {
            assert!(is_simple(&gen_xn(n).unwrap()).unwrap());
        }
    }

    #[test]
    fn inequalities_hold_on_examples() {
        for alg in [gen_xn(1).unwrap(), gen_heyting(&chain(3)).unwrap(), gen_heyting(&boolean(2)).unwrap()] {
            let r = check_internal_cong_inequalities(&alg).unwrap();
            assert!(r.ok, "{r:?}");
            assert_eq!(r.flag("heyting"), Some(true));
        }
    }

    #[test]
    fn extension_examples() {
        let b2 = Arc::new(gen_heyting(&chain(2)).unwrap());
        let h3 = Arc::new(gen_heyting(&chain(3)).unwrap());
        let f = find_embeddings(&b2, &h3, true).pop().unwrap();
        assert_eq!(f.map(), &[0, 2]);
        assert!(check_congruence_extension(&f).unwrap().ok);
        let total_image = closure(&h3, [0]);
        assert_eq!(total_image.len(), 3);
        assert!(check_congruence_extension(&AlgebraMorphism::identity(h3)).unwrap().ok);
    }

    #[test]
    fn extension_rejects_non_embeddings() {
        let h3 = Arc::new(gen_heyting(&chain(3)).unwrap());
        let q = AlgebraMorphism::new(h3.clone(), h3, vec![0, 2, 2], true).unwrap();
        assert!(matches!(check_congruence_extension(&q), Err(CongruenceError::NotEmbedding(_))));
    }
}
