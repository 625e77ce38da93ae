use std::sync::Arc;

use anyhow::{bail, Result};
use nabla_core::algebra::{
    check_equational_axioms, check_implication_axioms, classify, nabla_from_strong, AlgebraError, AlgebraMorphism,
    FlagSet, NablaAlgebra,
};
use nabla_core::completion::dm_complete;
use nabla_core::congruence::{
    all_congruences_oracle, all_modal_filters, filter_from_congruence, is_simple, is_subdirectly_irreducible,
};
use nabla_core::enumerate::enumerate_algebras;
use nabla_core::gallery::{gen_cex3, gen_heyting, gen_trivial, gen_xn};
use nabla_core::json::{AlgebraDoc, Document, Endpoint, FrameDoc, MorphismDoc, SpanDoc};
use nabla_core::kripke::{
    amalgamate_algebras, frame_profile, prime_frame, upset_algebra, FrameMorphism, KripkeError, KripkeFrame,
};
use nabla_core::lattice::{Elem, LatticeError};
use nabla_core::report::Report;
use serde_json::{json, Value};

use crate::input::{self, Loaded};

/// JSON for stdout, the verdict behind the exit code, and a line for `--verbose`.
pub struct Outcome {
    pub value: Value,
    pub pass: bool,
    pub summary: String,
}

impl Outcome {
    fn pass(value: Value, summary: impl Into<String>) -> Self {
        Outcome { value, pass: true, summary: summary.into() }
    }

    fn verdict(value: Value, pass: bool, summary: impl Into<String>) -> Self {
        Outcome { value, pass, summary: summary.into() }
    }

    fn report(report: Report, what: &str) -> Self {
        let summary = if report.ok {
            format!("{what}: ok")
        } else {
            format!("{what}: {} violated", report.axioms().join(", "))
        };
        let pass = report.ok;
        Outcome { value: serde_json::to_value(report).expect("reports serialize"), pass, summary }
    }
}

fn lattice_failure(e: &LatticeError) -> (String, Vec<Elem>) {
    match e {
        LatticeError::NotPartialOrder(v) => ("partial order".into(), v.witness()),
        LatticeError::NoMeet { a, b } => ("meets exist".into(), vec![*a, *b]),
        LatticeError::NoJoin { a, b } => ("joins exist".into(), vec![*a, *b]),
        LatticeError::NoBounds => ("bounded".into(), Vec::new()),
        LatticeError::LawViolation { law, witness } => ((*law).into(), witness.clone()),
        other => (other.to_string(), Vec::new()),
    }
}

fn frame_failure(e: &KripkeError) -> Option<(String, Vec<Elem>)> {
    match e {
        KripkeError::NotPartialOrder(v) => Some(("partial order".into(), v.witness())),
        KripkeError::NotCompatible { witness } => Some(("≤∘R∘≤ ⊆ R".into(), witness.to_vec())),
        _ => None,
    }
}

pub fn validate(path: &str) -> Result<Outcome> {
    let Loaded { doc, base } = input::load(path)?;
    let mut r = Report::new();
    match &doc {
        Document::Lattice(d) => match d.to_lattice() {
            Ok(_) => {}
            Err(nabla_core::json::DocError::Lattice(e)) => {
                let (axiom, w) = lattice_failure(&e);
                r.fail(&axiom, w);
            }
            Err(e) => return Err(e.into()),
        },
        Document::NablaAlgebra(d) => {
            let lat = match d.lattice.to_lattice() {
                Ok(lat) => lat,
                Err(nabla_core::json::DocError::Lattice(e)) => {
                    let (axiom, w) = lattice_failure(&e);
                    r.fail(&axiom, w);
                    return Ok(Outcome::report(r, "nabla-algebra"));
                }
                Err(e) => return Err(e.into()),
            };
            let arrow = nabla_core::lattice::BinaryTable::from_rows(lat.len(), &d.arrow);
            let Some(arrow) = arrow.filter(|_| d.arrow.iter().all(|row| row.len() == lat.len())) else {
                bail!("arrow must be a {n}×{n} table", n = lat.len());
            };
            r.merge(check_equational_axioms(&lat, &d.nabla, &arrow)?);
            match NablaAlgebra::build(lat, d.nabla.clone(), arrow) {
                Ok(_) => {}
                Err(AlgebraError::AdjunctionFailure { a, b, c, .. }) => {
                    r.fail("∇c∧a ≤ b ⇔ c ≤ a→b", vec![a, b, c]);
                }
                Err(AlgebraError::Invariant(msg)) => r.fail(&msg, Vec::new()),
                Err(e) => return Err(e.into()),
            }
        }
        Document::KripkeFrame(d) => match d.to_frame() {
            Ok(k) => r.set_flag("normal", k.is_normal()),
            Err(nabla_core::json::DocError::Kripke(e)) => match frame_failure(&e) {
                Some((axiom, w)) => r.fail(&axiom, w),
                None => return Err(e.into()),
            },
            Err(e) => return Err(e.into()),
        },
        Document::StrongCandidate(_) => r = check_implication_axioms(&input::candidate(&doc)?),
        Document::Morphism(m) => return check_morphism_doc(m, &base),
        Document::Span(_) => bail!("spans are checked by `amalgamate`"),
    }
    Ok(Outcome::report(r, doc.kind()))
}

pub fn classify_cmd(path: &str) -> Result<Outcome> {
    let doc = input::load(path)?.doc;
    match &doc {
        Document::NablaAlgebra(_) => {
            let p = classify(&*input::algebra(&doc)?);
            Ok(Outcome::pass(serde_json::to_value(&p)?, format!("flags {}", p.flags)))
        }
        Document::KripkeFrame(_) => {
            let p = frame_profile(&*input::frame(&doc)?);
            Ok(Outcome::pass(serde_json::to_value(&p)?, format!("frame flags {}", p.flags)))
        }
        Document::Lattice(d) => {
            let l = d.to_lattice()?;
            let v = json!({"distributive": l.is_distributive(), "heyting": l.heyting_table().is_some()});
            Ok(Outcome::pass(v, format!("distributive: {}", l.is_distributive())))
        }
        Document::StrongCandidate(_) => {
            let s = input::candidate(&doc)?;
            let implication = check_implication_axioms(&s);
            let nabla = nabla_from_strong(&s)?;
            let pass = implication.ok;
            let v = json!({"implication": implication, "nabla": nabla});
            Ok(Outcome::verdict(v, pass, "strong candidate"))
        }
        other => bail!("cannot classify a {}", other.kind()),
    }
}

pub fn modal_filters(path: &str) -> Result<Outcome> {
    let alg = input::algebra(&input::load(path)?.doc)?;
    let filters = all_modal_filters(&alg)?;
    let n = filters.len();
    Ok(Outcome::pass(serde_json::to_value(filters)?, format!("{n} modal filters")))
}

pub fn congruences(path: &str) -> Result<Outcome> {
    let alg = input::algebra(&input::load(path)?.doc)?;
    let all = all_congruences_oracle(&alg)?;
    let filters: Option<Vec<_>> = all.iter().map(|c| filter_from_congruence(&alg, c).ok()).collect();
    let n = all.len();
    let v = json!({"congruences": all, "filters": filters});
    Ok(Outcome::pass(v, format!("{n} congruences")))
}

pub fn si(path: &str) -> Result<Outcome> {
    let alg = input::algebra(&input::load(path)?.doc)?;
    let v = is_subdirectly_irreducible(&alg)?;
    Ok(Outcome::verdict(serde_json::to_value(v)?, v.holds, format!("subdirectly irreducible: {}", v.holds)))
}

pub fn simple(path: &str) -> Result<Outcome> {
    let alg = input::algebra(&input::load(path)?.doc)?;
    let holds = is_simple(&alg)?;
    Ok(Outcome::verdict(json!({ "simple": holds }), holds, format!("simple: {holds}")))
}

pub fn dm_complete_cmd(path: &str) -> Result<Outcome> {
    let alg = input::algebra(&input::load(path)?.doc)?;
    let done = dm_complete(&alg)?;
    let mut v = serde_json::to_value(AlgebraDoc::from(&*done.algebra))?;
    v["embedding"] = json!(done.embedding_table());
    Ok(Outcome::pass(v, format!("completion has {} elements", done.algebra.len())))
}

pub fn prime_frame_cmd(path: &str) -> Result<Outcome> {
    let alg = input::algebra(&input::load(path)?.doc)?;
    let pf = prime_frame(&alg)?;
    let mut v = serde_json::to_value(FrameDoc::from(&*pf.frame))?;
    v["filters"] = serde_json::to_value(&pf.filters)?;
    v["pi"] = json!(pf.frame.pi());
    Ok(Outcome::pass(v, format!("{} prime filters", pf.filters.len())))
}

pub fn upset_algebra_cmd(path: &str) -> Result<Outcome> {
    let k = input::frame(&input::load(path)?.doc)?;
    let up = upset_algebra(&k)?;
    let mut v = serde_json::to_value(AlgebraDoc::from(&*up.algebra))?;
    v["upsets"] = json!(up.family.members());
    Ok(Outcome::pass(v, format!("{} upsets", up.family.len())))
}

fn check_morphism_doc(m: &MorphismDoc, base: &std::path::Path) -> Result<Outcome> {
    let source = input::resolve(&m.source, base)?.doc;
    let target = input::resolve(&m.target, base)?.doc;
    let heyting = m.heyting.unwrap_or(false);
    let report = match (&source, &target) {
        (Document::NablaAlgebra(_), Document::NablaAlgebra(_)) => {
            let f = AlgebraMorphism::new(input::algebra(&source)?, input::algebra(&target)?, m.map.clone(), heyting)?;
            f.check()
        }
        (Document::KripkeFrame(_), Document::KripkeFrame(_)) => {
            FrameMorphism::new(input::frame(&source)?, input::frame(&target)?, m.map.clone(), heyting)?.check()
        }
        (s, t) => bail!("cannot map a {} to a {}", s.kind(), t.kind()),
    };
    Ok(Outcome::report(report, "morphism"))
}

pub fn check_morphism(path: &str) -> Result<Outcome> {
    let Loaded { doc, base } = input::load(path)?;
    match &doc {
        Document::Morphism(m) => check_morphism_doc(m, &base),
        other => bail!("expected a morphism, found {}", other.kind()),
    }
}

fn embedding(source: Arc<NablaAlgebra>, target: Arc<NablaAlgebra>, map: Vec<Elem>) -> Result<AlgebraMorphism> {
    let strict = AlgebraMorphism::new(source.clone(), target.clone(), map.clone(), true)?;
    if strict.check().ok {
        return Ok(strict);
    }
    Ok(AlgebraMorphism::new(source, target, map, false)?)
}

fn morphism_doc(f: &AlgebraMorphism) -> MorphismDoc {
    MorphismDoc {
        map: f.map().to_vec(),
        source: Endpoint::Inline(Box::new(Document::from(&**f.source()))),
        target: Endpoint::Inline(Box::new(Document::from(&**f.target()))),
        heyting: Some(f.preserves_heyting()),
    }
}

pub fn amalgamate(path: &str) -> Result<Outcome> {
    let Loaded { doc, base } = input::load(path)?;
    let Document::Span(SpanDoc { a0, a1, a2, f1, f2, flags }) = &doc else {
        bail!("expected a span, found {}", doc.kind());
    };
    let load = |e: &Endpoint| -> Result<Arc<NablaAlgebra>> { input::algebra(&input::resolve(e, &base)?.doc) };
    let (a0, a1, a2) = (load(a0)?, load(a1)?, load(a2)?);
    let f1 = embedding(a0.clone(), a1, f1.clone())?;
    let f2 = embedding(a0, a2, f2.clone())?;
    let class = flags.unwrap_or(FlagSet::EMPTY);
    let out = amalgamate_algebras(&f1, &f2, class)?;
    let frame = |k: &KripkeFrame| serde_json::to_value(FrameDoc::from(k)).expect("frames serialize");
    let v = json!({
        "B": AlgebraDoc::from(&*out.b),
        "g1": morphism_doc(&out.g1),
        "g2": morphism_doc(&out.g2),
        "intermediate": {
            "frames": {
                "k0": frame(&out.k0),
                "k1": frame(&out.k1),
                "k2": frame(&out.k2),
                "pullback": frame(&out.pullback.frame),
            },
            "worlds": out.pullback.worlds,
            "projections": { "p": out.pullback.p.map(), "q": out.pullback.q.map() },
        },
    });
    Ok(Outcome::pass(v, format!("amalgam has {} elements", out.b.len())))
}

pub enum GenKind {
    Xn(usize),
    Trivial(String),
    Heyting(String),
    Cex3,
}

pub fn generate(kind: &GenKind) -> Result<Outcome> {
    let doc = match kind {
        GenKind::Xn(n) => Document::from(&gen_xn(*n)?),
        GenKind::Trivial(l) => Document::from(&gen_trivial(&input::lattice_arg(l)?)),
        GenKind::Heyting(l) => Document::from(&gen_heyting(&input::lattice_arg(l)?)?),
        GenKind::Cex3 => Document::from(&gen_cex3()),
    };
    let kind = doc.kind();
    Ok(Outcome::pass(serde_json::to_value(doc)?, format!("generated a {kind}")))
}

pub fn enumerate(max_n: usize, flags: Option<&str>) -> Result<Outcome> {
    let filter: FlagSet = match flags {
        Some(s) => s.parse().map_err(|e| anyhow::anyhow!("bad --flags: {e}"))?,
        None => FlagSet::EMPTY,
    };
    let all = enumerate_algebras(max_n, filter)?;
    let docs: Vec<Document> = all.iter().map(Document::from).collect();
    let n = docs.len();
    Ok(Outcome::pass(serde_json::to_value(docs)?, format!("{n} algebras")))
}
