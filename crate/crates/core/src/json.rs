//! JSON documents for every structure the tools read or write. Each document
//! carries a `"kind"` tag; tables are stored as nested arrays in index order.

use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::algebra::{AlgebraError, FlagSet, NablaAlgebra, StrongAlgebraCandidate};
use crate::kripke::{KripkeError, KripkeFrame};
use crate::lattice::{BinaryTable, Elem, FiniteLattice, LatticeError};

#[derive(Debug, Error)]
pub enum DocError {
    #[error("{0}")]
    Shape(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Kripke(#[from] KripkeError),
    #[error("malformed JSON")]
    Json(#[from] serde_json::Error),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename = "lattice")]
pub struct LatticeDoc {
    pub n: usize,
    pub leq: Vec<Vec<bool>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename = "nabla-algebra")]
pub struct AlgebraDoc {
    pub lattice: LatticeDoc,
    pub nabla: Vec<Elem>,
    pub arrow: Vec<Vec<Elem>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename = "kripke-frame")]
pub struct FrameDoc {
    pub n: usize,
    pub leq: Vec<Vec<bool>>,
    pub r: Vec<Vec<bool>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename = "strong-candidate")]
pub struct StrongDoc {
    pub lattice: LatticeDoc,
    pub arrow: Vec<Vec<Elem>>,
}

/// An embedded document or a path to one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Endpoint {
    Path(String),
    Inline(Box<Document>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename = "morphism")]
pub struct MorphismDoc {
    pub map: Vec<Elem>,
    pub source: Endpoint,
    pub target: Endpoint,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub heyting: Option<bool>,
}

/// Two embeddings `f1: a0 → a1`, `f2: a0 → a2` for amalgamation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename = "span")]
pub struct SpanDoc {
    pub a0: Endpoint,
    pub a1: Endpoint,
    pub a2: Endpoint,
    pub f1: Vec<Elem>,
    pub f2: Vec<Elem>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flags: Option<FlagSet>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Document {
    Lattice(LatticeDoc),
    NablaAlgebra(AlgebraDoc),
    KripkeFrame(FrameDoc),
    Morphism(MorphismDoc),
    StrongCandidate(StrongDoc),
    Span(SpanDoc),
}

impl Serialize for Document {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Document::Lattice(d) => d.serialize(s),
            Document::NablaAlgebra(d) => d.serialize(s),
            Document::KripkeFrame(d) => d.serialize(s),
            Document::Morphism(d) => d.serialize(s),
            Document::StrongCandidate(d) => d.serialize(s),
            Document::Span(d) => d.serialize(s),
        }
    }
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Lattice(_) => "lattice",
            Document::NablaAlgebra(_) => "nabla-algebra",
            Document::KripkeFrame(_) => "kripke-frame",
            Document::Morphism(_) => "morphism",
            Document::StrongCandidate(_) => "strong-candidate",
            Document::Span(_) => "span",
        }
    }

    pub fn parse(text: &str) -> Result<Self, DocError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("documents always serialize")
    }
}

fn check_square<T>(what: &str, n: usize, rows: &[Vec<T>]) -> Result<(), DocError> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(DocError::Shape(format!("{what} must be a {n}×{n} table")));
    }
    Ok(())
}

fn table(n: usize, rows: &[Vec<Elem>]) -> Result<BinaryTable, DocError> {
    check_square("arrow", n, rows)?;
    BinaryTable::from_rows(n, rows).ok_or_else(|| DocError::Shape("arrow must be square".into()))
}

impl From<&FiniteLattice> for LatticeDoc {
    fn from(lat: &FiniteLattice) -> Self {
        LatticeDoc { n: lat.len(), leq: lat.order_matrix() }
    }
}

impl LatticeDoc {
    pub fn to_lattice(&self) -> Result<FiniteLattice, DocError> {
        check_square("leq", self.n, &self.leq)?;
        Ok(FiniteLattice::new(&self.leq)?)
    }
}

impl From<&NablaAlgebra> for AlgebraDoc {
    fn from(alg: &NablaAlgebra) -> Self {
        AlgebraDoc {
            lattice: alg.lat().into(),
            nabla: alg.nabla_table().to_vec(),
            arrow: alg.arrow_table().rows(),
        }
    }
}

impl AlgebraDoc {
    pub fn to_algebra(&self) -> Result<NablaAlgebra, DocError> {
        let lat = self.lattice.to_lattice()?;
        let arrow = table(lat.len(), &self.arrow)?;
        Ok(NablaAlgebra::build(lat, self.nabla.clone(), arrow)?)
    }
}

impl From<&KripkeFrame> for FrameDoc {
    fn from(k: &KripkeFrame) -> Self {
        FrameDoc { n: k.len(), leq: k.order_matrix(), r: k.relation_matrix() }
    }
}

impl FrameDoc {
    pub fn to_frame(&self) -> Result<KripkeFrame, DocError> {
        check_square("leq", self.n, &self.leq)?;
        check_square("r", self.n, &self.r)?;
        Ok(KripkeFrame::new(&self.leq, &self.r)?)
    }
}

impl From<&StrongAlgebraCandidate> for StrongDoc {
    fn from(s: &StrongAlgebraCandidate) -> Self {
        StrongDoc { lattice: (&s.lat).into(), arrow: s.arrow.rows() }
    }
}

impl StrongDoc {
    pub fn to_candidate(&self) -> Result<StrongAlgebraCandidate, DocError> {
        let lat = self.lattice.to_lattice()?;
        let arrow = table(lat.len(), &self.arrow)?;
        Ok(StrongAlgebraCandidate::new(lat, arrow)?)
    }
}

impl From<&NablaAlgebra> for Document {
    fn from(alg: &NablaAlgebra) -> Self {
        Document::NablaAlgebra(alg.into())
    }
}

impl From<&KripkeFrame> for Document {
    fn from(k: &KripkeFrame) -> Self {
        Document::KripkeFrame(k.into())
    }
}

impl From<&FiniteLattice> for Document {
    fn from(l: &FiniteLattice) -> Self {
        Document::Lattice(l.into())
    }
}

impl From<&StrongAlgebraCandidate> for Document {
    fn from(s: &StrongAlgebraCandidate) -> Self {
        Document::StrongCandidate(s.into())
    }
}
