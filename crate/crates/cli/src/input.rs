use std::io::Read;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use nabla_core::algebra::{NablaAlgebra, StrongAlgebraCandidate};
use nabla_core::json::{Document, Endpoint};
use nabla_core::kripke::KripkeFrame;
use nabla_core::lattice::{boolean, chain, diamond, pentagon, FiniteLattice};

/// A parsed document and the directory its relative paths resolve against.
pub struct Loaded {
    pub doc: Document,
    pub base: PathBuf,
}

pub fn load(path: &str) -> Result<Loaded> {
    let (text, base) = if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).context("reading stdin")?;
        (s, std::env::current_dir()?)
    } else {
        let p = Path::new(path);
        let s = std::fs::read_to_string(p).with_context(|| format!("reading {path}"))?;
        (s, p.parent().map(Path::to_path_buf).unwrap_or_default())
    };
    let doc = Document::parse(&text).with_context(|| format!("parsing {path}"))?;
    Ok(Loaded { doc, base })
}

pub fn resolve(endpoint: &Endpoint, base: &Path) -> Result<Loaded> {
    match endpoint {
        Endpoint::Inline(doc) => Ok(Loaded { doc: (**doc).clone(), base: base.to_path_buf() }),
        Endpoint::Path(p) => {
            let full = base.join(p);
            load(full.to_str().context("non-UTF-8 path")?)
        }
    }
}

pub fn algebra(doc: &Document) -> Result<Arc<NablaAlgebra>> {
    match doc {
        Document::NablaAlgebra(d) => Ok(Arc::new(d.to_algebra()?)),
        other => bail!("expected a nabla-algebra, found {}", other.kind()),
    }
}

pub fn frame(doc: &Document) -> Result<Arc<KripkeFrame>> {
    match doc {
        Document::KripkeFrame(d) => Ok(Arc::new(d.to_frame()?)),
        other => bail!("expected a kripke-frame, found {}", other.kind()),
    }
}

pub fn candidate(doc: &Document) -> Result<StrongAlgebraCandidate> {
    match doc {
        Document::StrongCandidate(d) => Ok(d.to_candidate()?),
        other => bail!("expected a strong-candidate, found {}", other.kind()),
    }
}

/// `chain:N`, `boolean:K`, `pentagon`, `diamond`, or a path to a lattice document.
pub fn lattice_arg(arg: &str) -> Result<FiniteLattice> {
    let number = |s: &str| s.parse::<usize>().with_context(|| format!("bad size in {arg}"));
    let lat = match arg.split_once(':') {
        Some(("chain", n)) => {
            let n = number(n)?;
            if n == 0 {
                bail!("a chain needs at least one element");
            }
            chain(n)
        }
        Some(("boolean", k)) => {
            let k = number(k)?;
            if k > 6 {
                bail!("boolean:{k} is too large; at most boolean:6");
            }
            boolean(k as u32)
        }
        _ if arg == "pentagon" => pentagon(),
        _ if arg == "diamond" => diamond(),
        _ => match load(arg)?.doc {
            Document::Lattice(d) => d.to_lattice()?,
            other => bail!("expected a lattice, found {}", other.kind()),
        },
    };
    Ok(lat)
}
