use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::NablaAlgebra;
use crate::lattice::Elem;
use crate::report::Report;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Property {
    D,
    H,
    N,
    R,
    L,
    Fa,
    Fu,
}

impl Property {
    pub const ALL: [Property; 7] =
        [Property::D, Property::H, Property::N, Property::R, Property::L, Property::Fa, Property::Fu];

    pub fn name(self) -> &'static str {
        match self {
            Property::D => "D",
            Property::H => "H",
            Property::N => "N",
            Property::R => "R",
            Property::L => "L",
            Property::Fa => "Fa",
            Property::Fu => "Fu",
        }
    }

    fn bit(self) -> u8 {
        1 << self as u8
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Property {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Property::ALL
            .into_iter()
            .find(|p| p.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| format!("unknown property `{s}` (expected one of D, H, N, R, L, Fa, Fu)"))
    }
}

impl Serialize for Property {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for Property {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// A set of [`Property`] flags.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct FlagSet(u8);

impl FlagSet {
    pub const EMPTY: FlagSet = FlagSet(0);

    pub fn contains(self, p: Property) -> bool {
        self.0 & p.bit() != 0
    }

    pub fn insert(&mut self, p: Property) {
        self.0 |= p.bit();
    }

    pub fn with(mut self, p: Property) -> Self {
        self.insert(p);
        self
    }

    pub fn is_subset(self, other: FlagSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersection(self, other: FlagSet) -> FlagSet {
        FlagSet(self.0 & other.0)
    }

    pub fn iter(self) -> impl Iterator<Item = Property> {
        Property::ALL.into_iter().filter(move |&p| self.contains(p))
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }
}

impl FromIterator<Property> for FlagSet {
    fn from_iter<I: IntoIterator<Item = Property>>(iter: I) -> Self {
        iter.into_iter().fold(FlagSet::EMPTY, FlagSet::with)
    }
}

impl fmt::Display for FlagSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<_> = self.iter().map(Property::name).collect();
        write!(f, "{{{}}}", names.join(","))
    }
}

/// Parses comma or whitespace separated names, e.g. `"N,D"`.
impl FromStr for FlagSet {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(str::parse::<Property>)
            .collect()
    }
}

impl Serialize for FlagSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for FlagSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(Vec::<Property>::deserialize(d)?.into_iter().collect())
    }
}

/// The seven flags of an algebra, with a counterexample for each false one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyProfile {
    pub flags: FlagSet,
    pub witnesses: BTreeMap<Property, Vec<Elem>>,
}

impl PropertyProfile {
    pub fn has(&self, p: Property) -> bool {
        self.flags.contains(p)
    }
}

fn first_pair(alg: &NablaAlgebra, bad: impl Fn(Elem, Elem) -> bool) -> Option<Vec<Elem>> {
    alg.elements().flat_map(|a| alg.elements().map(move |b| (a, b))).find(|&(a, b)| bad(a, b)).map(|(a, b)| vec![a, b])
}

fn first_elem(alg: &NablaAlgebra, bad: impl Fn(Elem) -> bool) -> Option<Vec<Elem>> {
    alg.elements().find(|&a| bad(a)).map(|a| vec![a])
}

pub fn classify(alg: &NablaAlgebra) -> PropertyProfile {
    let l = alg.lat();
    let mut found: Vec<(Property, Option<Vec<Elem>>)> = vec![
        (Property::D, l.distributivity_witness().map(|w| w.to_vec())),
        (Property::H, l.heyting_witness().map(|(a, b)| vec![a, b])),
    ];
    let n_witness = if alg.nabla(alg.top()) != alg.top() {
        Some(vec![alg.top()])
    } else {
        first_pair(alg, |a, b| alg.nabla(alg.meet(a, b)) != alg.meet(alg.nabla(a), alg.nabla(b)))
    };
    found.push((Property::N, n_witness));
    found.push((Property::R, first_elem(alg, |a| !alg.leq(a, alg.nabla(a)))));
    found.push((Property::L, first_elem(alg, |a| !alg.leq(alg.nabla(a), a))));
    found.push((Property::Fa, first_elem(alg, |a| alg.nabla(alg.boxed(a)) != a)));
    found.push((Property::Fu, first_elem(alg, |a| alg.boxed(alg.nabla(a)) != a)));

    let mut flags = FlagSet::EMPTY;
    let mut witnesses = BTreeMap::new();
    for (p, w) in found {
        match w {
            None => flags.insert(p),
            Some(w) => {
                witnesses.insert(p, w);
            }
        }
    }
    let report = check_characterizations(alg);
    assert!(report.ok, "equivalent characterizations disagree: {report:?}");
    PropertyProfile { flags, witnesses }
}

fn forall1(alg: &NablaAlgebra, f: impl Fn(Elem) -> bool) -> bool {
    alg.elements().all(f)
}

fn forall2(alg: &NablaAlgebra, f: impl Fn(Elem, Elem) -> bool) -> bool {
    alg.elements().all(|a| alg.elements().all(|b| f(a, b)))
}

fn forall3(alg: &NablaAlgebra, f: impl Fn(Elem, Elem, Elem) -> bool) -> bool {
    alg.elements().all(|a| alg.elements().all(|b| alg.elements().all(|c| f(a, b, c))))
}

fn agree(r: &mut Report, name: &str, verdicts: &[bool]) {
    if verdicts.iter().any(|&v| v != verdicts[0]) {
        r.fail(name, verdicts.iter().map(|&v| v as Elem).collect());
    }
}

/// Evaluates each equivalent formulation of R, L, Fa and Fu separately and
/// reports any family whose verdicts differ (witness: the verdict vector).
pub fn check_characterizations(alg: &NablaAlgebra) -> Report {
    let mut r = Report::new();
    let (le, meet, nb, bx, ar) = (
        |a, b| alg.leq(a, b),
        |a, b| alg.meet(a, b),
        |a| alg.nabla(a),
        |a| alg.boxed(a),
        |a, b| alg.arrow(a, b),
    );

    agree(&mut r, "right", &[
        forall1(alg, |b| le(b, nb(b))),
        forall2(alg, |a, b| le(meet(a, ar(a, b)), b)),
        forall1(alg, |b| le(bx(b), b)),
    ]);
    agree(&mut r, "left", &[
        forall1(alg, |b| le(nb(b), b)),
        forall3(alg, |a, b, c| !le(meet(c, a), b) || le(c, ar(a, b))),
        forall1(alg, |b| le(b, bx(b))),
    ]);
    let mut image = vec![false; alg.len()];
    alg.elements().for_each(|a| image[nb(a)] = true);
    agree(&mut r, "faithful", &[
        forall1(alg, |a| nb(bx(a)) == a),
        image.iter().all(|&hit| hit),
        forall2(alg, |a, b| meet(a, nb(ar(a, b))) == meet(a, b)),
        forall3(alg, |a, b, c| !le(ar(c, a), ar(c, b)) || le(meet(c, a), b)),
        forall2(alg, |a, b| !le(bx(a), bx(b)) || le(a, b)),
    ]);
    let mut box_image = vec![false; alg.len()];
    alg.elements().for_each(|a| box_image[bx(a)] = true);
    agree(&mut r, "full", &[
        forall1(alg, |a| bx(nb(a)) == a),
        box_image.iter().all(|&hit| hit),
        forall2(alg, |a, b| !le(nb(a), nb(b)) || le(a, b)),
    ]);
    r
}

/// `∇(a→b)∧a ≤ b`, `∇□a ≤ a` and `a ≤ □∇a`.
pub fn check_basic_properties(alg: &NablaAlgebra) -> Report {
    let mut r = Report::new();
    for a in alg.elements() {
        r.require(alg.leq(alg.nabla(alg.boxed(a)), a), "∇□a ≤ a", || vec![a]);
        r.require(alg.leq(a, alg.boxed(alg.nabla(a))), "a ≤ □∇a", || vec![a]);
        for b in alg.elements() {
            r.require(alg.leq(alg.meet(alg.nabla(alg.arrow(a, b)), a), b), "∇(a→b)∧a ≤ b", || vec![a, b]);
        }
    }
    r
}

/// On faithful algebras: `∇1 = 1` and `a → b = 1 ⇔ a ≤ b`. The report carries
/// an `applicable` flag; it is vacuously ok on non-faithful input.
pub fn check_on_one(alg: &NablaAlgebra) -> Report {
    let mut r = Report::new();
    let faithful = alg.elements().all(|a| alg.nabla(alg.boxed(a)) == a);
    r.set_flag("applicable", faithful);
    if !faithful {
        return r;
    }
    r.require(alg.nabla(alg.top()) == alg.top(), "∇1 = 1", Vec::new);
    for a in alg.elements() {
        for b in alg.elements() {
            r.require((alg.arrow(a, b) == alg.top()) == alg.leq(a, b), "a→b = 1 ⇔ a ≤ b", || vec![a, b]);
        }
    }
    r
}

/// On faithful algebras the Heyting table exists and equals `∇(a → b)`.
pub fn check_faithful_heyting(alg: &NablaAlgebra) -> Report {
    let mut r = Report::new();
    let faithful = alg.elements().all(|a| alg.nabla(alg.boxed(a)) == a);
    r.set_flag("applicable", faithful);
    if !faithful {
        return r;
    }
    let Some(h) = alg.heyting_table() else {
        r.fail("heyting table exists", vec![]);
        return r;
    };
    for a in alg.elements() {
        for b in alg.elements() {
            r.require(alg.nabla(alg.arrow(a, b)) == h.get(a, b), "∇(a→b) = a⊃b", || vec![a, b]);
        }
    }
    r
}
