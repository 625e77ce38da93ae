mod common;

use nabla_core::gallery::{fixtures, Payload};
use nabla_core::json::Document;
use proptest::prelude::*;

fn document(p: &Payload) -> Document {
    match p {
        Payload::Lattice(l) => Document::from(l),
        Payload::Algebra(a) => Document::from(a),
        Payload::Frame(k) => Document::from(k),
        Payload::StrongCandidate(s) => Document::from(s),
    }
}

#[test]
fn every_fixture_round_trips() {
    for f in fixtures() {
        let doc = document(&f.payload);
        let text = doc.to_json();
        let back = Document::parse(&text).unwrap();
        assert_eq!(back, doc, "{}", f.name);
        assert_eq!(back.to_json(), text);
        let rebuilt = match (&back, &f.payload) {
            (Document::Lattice(d), Payload::Lattice(l)) => d.to_lattice().unwrap() == *l,
            (Document::NablaAlgebra(d), Payload::Algebra(a)) => d.to_algebra().unwrap() == *a,
            (Document::KripkeFrame(d), Payload::Frame(k)) => d.to_frame().unwrap() == *k,
            (Document::StrongCandidate(d), Payload::StrongCandidate(s)) => {
                let c = d.to_candidate().unwrap();
                c.lat == s.lat && c.arrow == s.arrow
            }
            _ => false,
        };
        assert!(rebuilt, "{}", f.name);
    }
}

proptest! {
    #[test]
    fn catalog_algebras_round_trip(i in 0..common::catalog(5).len()) {
        let alg = &common::catalog(5)[i];
        let doc = Document::from(&**alg);
        let Document::NablaAlgebra(back) = Document::parse(&doc.to_json()).unwrap() else { panic!("kind changed") };
        prop_assert_eq!(&back.to_algebra().unwrap(), &**alg);
    }
}
