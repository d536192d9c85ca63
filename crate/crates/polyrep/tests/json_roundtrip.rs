use polyrep::json::{representation, representation_from};
use polyrep_core::parse::parse_formula_in;
use polyrep_core::rational::ratio;
use polyrep_core::{Formula, Polynomial, Representation, SignSet};
use proptest::prelude::*;

#[test]
fn corpus_round_trips() {
    for entry in polyrep_core::corpus::entries() {
        let rep = entry.representation();
        let text = serde_json::to_string(&representation(&rep)).unwrap();
        let back = representation_from(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back, rep, "{}", entry.name);
    }
}

#[test]
fn malformed_documents_are_rejected() {
    for doc in [
        "{}",
        r#"{"dim": 2, "polys": [], "formula": {"op": "xor"}}"#,
        r#"{"dim": 2, "polys": [{"terms": [{"exponents": [1], "num": "1", "den": "1"}]}], "formula": {"op": "true"}}"#,
        r#"{"dim": 2, "polys": [{"terms": [{"exponents": [1, 0], "num": "1", "den": "0"}]}], "formula": {"op": "true"}}"#,
    ] {
        let v: serde_json::Value = serde_json::from_str(doc).unwrap();
        assert!(representation_from(&v).is_err(), "{}", doc);
    }
    let mut deep = String::from(r#"{"op": "true"}"#);
    for _ in 0..300 {
        deep = format!(r#"{{"op": "not", "child": {}}}"#, deep);
    }
    let doc = format!(r#"{{"dim": 1, "polys": [], "formula": {}}}"#, deep);
    let v: serde_json::Value = serde_json::from_str(&doc).unwrap_or(serde_json::Value::Null);
    assert!(representation_from(&v).is_err());
}

fn poly() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((0u32..4, 0u32..4, -9i64..=9, 1i64..=5), 1..5).prop_filter_map("constant", |ts| {
        let p = Polynomial::from_terms(2, ts.into_iter().map(|(a, b, n, d)| (vec![a, b], ratio(n, d)))).ok()?;
        (!p.is_constant()).then(|| p.primitive_part())
    })
}

proptest! {
    #[test]
    fn representations_round_trip(ps in prop::collection::vec(poly(), 1..4), bits in prop::collection::vec(1u8..=7, 3)) {
        let atoms: Vec<Formula> = ps
            .iter()
            .enumerate()
            .map(|(i, _)| Formula::atom(i, SignSet::from_bits(bits[i % 3]).unwrap()))
            .collect();
        let f = if atoms.len() == 1 { atoms.into_iter().next().unwrap() } else { Formula::Or(atoms) };
        let rep = Representation::new(2, ps, f).unwrap();
        let back = representation_from(&representation(&rep)).unwrap();
        prop_assert_eq!(&back, &rep);
        let text = polyrep_core::formula::print_formula(&rep);
        prop_assert!(parse_formula_in(&text, Some(2)).is_ok());
    }
}
