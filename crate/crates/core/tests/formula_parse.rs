mod common;

use common::{nonconstant_poly, point};
use polyrep_core::formula::{eval_formula, print_formula};
use polyrep_core::parse::{parse_formula_bytes, parse_formula_in};
use polyrep_core::rational::{int, ratio};
use polyrep_core::{parse_formula, Formula, Kind, Polynomial, Rational, Representation, Sign, SignSet};
use proptest::prelude::*;

fn p(text: &str, dim: usize) -> Polynomial {
    polyrep_core::parse::parse_polynomial(text, Some(dim)).unwrap()
}

#[test]
fn evaluation_examples() {
    let saturn = parse_formula("(1 - x1^2 - x2^2)*x2^2 >= 0").unwrap();
    assert!(eval_formula(&saturn, &[int(0), ratio(1, 2)]).unwrap());
    assert!(!eval_formula(&saturn, &[int(2), int(1)]).unwrap());
    let always = Representation::new(2, saturn.polys().to_vec(), Formula::True).unwrap();
    assert!(eval_formula(&always, &[int(2), int(1)]).unwrap());
}

#[test]
fn elementary_constructors() {
    let square = Representation::elementary_closed(vec![p("x1", 2), p("x2", 2), p("1 - x1", 2), p("1 - x2", 2)]).unwrap();
    assert_eq!(square.kind(), Kind::ElementaryClosed);
    for i in -4..=8 {
        for j in -4..=8 {
            let (x, y) = (ratio(i, 4), ratio(j, 4));
            let inside = x >= int(0) && x <= int(1) && y >= int(0) && y <= int(1);
            assert_eq!(square.contains(&[x, y]).unwrap(), inside);
        }
    }
    let half = Representation::elementary_open(vec![p("x2", 2)]).unwrap();
    assert!(!half.contains(&[int(0), int(0)]).unwrap());
    assert!(half.contains(&[int(0), ratio(1, 9)]).unwrap());
    let handle = Representation::algebraic(vec![p("x2", 3), p("x3", 3)]).unwrap();
    assert!(handle.contains(&[int(5), int(0), int(0)]).unwrap());
    assert!(!handle.contains(&[int(0), int(1), int(0)]).unwrap());
    assert!(!handle.contains(&[int(0), int(0), ratio(-1, 3)]).unwrap());
}

#[test]
fn printing_examples() {
    let r = Representation::elementary_closed(vec![p("x1", 2)]).unwrap();
    assert_eq!(print_formula(&r), "x1 >= 0");
    let r = parse_formula("x1 >= 0 & x2 > 0").unwrap();
    assert_eq!(print_formula(&r), "(x1 >= 0 & x2 > 0)");
    let saturn = parse_formula("(1 - x1^2 - x2^2)*x2^2 >= 0").unwrap();
    assert_eq!(print_formula(&saturn), "(1 - x1^2 - x2^2)*x2^2 >= 0");
    assert_eq!(parse_formula(&print_formula(&saturn)).unwrap(), saturn);
}

#[test]
fn errors_carry_positions() {
    let e = parse_formula("x1 >= 0 &\n x2 >> 1").unwrap_err();
    assert_eq!((e.line, e.column), (2, 6));
    assert_eq!(e.offset, 15);
    let e = parse_formula("0 >= 0").unwrap_err();
    assert_eq!(e.offset, 0);
    let e = parse_formula_bytes(b"x1 >= \xff", None).unwrap_err();
    assert_eq!(e.offset, 6);
    assert!(parse_formula("").is_err());
    assert!(parse_formula("x2 >= 0").is_ok());
    assert!(parse_formula_in("x3 >= 0", Some(2)).is_err());
}

fn sign_set() -> impl Strategy<Value = SignSet> {
    (1u8..=7).prop_map(|b| SignSet::from_bits(b).unwrap())
}

fn tree(atoms: usize) -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        1 => Just(Formula::True),
        1 => Just(Formula::False),
        6 => (0..atoms, sign_set()).prop_map(|(i, s)| Formula::atom(i, s)),
    ];
    leaf.prop_recursive(5, 32, 4, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 2..4).prop_map(Formula::And),
            prop::collection::vec(inner.clone(), 2..4).prop_map(Formula::Or),
            inner.prop_map(Formula::not),
        ]
    })
}

/// Renumbers atoms by first occurrence, which is what the parser produces.
fn renumber(f: &Formula, order: &mut Vec<usize>) -> Formula {
    match f {
        Formula::Atom { index, signs } => {
            let pos = order.iter().position(|i| i == index).unwrap_or_else(|| {
                order.push(*index);
                order.len() - 1
            });
            Formula::atom(pos, *signs)
        }
        Formula::And(cs) => Formula::And(cs.iter().map(|c| renumber(c, order)).collect()),
        Formula::Or(cs) => Formula::Or(cs.iter().map(|c| renumber(c, order)).collect()),
        Formula::Not(c) => Formula::not(renumber(c, order)),
        other => other.clone(),
    }
}

fn distinct_polys() -> impl Strategy<Value = Vec<Polynomial>> {
    prop::collection::vec(nonconstant_poly(3, 3, 4), 4).prop_filter_map("constant multiples", |ps| {
        let ps: Vec<Polynomial> = ps.iter().map(Polynomial::primitive_part).collect();
        let normal: Vec<_> = ps.iter().map(|q| q.normalize().unwrap()).collect();
        let distinct = (0..4).all(|i| (i + 1..4).all(|j| normal[i] != normal[j]));
        distinct.then_some(ps)
    })
}

fn canonical() -> impl Strategy<Value = Representation> {
    (distinct_polys(), tree(4)).prop_map(|(pool, f)| {
        let mut order = Vec::new();
        let f = renumber(&f, &mut order);
        let polys = order.iter().map(|&i| pool[i].clone()).collect();
        Representation::new(3, polys, f).unwrap()
    })
}

fn signs(polys: &[Polynomial], x: &[Rational]) -> Vec<Sign> {
    polys.iter().map(|q| q.sign_at(x).unwrap()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn print_then_parse_is_identity(rep in canonical()) {
        let text = print_formula(&rep);
        let back = parse_formula_in(&text, Some(3)).map_err(|e| TestCaseError::fail(format!("{}: {}", text, e)))?;
        prop_assert_eq!(back, rep, "{}", text);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn connectives_compose(pool in distinct_polys(), a in tree(4), b in tree(4), x in point(3)) {
        let s = signs(&pool, &x);
        let rep = |f: Formula| Representation::new(3, pool.clone(), f).unwrap();
        let (va, vb) = (rep(a.clone()).contains(&x).unwrap(), rep(b.clone()).contains(&x).unwrap());
        prop_assert_eq!(va, a.eval_signs(&s));
        prop_assert_eq!(rep(Formula::And(vec![a.clone(), b.clone()])).contains(&x).unwrap(), va && vb);
        prop_assert_eq!(rep(Formula::Or(vec![a.clone(), b.clone()])).contains(&x).unwrap(), va || vb);
        prop_assert_eq!(rep(Formula::not(a)).contains(&x).unwrap(), !va);
    }

    #[test]
    fn elementary_sets_match_definitions(pool in distinct_polys(), x in point(3)) {
        let values: Vec<Rational> = pool.iter().map(|q| q.eval(&x).unwrap()).collect();
        let zero = int(0);
        let closed = Representation::elementary_closed(pool.clone()).unwrap();
        let open = Representation::elementary_open(pool.clone()).unwrap();
        let alg = Representation::algebraic(pool.clone()).unwrap();
        prop_assert_eq!(closed.contains(&x).unwrap(), values.iter().all(|v| *v >= zero));
        prop_assert_eq!(open.contains(&x).unwrap(), values.iter().all(|v| *v > zero));
        prop_assert_eq!(alg.contains(&x).unwrap(), values.iter().all(|v| *v == zero));
    }

    #[test]
    fn arbitrary_bytes_never_panic(bytes in prop::collection::vec(any::<u8>(), 0..64)) {
        if let Err(e) = parse_formula_bytes(&bytes, None) {
            prop_assert!(e.offset <= bytes.len());
            prop_assert!(e.line >= 1 && e.column >= 1);
        }
    }

    #[test]
    fn grammar_shaped_noise_never_panics(
        pieces in prop::collection::vec(
            prop::sample::select(vec![
                "x1", "x2", "x{3}", "1", "2/3", "+", "-", "*", "^", "2", "(", ")", ">=", ">", "=", "!=",
                "<", "<=", "&", "|", "!", "sign", "in", "{", "}", ",", "-1", "0", "true", "false", " ",
            ]),
            0..24,
        )
    ) {
        let text: String = pieces.concat();
        if let Err(e) = parse_formula(&text) {
            prop_assert!(e.offset <= text.len());
        }
    }
}
