use polyrep_core::parse::parse_polynomial;
use polyrep_core::polytope::{
    check_polygon_structure, check_polytope_factor_map, heptagon_fixture, hexagon_counterexample,
    polygon_from_vertices, PolytopeError, Verdict,
};
use polyrep_core::rational::{int, ratio};
use polyrep_core::{GridSpec, Polynomial, Rational};
use proptest::prelude::*;

fn p(text: &str) -> Polynomial {
    parse_polynomial(text, Some(2)).unwrap()
}

fn pts(list: &[(Rational, Rational)]) -> Vec<Vec<Rational>> {
    list.iter().map(|(x, y)| vec![x.clone(), y.clone()]).collect()
}

fn unit_square() -> polyrep_core::PolytopeH {
    polygon_from_vertices(pts(&[(int(0), int(0)), (int(1), int(0)), (int(1), int(1)), (int(0), int(1))])).unwrap()
}

#[test]
fn construction_examples() {
    let sq = unit_square();
    assert_eq!(sq.facets(), &[p("x2"), p("1 - x1"), p("1 - x2"), p("x1")]);

    let (hex, q1, q2) = hexagon_counterexample();
    assert_eq!(hex.facets().len(), 6);
    assert_eq!(hex.parallel_pairs(), vec![(0, 3), (1, 4), (2, 5)]);
    let f = hex.facets();
    assert_eq!(q1, &(&f[0] * &f[2]) * &f[4]);
    assert_eq!(q2, &(&f[1] * &f[3]) * &f[5]);

    let repeated = polygon_from_vertices(pts(&[(int(0), int(0)), (int(1), int(0)), (int(1), int(0))]));
    assert!(matches!(repeated, Err(PolytopeError::DuplicateVertex { .. })));
}

#[test]
fn square_factor_maps() {
    let sq = unit_square();
    let grid = GridSpec::cube(2, ratio(-1, 2), ratio(3, 2), 128).unwrap();
    let ok = check_polytope_factor_map(&sq, &[p("x1*(1-x1)"), p("x2*(1-x2)")], Some(&grid)).unwrap();
    assert_eq!(ok.verdict, Verdict::Pass);
    assert!(ok.map.multiplicities.iter().all(|row| row.iter().filter(|&&k| k > 0).count() == 1));
    assert!(ok.map.multiplicities.iter().flatten().all(|&k| k <= 1));
    assert_eq!(ok.map.assignment[3], vec![(0, 1)]);
    assert!(ok.agreement.full_agreement());

    let even = check_polytope_factor_map(&sq, &[p("x1^2*(1-x1)"), p("x2*(1-x2)")], Some(&grid)).unwrap();
    assert_eq!(even.verdict, Verdict::Fail);
    let x = even.agreement.first_counterexample.clone().unwrap();
    assert!(x[0] < int(0));

    let double = check_polytope_factor_map(&sq, &[p("x1*(1-x1)*x2"), p("x2*(1-x2)")], Some(&grid)).unwrap();
    assert_eq!(double.verdict, Verdict::Fail);
    assert!(double.violations[0].contains("divides 2"));

    assert!(matches!(
        check_polytope_factor_map(&sq, &[p("x1")], None),
        Err(PolytopeError::WrongCount { expected: 2, found: 1 })
    ));
}

#[test]
fn polygon_structure_examples() {
    let (hept, q1, q2) = heptagon_fixture();
    let r = check_polygon_structure(&hept, &q1, &q2, None).unwrap();
    assert_eq!(r.edges, 7);
    assert_eq!(r.odd_multiplicities, Some(true));
    assert_eq!(r.g_coprime, Some(true));
    assert_eq!(r.g2_vanishes_at_vertices, Some(true));
    assert!(r.structure_matched && r.agreement.full_agreement());
    for v in hept.vertices() {
        assert_eq!(q2.eval(v).unwrap(), int(0));
    }

    let (hex, q1, q2) = hexagon_counterexample();
    let grid = GridSpec::cube(2, int(-2), int(2), 256).unwrap();
    let r = check_polygon_structure(&hex, &q1, &q2, Some(&grid)).unwrap();
    assert!(!r.index_sets[0].is_empty() && !r.index_sets[1].is_empty());
    assert!(!r.structure_matched);
    assert!(r.agreement.full_agreement());
    assert_eq!(r.agreement.tested, 257 * 257);

    let r = check_polygon_structure(&unit_square(), &p("x1*(1-x1)"), &p("x2*(1-x2)"), None).unwrap();
    assert_eq!(r.carrier, None);
    assert!(r.notes.iter().any(|n| n.contains("m = 4 < 7")));
}

/// Points on the unit circle at rational parameters, in counterclockwise order.
fn inscribed(ts: &[Rational]) -> Vec<Vec<Rational>> {
    let mut ts = ts.to_vec();
    ts.sort();
    ts.dedup();
    ts.iter()
        .map(|t| {
            let s = int(1) + t * t;
            vec![(int(1) - t * t) / &s, (int(2) * t) / &s]
        })
        .collect()
}

fn params() -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::btree_set((-40i64..=40, 1i64..=5).prop_map(|(n, d)| ratio(n, d)), 3..9)
        .prop_map(|s| s.into_iter().collect::<Vec<_>>())
        .prop_filter("three distinct", |v: &Vec<Rational>| {
            let mut v = v.clone();
            v.dedup();
            v.len() >= 3
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn vertices_come_back_from_edges(ts in params()) {
        let vs = inscribed(&ts);
        prop_assume!(vs.len() >= 3);
        let poly = polygon_from_vertices(vs.clone()).unwrap();
        prop_assert_eq!(poly.edge_intersections().unwrap(), vs);
        let c = poly.centroid();
        for f in poly.facets() {
            prop_assert!(f.eval(&c).unwrap() > int(0));
            prop_assert_eq!(f.total_degree(), Some(1));
        }
    }

    #[test]
    fn factor_map_ignores_scaling_and_order(
        a in 1i64..9, b in 1i64..9, c in 1i64..9, swap in any::<bool>(), square_x in any::<bool>(),
    ) {
        let sq = unit_square();
        let grid = GridSpec::cube(2, ratio(-1, 2), ratio(3, 2), 32).unwrap();
        let qx = if square_x { p("x1^2*(1-x1)") } else { p("x1*(1-x1)") };
        let qs = [qx, p("x2*(1-x2)")];
        let base = check_polytope_factor_map(&sq, &qs, Some(&grid)).unwrap();
        let mut moved = [qs[0].scale(&int(a)), qs[1].scale(&ratio(b, c))];
        if swap {
            moved.swap(0, 1);
        }
        let facets: Vec<Polynomial> = sq.facets().iter().map(|f| f.scale(&ratio(c, a))).collect();
        let scaled = polyrep_core::PolytopeH::new(facets, sq.vertices().to_vec()).unwrap();
        let r = check_polytope_factor_map(&scaled, &moved, Some(&grid)).unwrap();
        prop_assert_eq!(r.verdict, base.verdict);
        prop_assert_eq!(r.agreement.agreements, base.agreement.agreements);
        // Fail cases are backed by the sampled comparison as well.
        prop_assert_eq!(base.verdict == Verdict::Pass, base.agreement.full_agreement());
    }
}
