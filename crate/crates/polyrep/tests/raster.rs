use polyrep::raster::{pixels, render, BOUNDARY, INSIDE, OUTSIDE};
use polyrep_core::polytope::hexagon_counterexample;
use polyrep_core::rational::int;
use polyrep_core::{parse_formula, GridSpec, Representation};

fn square(lo: i64, hi: i64, n: usize) -> GridSpec {
    GridSpec::cube(2, int(lo), int(hi), n).unwrap()
}

#[test]
fn empty_set_is_black() {
    let f = polyrep_core::parse::parse_formula_in("false", Some(2)).unwrap();
    let img = render(&f, &square(-2, 2, 16));
    assert_eq!(&img[..13], b"P5\n16 16\n255\n");
    assert!(img[13..].iter().all(|&b| b == OUTSIDE));
    assert_eq!(img.len(), 13 + 256);
}

#[test]
fn half_plane_rows() {
    let f = parse_formula("x2 >= 0").unwrap();
    let f = f.conjoin(polyrep_core::parse::parse_polynomial("1", Some(2)).unwrap(), polyrep_core::SignSet::POSITIVE).unwrap();
    let px = pixels(&f, &square(-1, 1, 4));
    // Top rows are inside; the row touching x2 = 0 from below is mixed.
    assert_eq!(&px[0..8], &[INSIDE; 8]);
    assert_eq!(&px[8..12], &[BOUNDARY; 4]);
    assert_eq!(&px[12..16], &[OUTSIDE; 4]);
}

#[test]
fn hexagon_descriptions_render_identically() {
    let (hex, q1, q2) = hexagon_counterexample();
    let grid = square(-2, 2, 256);
    let q = Representation::elementary_closed(vec![q1, q2]).unwrap();
    assert_eq!(render(&q, &grid), render(&hex.representation(), &grid));
}

#[test]
fn thread_count_does_not_change_bytes() {
    let f = parse_formula("(1 - x1^2 - x2^2)*x2^2 >= 0").unwrap();
    let grid = square(-2, 2, 200);
    let one = polyrep::parallel::with_threads(Some(1), || render(&f, &grid));
    let four = polyrep::parallel::with_threads(Some(4), || render(&f, &grid));
    assert_eq!(one, four);
}
