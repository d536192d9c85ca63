//! End-to-end acceptance run. Each criterion prints one line, then the test
//! asserts that all of them passed.

use std::io::Write;
use std::path::Path;
use std::process::Command;
use std::time::Instant;

use polyrep_core::corpus;
use polyrep_core::formula::print_formula;
use polyrep_core::geom::{compare_sets, find_nonsingular_zero};
use polyrep_core::parse::{parse_formula_bytes, parse_formula_in, parse_polynomial};
use polyrep_core::polytope::{
    check_polygon_structure, check_polytope_factor_map, hexagon_counterexample, polygon_from_vertices, Verdict,
};
use polyrep_core::rational::{int, ratio};
use polyrep_core::{multiplicity, try_divide, Ball, Formula, GridSpec, Polynomial, Representation, SignSet};
use proptest::prelude::*;
use proptest::strategy::ValueTree;
use proptest::test_runner::TestRunner;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn p(text: &str, dim: usize) -> Polynomial {
    parse_polynomial(text, Some(dim)).unwrap()
}

fn rep(text: &str) -> Representation {
    parse_formula_in(text, Some(2)).unwrap()
}

fn draw<S: Strategy>(s: &S, runner: &mut TestRunner) -> S::Value {
    s.new_tree(runner).unwrap().current()
}

fn ensure(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn clamp_degree(mut exps: Vec<u32>, degree: u32) -> Vec<u32> {
    let mut total: u32 = exps.iter().sum();
    for e in exps.iter_mut().rev() {
        let cut = (*e).min(total.saturating_sub(degree));
        *e -= cut;
        total -= cut;
    }
    exps
}

fn poly(dim: usize, degree: u32, terms: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((prop::collection::vec(0..=degree, dim), -5i64..=5, 1i64..=3), 1..=terms).prop_map(
        move |ts| {
            Polynomial::from_terms(dim, ts.into_iter().map(|(e, n, d)| (clamp_degree(e, degree), ratio(n, d))))
                .unwrap()
        },
    )
}

fn brute_multiplicity(f: &Polynomial, q: &Polynomial) -> u32 {
    let mut k = 0;
    let mut rest = q.clone();
    while let Some(next) = try_divide(&rest, f).unwrap() {
        k += 1;
        rest = next;
    }
    k
}

fn multiplicities() -> Outcome {
    let mut runner = TestRunner::deterministic();
    let started = Instant::now();
    let mut done = 0;
    while done < 500 {
        let dim = draw(&(1usize..=3), &mut runner);
        let f = draw(&poly(dim, 4, 4), &mut runner);
        let h = draw(&poly(dim, 4, 4), &mut runner);
        let k = draw(&(0u32..=5), &mut runner);
        if f.is_constant() || h.is_zero() || try_divide(&h, &f).unwrap().is_some() {
            continue;
        }
        let q = &f.pow(k) * &h;
        let fast = multiplicity(&f, &q).unwrap();
        let brute = brute_multiplicity(&f, &q);
        if fast != brute || fast != k {
            return Err(format!("f = {}, k = {}: multiplicity {} vs brute force {}", f, k, fast, brute));
        }
        done += 1;
    }
    let secs = started.elapsed().as_secs_f64();
    ensure(secs < 60.0, format!("500 products agree with repeated division in {:.1} s", secs))
}

fn corpus_table() -> Outcome {
    let opts = polyrep_core::lint::LintOptions::default();
    let mut n = 0;
    for entry in corpus::entries() {
        for o in corpus::run_entry(&entry, &opts) {
            if !o.matched {
                return Err(format!("{} {}: expected {}, found {}", o.entry, o.label, o.expected, o.found));
            }
            n += 1;
        }
    }
    Ok(format!("{} corpus checks match", n))
}

fn set_equalities() -> Outcome {
    let grid = GridSpec::cube(2, int(-3), int(3), 128).unwrap();
    let pairs = [
        ("(1 - x1^2 - x2^2)*(x2 + 2)^2 >= 0", "(1 - x1^2 - x2^2)*(x2 + 2) >= 0 & x2 + 2 >= 0"),
        ("x2 >= 0 & (1 - x1^2 - x2^2)*x2 >= 0", "x2 >= 0 & (1 - x1^2 - x2^2)*x2^2 >= 0"),
    ];
    for (a, b) in pairs {
        let r = compare_sets(&rep(a), &rep(b), &grid).unwrap();
        if !r.full_agreement() {
            return Err(format!("{} vs {}: {}/{}", a, b, r.agreements, r.tested));
        }
    }
    Ok(String::from("both pairs agree on all 129^2 corners"))
}

fn hexagon() -> Outcome {
    let (hex, q1, q2) = hexagon_counterexample();
    let grid = GridSpec::cube(2, int(-2), int(2), 256).unwrap();
    let r = check_polygon_structure(&hex, &q1, &q2, Some(&grid)).unwrap();
    let split = r.index_sets.iter().all(|s| !s.is_empty());
    let one_based = |s: &[usize]| s.iter().map(|i| i + 1).collect::<Vec<_>>();
    ensure(
        r.agreement.full_agreement() && split && !r.structure_matched,
        format!(
            "agreement {}/{}, edges split {:?} / {:?}",
            r.agreement.agreements,
            r.agreement.tested,
            one_based(&r.index_sets[0]),
            one_based(&r.index_sets[1])
        ),
    )
}

fn square_map() -> Outcome {
    let square = polygon_from_vertices(vec![
        vec![int(0), int(0)],
        vec![int(1), int(0)],
        vec![int(1), int(1)],
        vec![int(0), int(1)],
    ])
    .unwrap();
    let good = check_polytope_factor_map(&square, &[p("x1*(1-x1)", 2), p("x2*(1-x2)", 2)], None).unwrap();
    let ones = good.map.multiplicities.iter().flatten().all(|&k| k == 0 || k == 1);
    let once = good.map.assignment.iter().all(|a| a.len() == 1 && a[0].1 == 1);
    if good.verdict != Verdict::Pass || !ones || !once {
        return Err(format!("square map: {:?}, {:?}", good.verdict, good.violations));
    }
    let bad = check_polytope_factor_map(&square, &[p("x1^2*(1-x1)", 2), p("x2*(1-x2)", 2)], None).unwrap();
    match bad.agreement.first_counterexample {
        Some(w) if bad.verdict == Verdict::Fail => Ok(format!(
            "PASS with multiplicities 1; the perturbed map fails with a grid counterexample at ({})",
            w.iter().map(|q| q.to_string()).collect::<Vec<_>>().join(", ")
        )),
        _ => Err(format!("perturbed map: {:?} without a counterexample", bad.verdict)),
    }
}

fn singularities() -> Outcome {
    let cubic = p("x1^2 + x2^2 - x1^3", 2);
    let ball = |c: [i64; 2], r: (i64, i64)| Ball::new(vec![int(c[0]), int(c[1])], ratio(r.0, r.1)).unwrap();
    if let Some(z) = find_nonsingular_zero(&cubic, &ball([0, 0], (1, 2)), 256) {
        return Err(format!("found a zero near the isolated point: {:?}", z.point));
    }
    let lattice = find_nonsingular_zero(&cubic, &ball([2, 2], (1, 2)), 256).ok_or("nothing near (2, 2)")?;
    let bracketed = find_nonsingular_zero(&cubic, &ball([4, 7], (1, 2)), 256).ok_or("nothing near (4, 7)")?;
    if bracketed.bracket.is_none() || cubic.eval(&lattice.exact).unwrap() != int(0) {
        return Err(String::from("branch zeros are not certified"));
    }
    let umbrella = p("x3^2*x1 - x2^2", 3);
    let handle = [[int(-1), int(0), int(0)], [int(0), int(0), int(0)], [ratio(5, 2), int(0), int(0)]];
    for x in &handle {
        for g in umbrella.gradient() {
            if g.eval(x).unwrap() != int(0) {
                return Err(format!("umbrella gradient {} nonzero on the handle", g));
            }
        }
    }
    Ok(String::from("no zero at the isolated point, branch zeros near (2, 2) and (4, 7), umbrella gradient exactly 0 on the handle"))
}

fn gradients() -> Outcome {
    let mut runner = TestRunner::deterministic();
    let step = 1e-6;
    let mut checked = 0;
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let dim = draw(&(1usize..=3), &mut runner);
        let f = draw(&poly(dim, 4, 6), &mut runner);
        let x = draw(&prop::collection::vec(-1.0f64..1.0, dim), &mut runner);
        let grad: Vec<f64> = f.gradient().iter().map(|g| g.eval_f64(&x).unwrap()).collect();
        let norm = grad.iter().map(|g| g * g).sum::<f64>().sqrt();
        if norm <= 1e-3 {
            continue;
        }
        let fd: Vec<f64> = (0..dim)
            .map(|i| {
                let (mut a, mut b) = (x.clone(), x.clone());
                a[i] += step;
                b[i] -= step;
                (f.eval_f64(&a).unwrap() - f.eval_f64(&b).unwrap()) / (2.0 * step)
            })
            .collect();
        let err = grad.iter().zip(&fd).map(|(g, d)| (g - d) * (g - d)).sum::<f64>().sqrt() / norm;
        worst = worst.max(err);
        checked += 1;
    }
    ensure(worst <= 1e-5, format!("{} of 200 pairs above the norm floor, worst relative error {:.2e}", checked, worst))
}

fn tree(atoms: usize) -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        1 => Just(Formula::True),
        1 => Just(Formula::False),
        6 => (0..atoms, 1u8..=7).prop_map(|(i, b)| Formula::atom(i, SignSet::from_bits(b).unwrap())),
    ];
    leaf.prop_recursive(5, 32, 4, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 2..4).prop_map(Formula::And),
            prop::collection::vec(inner.clone(), 2..4).prop_map(Formula::Or),
            inner.prop_map(Formula::not),
        ]
    })
}

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

fn parser_fuzz() -> Outcome {
    let mut runner = TestRunner::deterministic();
    let pool = [
        p("x1", 3),
        p("x2 - 2*x1^2", 3),
        p("1 - x1^2 - x2^2 - x3^2", 3),
        p("3*x1*x3 + 1/2", 3),
    ];
    let mut round_trips = 0;
    while round_trips < 1000 {
        let f = draw(&tree(4), &mut runner);
        let mut order = Vec::new();
        let f = renumber(&f, &mut order);
        let polys = order.iter().map(|&i| pool[i].primitive_part()).collect();
        let original = Representation::new(3, polys, f).unwrap();
        let text = print_formula(&original);
        match parse_formula_in(&text, Some(3)) {
            Ok(back) if back == original => round_trips += 1,
            Ok(_) => return Err(format!("{} does not round-trip", text)),
            Err(e) => return Err(format!("{}: {}", text, e)),
        }
    }
    let mut accepted = 0;
    for _ in 0..100_000 {
        let len = (runner.rng().next_u32() % 48) as usize;
        let mut bytes = vec![0u8; len];
        runner.rng().fill_bytes(&mut bytes);
        match parse_formula_bytes(&bytes, None) {
            Ok(_) => accepted += 1,
            Err(e) if e.offset <= bytes.len() => {}
            Err(e) => return Err(format!("offset {} past the end of {} bytes", e.offset, len)),
        }
    }
    Ok(format!(
        "1000 formulas round-trip; 100000 random byte strings without a panic, {} parsed, the rest rejected with positions",
        accepted
    ))
}

fn run_bin(dir: &Path, args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_polyrep")).current_dir(dir).args(args).output().unwrap();
    (out.status.code().unwrap(), out.stdout)
}

fn determinism() -> Outcome {
    let dir = tempfile::TempDir::new().unwrap();
    std::fs::write(dir.path().join("saturn.txt"), "(1 - x1^2 - x2^2)*x2^2 >= 0").unwrap();
    std::fs::write(dir.path().join("f.txt"), "x2").unwrap();
    let mut images = Vec::new();
    let mut reports = Vec::new();
    for (run, threads) in [(0, "1"), (1, "1"), (2, "4"), (3, "7")] {
        let name = format!("r{}.pgm", run);
        let (code, _) = run_bin(dir.path(), &["raster", "saturn.txt", "--out", &name, "--threads", threads]);
        if code != 0 {
            return Err(format!("raster exited {}", code));
        }
        images.push(std::fs::read(dir.path().join(&name)).unwrap());
        let lint = [
            "lint",
            "saturn.txt",
            "f.txt",
            "--witness",
            "C-closed:zero-set@2 0;1/4+interior@0 0;1/2",
            "--witness",
            "T1-I",
            "--no-timing",
            "--threads",
            threads,
        ];
        reports.push(run_bin(dir.path(), &lint));
    }
    let same_images = images.windows(2).all(|w| w[0] == w[1]);
    let same_reports = reports.windows(2).all(|w| w[0] == w[1]);
    ensure(
        same_images && same_reports,
        format!("raster ({} bytes) and lint ({} bytes) identical over 4 runs with 1, 4 and 7 threads", images[0].len(), reports[0].1.len()),
    )
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 9] = [
        ("multiplicity oracle", multiplicities),
        ("corpus lint table", corpus_table),
        ("set equalities", set_equalities),
        ("hexagon", hexagon),
        ("square factor map", square_map),
        ("singularity probes", singularities),
        ("gradient vs finite differences", gradients),
        ("parser fuzz", parser_fuzz),
        ("determinism", determinism),
    ];
    let mut failed = Vec::new();
    let mut err = std::io::stderr();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let line = match check() {
            Ok(detail) => format!("criterion {}: PASS {}: {}", i + 1, name, detail),
            Err(detail) => {
                failed.push(i + 1);
                format!("criterion {}: FAIL {}: {}", i + 1, name, detail)
            }
        };
        writeln!(err, "{}", line).unwrap();
    }
    assert!(failed.is_empty(), "failed criteria: {:?}", failed);
}
