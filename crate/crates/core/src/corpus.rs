//! Worked example sets in the plane, with witnesses and the verdicts the
//! lints are expected to give on them.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::formula::{Kind, Representation};
use crate::geom::{Ball, LocalShape};
use crate::lint::{
    derive_contradiction, lint_both_shapes, lint_elementary_closed, lint_elementary_open, lint_factor,
    lint_odd, lint_zero_locally, Contradiction, LintError, LintOptions, LintVerdict, Rule, Status, Witness,
};
use crate::parse::{parse_formula, parse_polynomial};
use crate::poly::Polynomial;
use crate::rational::{ratio, Rational};

#[derive(Clone, Debug, PartialEq)]
pub enum Check {
    /// A single-rule lint with its expected status and, where the conclusion
    /// can hold in more than one way, the expected branch text.
    Lint { rule: Rule, f: &'static str, witnesses: Vec<Witness>, expected: Status, branch: Option<&'static str> },
    /// Witnesses that should yield a non-representability certificate.
    Certificate { kind: Kind, witnesses: Vec<(Witness, Rule)> },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Entry {
    pub name: &'static str,
    pub formula: &'static str,
    pub checks: Vec<Check>,
}

impl Entry {
    pub fn representation(&self) -> Representation {
        parse_formula(self.formula).expect("corpus formulas parse")
    }
}

/// The outcome of one check.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub entry: &'static str,
    pub label: String,
    pub expected: String,
    pub found: String,
    pub matched: bool,
}

fn q(n: i64, d: i64) -> Rational {
    ratio(n, d)
}

fn ball(c: (Rational, Rational), r: Rational) -> Ball {
    Ball::new(vec![c.0, c.1], r).expect("positive radius")
}

fn poly(text: &str) -> Polynomial {
    parse_polynomial(text, Some(2)).expect("corpus polynomials parse")
}

fn zero_set(f: &str, c: (Rational, Rational), r: Rational) -> Witness {
    Witness::new(ball(c, r), LocalShape::ZeroSet(poly(f)))
}

fn closed_half(f: &str, c: (Rational, Rational), r: Rational) -> Witness {
    Witness::new(ball(c, r), LocalShape::ClosedHalf(poly(f)))
}

fn open_half(f: &str, c: (Rational, Rational), r: Rational) -> Witness {
    Witness::new(ball(c, r), LocalShape::OpenHalf(poly(f)))
}

fn off_zero(f: &str, c: (Rational, Rational), r: Rational) -> Witness {
    Witness::new(ball(c, r), LocalShape::ComplementOfZero(poly(f)))
}

fn lint(rule: Rule, f: &'static str, witnesses: Vec<Witness>, branch: Option<&'static str>) -> Check {
    Check::Lint { rule, f, witnesses, expected: Status::Pass, branch }
}

/// The upper half of two overlapping disks, x2 excluded.
pub fn two_disks() -> Entry {
    let disk_right = "1 - (x1-1)^2 - x2^2";
    let disk_origin = "1 - x1^2 - x2^2";
    Entry {
        name: "two-disks",
        formula: "x2 > 0 & ((x1-1)^2 + x2^2 <= 1 | x1^2 + x2^2 <= 1)",
        checks: vec![
            lint(Rule::T1IV, "x2", vec![open_half("x2", (q(1, 2), q(0, 1)), q(1, 8))], None),
            lint(Rule::T1III, disk_right, vec![closed_half(disk_right, (q(8, 5), q(4, 5)), q(1, 10))], None),
            lint(Rule::T1III, disk_origin, vec![closed_half(disk_origin, (q(-3, 5), q(4, 5)), q(1, 10))], None),
        ],
    }
}

fn ball_and_line_witness() -> Vec<Witness> {
    vec![zero_set("x2 + 2", (q(0, 1), q(-2, 1)), q(1, 2))]
}

/// Unit disk plus the line x2 = -2, with the squared factor.
pub fn ball_and_line_squared() -> Entry {
    Entry {
        name: "ball-and-line-squared",
        formula: "(1 - x1^2 - x2^2)*(x2 + 2)^2 >= 0",
        checks: vec![lint(Rule::C1I, "x2 + 2", ball_and_line_witness(), Some("even multiplicity 2 in p_1"))],
    }
}

/// The same set with the factor split over two polynomials.
pub fn ball_and_line_split() -> Entry {
    Entry {
        name: "ball-and-line-split",
        formula: "(1 - x1^2 - x2^2)*(x2 + 2) >= 0 & x2 + 2 >= 0",
        checks: vec![lint(Rule::C1I, "x2 + 2", ball_and_line_witness(), Some("two indices: f divides p_1 and p_2"))],
    }
}

fn half_disk_check() -> Check {
    lint(
        Rule::C1II,
        "x2",
        vec![closed_half("x2", (q(0, 1), q(0, 1)), q(1, 2)), zero_set("x2", (q(2, 1), q(0, 1)), q(1, 2))],
        None,
    )
}

/// Upper half disk plus the whole x1-axis.
pub fn half_disk_and_line() -> Entry {
    Entry {
        name: "half-disk-and-line",
        formula: "x2 >= 0 & (1 - x1^2 - x2^2)*x2 >= 0",
        checks: vec![half_disk_check()],
    }
}

/// The same set with `x2` squared in the second polynomial.
pub fn half_disk_and_line_squared() -> Entry {
    Entry {
        name: "half-disk-and-line-squared",
        formula: "x2 >= 0 & (1 - x1^2 - x2^2)*x2^2 >= 0",
        checks: vec![half_disk_check()],
    }
}

/// Closed unit disk plus the x1-axis.
pub fn saturn() -> Entry {
    let w = zero_set("x2", (q(2, 1), q(0, 1)), q(1, 4)).with_interior(ball((q(0, 1), q(0, 1)), q(1, 2)));
    Entry {
        name: "saturn",
        formula: "(1 - x1^2 - x2^2)*x2^2 >= 0",
        checks: vec![lint(Rule::CClosed, "x2", vec![w], None)],
    }
}

/// Open unit disk minus the x1-axis.
pub fn open_saturn() -> Entry {
    Entry {
        name: "open-saturn",
        formula: "(1 - x1^2 - x2^2)*x2^2 > 0",
        checks: vec![lint(Rule::COpen, "x2", vec![off_zero("x2", (q(0, 1), q(0, 1)), q(1, 2))], None)],
    }
}

/// A closed set that is not elementary closed.
pub fn closed_not_elementary() -> Entry {
    let zero = zero_set("x2", (q(3, 2), q(0, 1)), q(1, 4)).with_interior(ball((q(3, 1), q(0, 1)), q(1, 2)));
    Entry {
        name: "closed-not-elementary",
        formula: "x2 = 0 | (x1-3)^2 + x2^2 <= 1 | (x1^2 + x2^2 <= 1 & x2 >= 0)",
        checks: vec![Check::Certificate {
            kind: Kind::ElementaryClosed,
            witnesses: vec![(closed_half("x2", (q(0, 1), q(0, 1)), q(1, 2)), Rule::T1III), (zero, Rule::CClosed)],
        }],
    }
}

/// An open set that is not elementary open.
pub fn open_not_elementary() -> Entry {
    Entry {
        name: "open-not-elementary",
        formula: "(x1^2 + x2^2 < 1 & x2 > 0) | ((x1-3)^2 + x2^2 < 1 & x2 != 0)",
        checks: vec![Check::Certificate {
            kind: Kind::ElementaryOpen,
            witnesses: vec![
                (open_half("x2", (q(0, 1), q(0, 1)), q(1, 2)), Rule::T1IV),
                (off_zero("x2", (q(3, 1), q(0, 1)), q(1, 2)), Rule::COpen),
            ],
        }],
    }
}

pub fn entries() -> Vec<Entry> {
    vec![
        two_disks(),
        ball_and_line_squared(),
        ball_and_line_split(),
        half_disk_and_line(),
        half_disk_and_line_squared(),
        saturn(),
        open_saturn(),
        closed_not_elementary(),
        open_not_elementary(),
    ]
}

/// Runs the lint a rule names, with the witnesses in order.
pub fn run_lint(
    rep: &Representation,
    rule: Rule,
    f: &Polynomial,
    witnesses: &[Witness],
    opts: &LintOptions,
) -> Result<LintVerdict, LintError> {
    let one = || witnesses.first().ok_or(LintError::NotEnoughWitnesses);
    match rule {
        Rule::T1II => lint_factor(rep, f, one()?, opts),
        Rule::T1III | Rule::T1IV => {
            let v = lint_odd(rep, f, one()?, opts)?;
            if v.rule == rule {
                Ok(v)
            } else {
                let expected = if rule == Rule::T1III { "closed-half" } else { "open-half" };
                Err(LintError::WrongShape { rule, expected, found: one()?.shape.name() })
            }
        }
        Rule::C1I => lint_zero_locally(rep, f, one()?, opts),
        Rule::C1II => match witnesses {
            [closed, zero, ..] => lint_both_shapes(rep, f, closed, zero, opts),
            _ => Err(LintError::NotEnoughWitnesses),
        },
        Rule::CClosed => lint_elementary_closed(rep, f, one()?, opts),
        Rule::COpen => lint_elementary_open(rep, f, one()?, opts),
        Rule::T1I => Err(LintError::UnsupportedRule { rule }),
    }
}

/// Runs every check of `entry`.
pub fn run_entry(entry: &Entry, opts: &LintOptions) -> Vec<Outcome> {
    let rep = entry.representation();
    entry
        .checks
        .iter()
        .map(|check| match check {
            Check::Lint { rule, f, witnesses, expected, branch } => {
                let label = format!("{} f = {}", rule, f);
                let want = match branch {
                    Some(b) => format!("{} ({})", expected, b),
                    None => String::from(expected.as_str()),
                };
                match run_lint(&rep, *rule, &poly(f), witnesses, opts) {
                    Ok(v) => {
                        let found = match (&v.evidence.branch, branch) {
                            (Some(b), Some(_)) => format!("{} ({})", v.status, b),
                            _ => String::from(v.status.as_str()),
                        };
                        Outcome { entry: entry.name, label, matched: found == want, expected: want, found }
                    }
                    Err(e) => Outcome { entry: entry.name, label, expected: want, found: format!("error: {}", e), matched: false },
                }
            }
            Check::Certificate { kind, witnesses } => {
                let label = format!("certificate against {}", kind);
                let expected = String::from("certificate");
                match derive_contradiction(&rep, *kind, witnesses, opts) {
                    Ok(Contradiction::Certificate(_)) => {
                        Outcome { entry: entry.name, label, expected, found: String::from("certificate"), matched: true }
                    }
                    Ok(Contradiction::Consistent { reason, .. }) => {
                        Outcome { entry: entry.name, label, expected, found: format!("consistent: {}", reason), matched: false }
                    }
                    Err(e) => Outcome { entry: entry.name, label, expected, found: format!("error: {}", e), matched: false },
                }
            }
        })
        .collect()
}
