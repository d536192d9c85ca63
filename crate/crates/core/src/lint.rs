//! Necessary conditions on representations near a boundary piece `Z(f)`.
//!
//! A lint pairs an exact conclusion (divisibility and multiplicity of `f` in
//! the `p_i`) with hypotheses checked at sampled scale on caller-supplied
//! witnesses. A PASS is consistent with the statement, never a proof of it.
//! When a hypothesis is not supported by the samples the status is
//! HYPOTHESIS-UNSUPPORTED, but the conclusion evidence is still computed.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::factor::{multiplicity, FactorError};
use crate::formula::{Kind, Representation};
use crate::geom::{
    ball_lattice, boundary_cells, check_local_shape, check_local_shape_off_zero,
    find_nonsingular_zero_with, Ball, GeomError, GridSpec, LocalShape, Membership, NonsingularZero,
    SampleReport, Tolerances, DEFAULT_ZERO_BUDGET, DEFAULT_ZERO_PER_AXIS,
};
use crate::irreducible::{check_irreducible, Irreducibility};
use crate::poly::Polynomial;
use crate::rational::{int, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    /// The boundary lies in the union of the `Z(p_i)`.
    T1I,
    /// `f` divides some `p_i`.
    T1II,
    /// Closed half-space witness: `f` has odd multiplicity in some `p_i`.
    T1III,
    /// Open half-space witness: `f` has odd multiplicity in some `p_i`.
    T1IV,
    /// Zero-set witness: `f` divides two `p_i`, or one with even multiplicity.
    C1I,
    /// Closed and zero-set witnesses: odd in some `p_j`, divides another `p_i`.
    C1II,
    /// Elementary closed sets: every multiplicity of `f` is even.
    CClosed,
    /// Elementary open sets: every multiplicity of `f` is even.
    COpen,
}

impl Rule {
    pub const ALL: [Rule; 8] =
        [Rule::T1I, Rule::T1II, Rule::T1III, Rule::T1IV, Rule::C1I, Rule::C1II, Rule::CClosed, Rule::COpen];

    pub fn id(self) -> &'static str {
        match self {
            Rule::T1I => "T1-I",
            Rule::T1II => "T1-II",
            Rule::T1III => "T1-III",
            Rule::T1IV => "T1-IV",
            Rule::C1I => "C1-I",
            Rule::C1II => "C1-II",
            Rule::CClosed => "C-closed",
            Rule::COpen => "C-open",
        }
    }

    pub fn from_id(id: &str) -> Option<Rule> {
        Rule::ALL.into_iter().find(|r| r.id().eq_ignore_ascii_case(id))
    }

    /// The conclusion in words.
    pub fn conclusion(self) -> &'static str {
        match self {
            Rule::T1I => "the boundary lies in the union of the zero sets of the p_i",
            Rule::T1II => "f divides some p_i",
            Rule::T1III | Rule::T1IV => "f has odd multiplicity in some p_i",
            Rule::C1I => "f divides two distinct p_i, or some p_i with even multiplicity",
            Rule::C1II => "f has odd multiplicity in some p_j and divides some other p_i",
            Rule::CClosed | Rule::COpen => "f divides some p_i, and every multiplicity of f is even",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Pass,
    Fail,
    HypothesisUnsupported,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::HypothesisUnsupported => "HYPOTHESIS-UNSUPPORTED",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A ball and the claimed shape of the set inside it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub ball: Ball,
    pub shape: LocalShape,
    /// A ball claimed to lie in the interior of the set and to meet `Z(f)`
    /// in a piece of full dimension `d - 1`.
    pub interior: Option<Ball>,
}

impl Witness {
    pub fn new(ball: Ball, shape: LocalShape) -> Witness {
        Witness { ball, shape, interior: None }
    }

    pub fn with_interior(mut self, ball: Ball) -> Witness {
        self.interior = Some(ball);
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LintOptions {
    /// Lattice points per axis for shape checks.
    pub per_axis: usize,
    /// Lattice points per axis for the zero search.
    pub zero_per_axis: usize,
    /// Segments bisected by the zero search.
    pub zero_budget: usize,
    pub tolerances: Tolerances,
    /// Treat unsupported hypotheses as given and report PASS/FAIL.
    pub assume_hypotheses: bool,
}

impl Default for LintOptions {
    fn default() -> Self {
        LintOptions {
            per_axis: 33,
            zero_per_axis: DEFAULT_ZERO_PER_AXIS,
            zero_budget: DEFAULT_ZERO_BUDGET,
            tolerances: Tolerances::default(),
            assume_hypotheses: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LintError {
    ConstantF,
    ZeroPolynomial { index: usize },
    DimensionMismatch { expected: usize, found: usize },
    WrongShape { rule: Rule, expected: &'static str, found: &'static str },
    WrongKind { rule: Rule, expected: Kind, found: Kind },
    /// C1-I and C1-II need every atom to read `p_i >= 0`.
    AtomDiscipline { rule: Rule },
    NotEnoughWitnesses,
    MixedPolynomials,
    UnsupportedRule { rule: Rule },
    Geom(GeomError),
}

impl From<GeomError> for LintError {
    fn from(e: GeomError) -> Self {
        LintError::Geom(e)
    }
}

impl fmt::Display for LintError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LintError::ConstantF => f.write_str("f must be non-constant"),
            LintError::ZeroPolynomial { index } => write!(f, "p_{} is the zero polynomial", index + 1),
            LintError::DimensionMismatch { expected, found } => {
                write!(f, "dimension {} does not match {}", found, expected)
            }
            LintError::WrongShape { rule, expected, found } => {
                write!(f, "{} needs a {} witness, got {}", rule, expected, found)
            }
            LintError::WrongKind { rule, expected, found } => {
                write!(f, "{} needs an {} representation, got {}", rule, expected, found)
            }
            LintError::AtomDiscipline { rule } => {
                write!(f, "{} needs every atom to be of the form p_i >= 0", rule)
            }
            LintError::NotEnoughWitnesses => f.write_str("at least two witnesses are needed"),
            LintError::MixedPolynomials => {
                f.write_str("witnesses describe different polynomials")
            }
            LintError::UnsupportedRule { rule } => write!(f, "{} cannot be used here", rule),
            LintError::Geom(e) => write!(f, "{}", e),
        }
    }
}

/// Sampling evidence for the interior condition.
#[derive(Clone, Debug, PartialEq)]
pub struct InteriorReport {
    pub ball: Ball,
    /// Agreement means the lattice point lies in the set.
    pub membership: SampleReport,
    pub nonsingular_zero: Option<NonsingularZero>,
    pub supported: bool,
}

/// Sampled hypotheses of one witness.
#[derive(Clone, Debug, PartialEq)]
pub struct HypothesisCheck {
    pub witness: Witness,
    /// Points on `Z(f)` were left out of the shape comparison.
    pub off_zero_set: bool,
    /// Shape agreement, with the zero search result attached.
    pub shape: SampleReport,
    pub interior: Option<InteriorReport>,
    pub supported: bool,
    pub notes: Vec<String>,
}

/// Exact divisibility data for `f` against every `p_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evidence {
    /// `multiplicity(f, p_i)` for each `i`.
    pub multiplicities: Vec<u32>,
    pub dividing: Vec<usize>,
    pub odd: Vec<usize>,
    pub even: Vec<usize>,
    /// The disjunct of the conclusion that holds, if any.
    pub branch: Option<String>,
}

impl Evidence {
    fn of(f: &Polynomial, rep: &Representation) -> Result<Evidence, LintError> {
        let mut multiplicities = Vec::with_capacity(rep.polys().len());
        for (index, p) in rep.polys().iter().enumerate() {
            let k = multiplicity(f, p).map_err(|e| match e {
                FactorError::ZeroPolynomial => LintError::ZeroPolynomial { index },
                FactorError::ConstantFactor => LintError::ConstantF,
                _ => LintError::DimensionMismatch { expected: rep.dim(), found: f.dim() },
            })?;
            multiplicities.push(k);
        }
        let dividing: Vec<usize> = (0..multiplicities.len()).filter(|&i| multiplicities[i] > 0).collect();
        let odd = dividing.iter().copied().filter(|&i| multiplicities[i] % 2 == 1).collect();
        let even = dividing.iter().copied().filter(|&i| multiplicities[i] % 2 == 0).collect();
        Ok(Evidence { multiplicities, dividing, odd, even, branch: None })
    }
}

/// Grid-scale data for the boundary rule.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryEvidence {
    pub grid: GridSpec,
    pub cells: usize,
    pub within_bound: usize,
    pub first_violation: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LintVerdict {
    pub rule: Rule,
    pub status: Status,
    /// `f`, normalized; absent for the boundary rule.
    pub f: Option<Polynomial>,
    pub irreducibility: Option<Irreducibility>,
    pub conclusion_holds: bool,
    pub evidence: Evidence,
    pub hypotheses: Vec<HypothesisCheck>,
    pub hypotheses_assumed: bool,
    pub boundary: Option<BoundaryEvidence>,
}

impl LintVerdict {
    pub fn hypotheses_supported(&self) -> bool {
        self.hypotheses.iter().all(|h| h.supported)
    }

    /// One line for humans.
    pub fn summary(&self) -> String {
        let f = self.f.as_ref().map(|f| format!(" f = {}", f)).unwrap_or_default();
        let mut s = format!("{} {}{}", self.rule, self.status, f);
        if !self.evidence.multiplicities.is_empty() {
            s.push_str(&format!(" multiplicities {:?}", self.evidence.multiplicities));
        }
        if let Some(b) = &self.evidence.branch {
            s.push_str(&format!(" ({})", b));
        }
        s
    }
}

fn status_of(hypotheses: &[HypothesisCheck], conclusion: bool, opts: &LintOptions) -> Status {
    if !opts.assume_hypotheses && hypotheses.iter().any(|h| !h.supported) {
        Status::HypothesisUnsupported
    } else if conclusion {
        Status::Pass
    } else {
        Status::Fail
    }
}

fn prepare(rep: &Representation, f: &Polynomial) -> Result<Polynomial, LintError> {
    if f.dim() != rep.dim() {
        return Err(LintError::DimensionMismatch { expected: rep.dim(), found: f.dim() });
    }
    if f.is_constant() {
        return Err(LintError::ConstantF);
    }
    if let Some(index) = rep.polys().iter().position(Polynomial::is_zero) {
        return Err(LintError::ZeroPolynomial { index });
    }
    Ok(f.normalize().expect("non-constant"))
}

fn same_up_to_constant(a: &Polynomial, b: &Polynomial) -> bool {
    a.dim() == b.dim() && !a.is_zero() && !b.is_zero() && a.normalize() == b.normalize()
}

/// Runs the sampled checks of one witness against `rep`.
pub fn check_witness(
    rep: &Representation,
    f: &Polynomial,
    witness: &Witness,
    off_zero_set: bool,
    needs_interior: bool,
    opts: &LintOptions,
) -> Result<HypothesisCheck, LintError> {
    for d in [witness.ball.dim(), witness.shape.poly().dim()] {
        if d != rep.dim() {
            return Err(LintError::DimensionMismatch { expected: rep.dim(), found: d });
        }
    }
    let mut notes = Vec::new();
    let mut shape = if off_zero_set {
        check_local_shape_off_zero(rep, &witness.shape, &witness.ball, opts.per_axis)?
    } else {
        check_local_shape(rep, &witness.shape, &witness.ball, opts.per_axis)?
    };
    shape.nonsingular_zero = find_nonsingular_zero_with(
        f,
        &witness.ball,
        opts.zero_budget,
        opts.zero_per_axis,
        opts.tolerances,
    );
    let mut supported = true;
    if !same_up_to_constant(witness.shape.poly(), f) {
        supported = false;
        notes.push(String::from("witness shape polynomial is not a constant multiple of f"));
    }
    if !shape.full_agreement() {
        supported = false;
        notes.push(if shape.vacuous {
            String::from("no lattice point was tested")
        } else {
            format!("shape disagrees at {} of {} lattice points", shape.tested - shape.agreements, shape.tested)
        });
    }
    if shape.nonsingular_zero.is_none() {
        supported = false;
        notes.push(String::from("no non-singular zero of f found in the ball"));
    }
    let interior = match (&witness.interior, needs_interior) {
        (Some(ball), _) => {
            let report = check_interior(rep, f, ball, opts)?;
            if needs_interior && !report.supported {
                supported = false;
                notes.push(String::from("interior ball is not inside the set or misses a non-singular zero of f"));
            }
            Some(report)
        }
        (None, true) => {
            supported = false;
            notes.push(String::from("no interior ball was given"));
            None
        }
        (None, false) => None,
    };
    if supported {
        notes.push(format!(
            "consistent with the hypotheses at sampled scale ({} lattice points)",
            shape.tested
        ));
    }
    Ok(HypothesisCheck { witness: witness.clone(), off_zero_set, shape, interior, supported, notes })
}

fn check_interior(
    rep: &Representation,
    f: &Polynomial,
    ball: &Ball,
    opts: &LintOptions,
) -> Result<InteriorReport, LintError> {
    if ball.dim() != rep.dim() {
        return Err(LintError::DimensionMismatch { expected: rep.dim(), found: ball.dim() });
    }
    let membership = Membership::new(rep);
    let mut report = SampleReport {
        tested: 0,
        agreements: 0,
        first_counterexample: None,
        nonsingular_zero: None,
        vacuous: true,
    };
    for point in ball_lattice(ball, opts.per_axis) {
        report.tested += 1;
        report.vacuous = false;
        if membership.contains(&point) {
            report.agreements += 1;
        } else if report.first_counterexample.is_none() {
            report.first_counterexample = Some(point);
        }
    }
    let zero = find_nonsingular_zero_with(f, ball, opts.zero_budget, opts.zero_per_axis, opts.tolerances);
    let supported = report.full_agreement() && zero.is_some();
    Ok(InteriorReport { ball: ball.clone(), membership: report, nonsingular_zero: zero, supported })
}

fn expect_shape(rule: Rule, w: &Witness, ok: bool, expected: &'static str) -> Result<(), LintError> {
    if ok {
        Ok(())
    } else {
        Err(LintError::WrongShape { rule, expected, found: w.shape.name() })
    }
}

fn verdict(
    rule: Rule,
    f: Polynomial,
    evidence: Evidence,
    conclusion: bool,
    hypotheses: Vec<HypothesisCheck>,
    opts: &LintOptions,
) -> LintVerdict {
    let status = status_of(&hypotheses, conclusion, opts);
    let irreducibility = Some(check_irreducible(&f));
    LintVerdict {
        rule,
        status,
        f: Some(f),
        irreducibility,
        conclusion_holds: conclusion,
        evidence,
        hypotheses,
        hypotheses_assumed: opts.assume_hypotheses,
        boundary: None,
    }
}

/// T1-II. Any witness shape is accepted; only the split of the ball away
/// from `Z(f)` is compared.
pub fn lint_factor(
    rep: &Representation,
    f: &Polynomial,
    witness: &Witness,
    opts: &LintOptions,
) -> Result<LintVerdict, LintError> {
    let f = prepare(rep, f)?;
    let mut evidence = Evidence::of(&f, rep)?;
    let holds = !evidence.dividing.is_empty();
    if holds {
        evidence.branch = Some(format!("f divides p_{}", evidence.dividing[0] + 1));
    }
    let h = check_witness(rep, &f, witness, true, false, opts)?;
    Ok(verdict(Rule::T1II, f, evidence, holds, alloc::vec![h], opts))
}

/// T1-III for closed half-space witnesses, T1-IV for open ones.
pub fn lint_odd(
    rep: &Representation,
    f: &Polynomial,
    witness: &Witness,
    opts: &LintOptions,
) -> Result<LintVerdict, LintError> {
    let rule = match witness.shape {
        LocalShape::ClosedHalf(_) => Rule::T1III,
        LocalShape::OpenHalf(_) => Rule::T1IV,
        _ => return Err(LintError::WrongShape { rule: Rule::T1III, expected: "closed-half or open-half", found: witness.shape.name() }),
    };
    let f = prepare(rep, f)?;
    let mut evidence = Evidence::of(&f, rep)?;
    let holds = !evidence.odd.is_empty();
    if let Some(&i) = evidence.odd.first() {
        evidence.branch = Some(format!("odd multiplicity {} in p_{}", evidence.multiplicities[i], i + 1));
    }
    let h = check_witness(rep, &f, witness, false, false, opts)?;
    Ok(verdict(rule, f, evidence, holds, alloc::vec![h], opts))
}

/// C1-I.
pub fn lint_zero_locally(
    rep: &Representation,
    f: &Polynomial,
    witness: &Witness,
    opts: &LintOptions,
) -> Result<LintVerdict, LintError> {
    if !rep.only_nonnegative_atoms() {
        return Err(LintError::AtomDiscipline { rule: Rule::C1I });
    }
    expect_shape(Rule::C1I, witness, matches!(witness.shape, LocalShape::ZeroSet(_)), "zero-set")?;
    let f = prepare(rep, f)?;
    let mut evidence = Evidence::of(&f, rep)?;
    let mut branches = Vec::new();
    if evidence.dividing.len() >= 2 {
        branches.push(format!(
            "two indices: f divides p_{} and p_{}",
            evidence.dividing[0] + 1,
            evidence.dividing[1] + 1
        ));
    }
    if let Some(&i) = evidence.even.first() {
        branches.push(format!("even multiplicity {} in p_{}", evidence.multiplicities[i], i + 1));
    }
    let holds = !branches.is_empty();
    if holds {
        evidence.branch = Some(branches.join("; "));
    }
    let h = check_witness(rep, &f, witness, false, false, opts)?;
    Ok(verdict(Rule::C1I, f, evidence, holds, alloc::vec![h], opts))
}

/// C1-II.
pub fn lint_both_shapes(
    rep: &Representation,
    f: &Polynomial,
    witness_closed: &Witness,
    witness_zero: &Witness,
    opts: &LintOptions,
) -> Result<LintVerdict, LintError> {
    if !rep.only_nonnegative_atoms() {
        return Err(LintError::AtomDiscipline { rule: Rule::C1II });
    }
    expect_shape(Rule::C1II, witness_closed, matches!(witness_closed.shape, LocalShape::ClosedHalf(_)), "closed-half")?;
    expect_shape(Rule::C1II, witness_zero, matches!(witness_zero.shape, LocalShape::ZeroSet(_)), "zero-set")?;
    let f = prepare(rep, f)?;
    let mut evidence = Evidence::of(&f, rep)?;
    let pair = evidence
        .odd
        .iter()
        .find_map(|&j| evidence.dividing.iter().find(|&&i| i != j).map(|&i| (j, i)));
    if let Some((j, i)) = pair {
        evidence.branch = Some(format!("odd multiplicity in p_{}, divides p_{}", j + 1, i + 1));
    }
    let hs = alloc::vec![
        check_witness(rep, &f, witness_closed, false, false, opts)?,
        check_witness(rep, &f, witness_zero, false, false, opts)?,
    ];
    Ok(verdict(Rule::C1II, f, evidence, pair.is_some(), hs, opts))
}

fn all_even(evidence: &mut Evidence) -> bool {
    let holds = !evidence.dividing.is_empty() && evidence.odd.is_empty();
    if holds {
        evidence.branch = Some(format!("all {} multiplicities even", evidence.dividing.len()));
    }
    holds
}

/// C-closed.
pub fn lint_elementary_closed(
    rep: &Representation,
    f: &Polynomial,
    witness: &Witness,
    opts: &LintOptions,
) -> Result<LintVerdict, LintError> {
    if rep.kind() != Kind::ElementaryClosed {
        return Err(LintError::WrongKind { rule: Rule::CClosed, expected: Kind::ElementaryClosed, found: rep.kind() });
    }
    expect_shape(Rule::CClosed, witness, matches!(witness.shape, LocalShape::ZeroSet(_)), "zero-set")?;
    let f = prepare(rep, f)?;
    let mut evidence = Evidence::of(&f, rep)?;
    let holds = all_even(&mut evidence);
    let h = check_witness(rep, &f, witness, false, true, opts)?;
    Ok(verdict(Rule::CClosed, f, evidence, holds, alloc::vec![h], opts))
}

/// C-open.
pub fn lint_elementary_open(
    rep: &Representation,
    f: &Polynomial,
    witness: &Witness,
    opts: &LintOptions,
) -> Result<LintVerdict, LintError> {
    if rep.kind() != Kind::ElementaryOpen {
        return Err(LintError::WrongKind { rule: Rule::COpen, expected: Kind::ElementaryOpen, found: rep.kind() });
    }
    expect_shape(Rule::COpen, witness, matches!(witness.shape, LocalShape::ComplementOfZero(_)), "complement-of-zero")?;
    let f = prepare(rep, f)?;
    let mut evidence = Evidence::of(&f, rep)?;
    let holds = all_even(&mut evidence);
    let h = check_witness(rep, &f, witness, false, false, opts)?;
    Ok(verdict(Rule::COpen, f, evidence, holds, alloc::vec![h], opts))
}

/// T1-I at grid scale. Every boundary cell must have some `p_i` small at
/// its center relative to a local gradient bound; cells that miss the bound
/// point at too coarse a grid, so the status is PASS or
/// HYPOTHESIS-UNSUPPORTED.
pub fn lint_boundary(rep: &Representation, grid: &GridSpec) -> Result<LintVerdict, LintError> {
    let cells = boundary_cells(rep, grid)?;
    let within = cells.iter().filter(|c| c.within_bound).count();
    let first_violation = cells.iter().find(|c| !c.within_bound).map(|c| c.cell.clone());
    let status = if first_violation.is_none() { Status::Pass } else { Status::HypothesisUnsupported };
    Ok(LintVerdict {
        rule: Rule::T1I,
        status,
        f: None,
        irreducibility: None,
        conclusion_holds: first_violation.is_none(),
        evidence: Evidence { multiplicities: Vec::new(), dividing: Vec::new(), odd: Vec::new(), even: Vec::new(), branch: None },
        hypotheses: Vec::new(),
        hypotheses_assumed: false,
        boundary: Some(BoundaryEvidence { grid: grid.clone(), cells: cells.len(), within_bound: within, first_violation }),
    })
}

/// What a supported witness forces on any representation of the given kind.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Demand {
    /// Some `p_i` has `f` with odd multiplicity.
    OddSomewhere,
    /// `f` divides some `p_i` and all its multiplicities are even.
    EvenEverywhere,
    /// `f` divides some `p_i`.
    Divides,
}

impl Demand {
    pub fn as_str(self) -> &'static str {
        match self {
            Demand::OddSomewhere => "odd multiplicity in some p_i",
            Demand::EvenEverywhere => "even multiplicity in every p_i divisible by f",
            Demand::Divides => "f divides some p_i",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Requirement {
    pub rule: Rule,
    pub demand: Demand,
    pub hypotheses: HypothesisCheck,
}

/// Two supported requirements on the same `f` that no polynomial list meets
/// at once: some multiplicity odd, all multiplicities even.
#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    pub kind: Kind,
    pub f: Polynomial,
    pub odd_demand: Requirement,
    pub even_demand: Requirement,
    pub conclusion: String,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Contradiction {
    Certificate(Box<Certificate>),
    Consistent { requirements: Vec<Requirement>, reason: String },
}

impl Contradiction {
    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            Contradiction::Certificate(c) => Some(c),
            Contradiction::Consistent { .. } => None,
        }
    }
}

/// Checks the witnesses against the set described by `set` (in any
/// representation) and looks for an odd demand next to an all-even demand.
/// The certificate is relative to the witnesses: their hypotheses are only
/// verified at sampled scale.
pub fn derive_contradiction(
    set: &Representation,
    kind: Kind,
    witnesses: &[(Witness, Rule)],
    opts: &LintOptions,
) -> Result<Contradiction, LintError> {
    if witnesses.len() < 2 {
        return Err(LintError::NotEnoughWitnesses);
    }
    if !matches!(kind, Kind::ElementaryClosed | Kind::ElementaryOpen) {
        return Err(LintError::WrongKind { rule: Rule::CClosed, expected: Kind::ElementaryClosed, found: kind });
    }
    let f = witnesses[0].0.shape.poly();
    if f.is_constant() {
        return Err(LintError::ConstantF);
    }
    for (w, _) in witnesses {
        if w.ball.dim() != set.dim() || w.shape.poly().dim() != set.dim() {
            return Err(LintError::DimensionMismatch { expected: set.dim(), found: w.ball.dim() });
        }
        if !same_up_to_constant(w.shape.poly(), f) {
            return Err(LintError::MixedPolynomials);
        }
    }
    let f = f.normalize().expect("non-constant");
    let mut requirements = Vec::new();
    for (w, rule) in witnesses {
        let (demand, needs_interior) = match (rule, &w.shape) {
            (Rule::T1III, LocalShape::ClosedHalf(_)) | (Rule::T1IV, LocalShape::OpenHalf(_)) => (Demand::OddSomewhere, false),
            (Rule::T1II, _) => (Demand::Divides, false),
            (Rule::CClosed, LocalShape::ZeroSet(_)) if kind == Kind::ElementaryClosed => (Demand::EvenEverywhere, true),
            (Rule::COpen, LocalShape::ComplementOfZero(_)) if kind == Kind::ElementaryOpen => (Demand::EvenEverywhere, false),
            (Rule::CClosed | Rule::COpen, _) if !matches!(
                (rule, kind),
                (Rule::CClosed, Kind::ElementaryClosed) | (Rule::COpen, Kind::ElementaryOpen)
            ) => {
                return Err(LintError::WrongKind {
                    rule: *rule,
                    expected: if *rule == Rule::CClosed { Kind::ElementaryClosed } else { Kind::ElementaryOpen },
                    found: kind,
                })
            }
            (Rule::T1III | Rule::T1IV | Rule::CClosed | Rule::COpen, _) => {
                let expected = match rule {
                    Rule::T1III => "closed-half",
                    Rule::T1IV => "open-half",
                    Rule::CClosed => "zero-set",
                    _ => "complement-of-zero",
                };
                return Err(LintError::WrongShape { rule: *rule, expected, found: w.shape.name() });
            }
            (other, _) => return Err(LintError::UnsupportedRule { rule: *other }),
        };
        let hypotheses = check_witness(set, &f, w, *rule == Rule::T1II, needs_interior, opts)?;
        requirements.push(Requirement { rule: *rule, demand, hypotheses });
    }
    let usable = |r: &&Requirement| opts.assume_hypotheses || r.hypotheses.supported;
    let odd = requirements.iter().filter(usable).find(|r| r.demand == Demand::OddSomewhere);
    let even = requirements.iter().filter(usable).find(|r| r.demand == Demand::EvenEverywhere);
    if let (Some(odd), Some(even)) = (odd, even) {
        return Ok(Contradiction::Certificate(Box::new(Certificate {
            kind,
            f: f.clone(),
            conclusion: format!(
                "no {} representation matches these witnesses: {} demands an odd multiplicity of {} while {} demands only even ones",
                kind, odd.rule, f, even.rule
            ),
            odd_demand: odd.clone(),
            even_demand: even.clone(),
        })));
    }
    let reason = match (odd, even) {
        (None, None) => "no supported parity demand",
        (Some(_), None) => "no supported all-even demand",
        (None, Some(_)) => "no supported odd demand",
        _ => unreachable!(),
    };
    Ok(Contradiction::Consistent { requirements, reason: String::from(reason) })
}

/// Candidate witness balls centred on boundary cells where `f` changes sign
/// or vanishes. Proposals are unverified; pass them through the lints.
pub fn propose_witness_balls(
    rep: &Representation,
    f: &Polynomial,
    grid: &GridSpec,
    limit: usize,
) -> Result<Vec<Ball>, LintError> {
    let cells = boundary_cells(rep, grid)?;
    let n = grid.resolution();
    let width = grid
        .bbox()
        .iter()
        .map(|(lo, hi)| (hi - lo) / int(n as i64))
        .min()
        .expect("non-empty box");
    let mut out = Vec::new();
    for cell in cells {
        if out.len() == limit {
            break;
        }
        let flat = grid.flatten(&cell.cell, n);
        let center = grid.cell_center(flat);
        let half: Rational = &width / int(2);
        let corners: Vec<_> = (0..1usize << grid.dim())
            .map(|mask| {
                center
                    .iter()
                    .enumerate()
                    .map(|(a, c)| if (mask >> a) & 1 == 1 { c + &half } else { c - &half })
                    .collect::<Vec<_>>()
            })
            .collect();
        let signs: Vec<_> = corners.iter().map(|p| f.sign_at(p).expect("same dimension")).collect();
        let touches = signs.contains(&crate::sign::Sign::Zero)
            || signs.windows(2).any(|w| w[0] != w[1]);
        if touches {
            out.push(Ball::new(center, width.clone() * int(2))?);
        }
    }
    Ok(out)
}
