//! Boolean formulas over sign conditions and the representations built on
//! them.

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::{self, Write};

use crate::poly::{PolyError, Polynomial};
use crate::rational::Rational;
use crate::sign::{Sign, SignSet};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    True,
    False,
    /// `sign p_index(x) ∈ signs`.
    Atom { index: usize, signs: SignSet },
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Not(Box<Formula>),
}

impl Formula {
    pub fn atom(index: usize, signs: SignSet) -> Formula {
        Formula::Atom { index, signs }
    }

    /// Conjunction; a single child is returned as is.
    pub fn and(mut children: Vec<Formula>) -> Formula {
        if children.len() == 1 {
            children.pop().expect("one child")
        } else {
            Formula::And(children)
        }
    }

    pub fn or(mut children: Vec<Formula>) -> Formula {
        if children.len() == 1 {
            children.pop().expect("one child")
        } else {
            Formula::Or(children)
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(child: Formula) -> Formula {
        Formula::Not(Box::new(child))
    }

    /// Truth value given the sign of every polynomial.
    pub fn eval_signs(&self, signs: &[Sign]) -> bool {
        match self {
            Formula::True => true,
            Formula::False => false,
            Formula::Atom { index, signs: set } => set.contains(signs[*index]),
            Formula::And(cs) => cs.iter().all(|c| c.eval_signs(signs)),
            Formula::Or(cs) => cs.iter().any(|c| c.eval_signs(signs)),
            Formula::Not(c) => !c.eval_signs(signs),
        }
    }

    /// Atoms in left-to-right order.
    pub fn atoms(&self) -> Vec<(usize, SignSet)> {
        let mut out = Vec::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut Vec<(usize, SignSet)>) {
        match self {
            Formula::True | Formula::False => {}
            Formula::Atom { index, signs } => out.push((*index, *signs)),
            Formula::And(cs) | Formula::Or(cs) => cs.iter().for_each(|c| c.collect_atoms(out)),
            Formula::Not(c) => c.collect_atoms(out),
        }
    }

    /// Atom sign sets when the formula is a single atom or a flat
    /// conjunction of atoms.
    pub fn conjunction_signs(&self) -> Option<Vec<SignSet>> {
        match self {
            Formula::Atom { signs, .. } => Some(alloc::vec![*signs]),
            Formula::And(cs) => cs
                .iter()
                .map(|c| match c {
                    Formula::Atom { signs, .. } => Some(*signs),
                    _ => None,
                })
                .collect(),
            _ => None,
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::True | Formula::False | Formula::Atom { .. } => 1,
            Formula::And(cs) | Formula::Or(cs) => 1 + cs.iter().map(Formula::depth).max().unwrap_or(0),
            Formula::Not(c) => 1 + c.depth(),
        }
    }

    fn check(&self, m: usize) -> Result<(), FormulaError> {
        match self {
            Formula::True | Formula::False => Ok(()),
            Formula::Atom { index, .. } if *index >= m => {
                Err(FormulaError::IndexOutOfRange { index: *index, len: m })
            }
            Formula::Atom { .. } => Ok(()),
            Formula::And(cs) | Formula::Or(cs) => {
                if cs.is_empty() {
                    return Err(FormulaError::EmptyConnective);
                }
                cs.iter().try_for_each(|c| c.check(m))
            }
            Formula::Not(c) => c.check(m),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    General,
    /// `p_1 ≥ 0 ∧ … ∧ p_m ≥ 0`.
    ElementaryClosed,
    /// `p_1 > 0 ∧ … ∧ p_m > 0`.
    ElementaryOpen,
    /// `p_1 = 0 ∧ … ∧ p_m = 0`.
    Algebraic,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::General => "general",
            Kind::ElementaryClosed => "elementary-closed",
            Kind::ElementaryOpen => "elementary-open",
            Kind::Algebraic => "algebraic",
        }
    }

    pub fn from_name(name: &str) -> Option<Kind> {
        match name {
            "general" => Some(Kind::General),
            "elementary-closed" | "closed" => Some(Kind::ElementaryClosed),
            "elementary-open" | "open" => Some(Kind::ElementaryOpen),
            "algebraic" => Some(Kind::Algebraic),
            _ => None,
        }
    }

    fn sign_set(self) -> Option<SignSet> {
        match self {
            Kind::General => None,
            Kind::ElementaryClosed => Some(SignSet::NON_NEGATIVE),
            Kind::ElementaryOpen => Some(SignSet::POSITIVE),
            Kind::Algebraic => Some(SignSet::ZERO),
        }
    }

    /// The most specific kind a formula qualifies for.
    pub fn infer(formula: &Formula) -> Kind {
        let Some(signs) = formula.conjunction_signs() else {
            return Kind::General;
        };
        [Kind::ElementaryClosed, Kind::ElementaryOpen, Kind::Algebraic]
            .into_iter()
            .find(|k| signs.iter().all(|s| Some(*s) == k.sign_set()))
            .unwrap_or(Kind::General)
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FormulaError {
    EmptyList,
    ZeroDimension,
    DimensionMismatch { index: usize, expected: usize, found: usize },
    IndexOutOfRange { index: usize, len: usize },
    EmptyConnective,
    KindMismatch { kind: Kind },
    PointLength { expected: usize, found: usize },
}

impl fmt::Display for FormulaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormulaError::EmptyList => f.write_str("empty polynomial list"),
            FormulaError::ZeroDimension => f.write_str("ambient dimension must be positive"),
            FormulaError::DimensionMismatch { index, expected, found } => write!(
                f,
                "polynomial #{} has dimension {}, expected {}",
                index + 1,
                found,
                expected
            ),
            FormulaError::IndexOutOfRange { index, len } => {
                write!(f, "atom refers to polynomial #{} of {}", index + 1, len)
            }
            FormulaError::EmptyConnective => f.write_str("connective without operands"),
            FormulaError::KindMismatch { kind } => write!(f, "formula is not {}", kind),
            FormulaError::PointLength { expected, found } => {
                write!(f, "point has {} coordinates, expected {}", found, expected)
            }
        }
    }
}

/// A polynomial list `p_1, …, p_m` with a formula over sign atoms on them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    dim: usize,
    polys: Vec<Polynomial>,
    formula: Formula,
    kind: Kind,
}

impl Representation {
    /// Checks the invariants and infers the kind.
    pub fn new(dim: usize, polys: Vec<Polynomial>, formula: Formula) -> Result<Representation, FormulaError> {
        let kind = Kind::infer(&formula);
        Representation::with_kind(dim, polys, formula, kind)
    }

    pub fn with_kind(
        dim: usize,
        polys: Vec<Polynomial>,
        formula: Formula,
        kind: Kind,
    ) -> Result<Representation, FormulaError> {
        if dim == 0 {
            return Err(FormulaError::ZeroDimension);
        }
        for (index, p) in polys.iter().enumerate() {
            if p.dim() != dim {
                return Err(FormulaError::DimensionMismatch { index, expected: dim, found: p.dim() });
            }
        }
        formula.check(polys.len())?;
        if let Some(set) = kind.sign_set() {
            let ok = formula
                .conjunction_signs()
                .is_some_and(|signs| signs.iter().all(|s| *s == set));
            if !ok {
                return Err(FormulaError::KindMismatch { kind });
            }
        }
        Ok(Representation { dim, polys, formula, kind })
    }

    pub fn elementary_closed(ps: Vec<Polynomial>) -> Result<Representation, FormulaError> {
        Representation::elementary(ps, Kind::ElementaryClosed)
    }

    pub fn elementary_open(ps: Vec<Polynomial>) -> Result<Representation, FormulaError> {
        Representation::elementary(ps, Kind::ElementaryOpen)
    }

    pub fn algebraic(ps: Vec<Polynomial>) -> Result<Representation, FormulaError> {
        Representation::elementary(ps, Kind::Algebraic)
    }

    fn elementary(ps: Vec<Polynomial>, kind: Kind) -> Result<Representation, FormulaError> {
        let dim = ps.first().ok_or(FormulaError::EmptyList)?.dim();
        let set = kind.sign_set().expect("elementary kind");
        let formula = Formula::and((0..ps.len()).map(|i| Formula::atom(i, set)).collect());
        Representation::with_kind(dim, ps, formula, kind)
    }

    /// The same formula and polynomials tagged as general.
    pub fn as_general(&self) -> Representation {
        Representation { kind: Kind::General, ..self.clone() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn polys(&self) -> &[Polynomial] {
        &self.polys
    }

    pub fn formula(&self) -> &Formula {
        &self.formula
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    /// Exact signs of every `p_i` at the point.
    pub fn signs_at(&self, point: &[Rational]) -> Result<Vec<Sign>, FormulaError> {
        if point.len() != self.dim {
            return Err(FormulaError::PointLength { expected: self.dim, found: point.len() });
        }
        self.polys
            .iter()
            .map(|p| p.sign_at(point))
            .collect::<Result<Vec<_>, PolyError>>()
            .map_err(|_| FormulaError::PointLength { expected: self.dim, found: point.len() })
    }

    /// Exact membership of the point in the represented set.
    pub fn contains(&self, point: &[Rational]) -> Result<bool, FormulaError> {
        Ok(self.formula.eval_signs(&self.signs_at(point)?))
    }

    /// Whether every atom reads `p_i ≥ 0`.
    pub fn only_nonnegative_atoms(&self) -> bool {
        self.formula.atoms().iter().all(|(_, s)| *s == SignSet::NON_NEGATIVE)
    }

    /// Appends a polynomial and conjoins `sign p ∈ signs` to the formula.
    pub fn conjoin(&self, p: Polynomial, signs: SignSet) -> Result<Representation, FormulaError> {
        let index = self.polys.len();
        let mut polys = self.polys.clone();
        polys.push(p);
        let mut children = match &self.formula {
            Formula::And(cs) => cs.clone(),
            other => alloc::vec![other.clone()],
        };
        children.push(Formula::atom(index, signs));
        let kind = if self.kind.sign_set() == Some(signs) { self.kind } else { Kind::General };
        Representation::with_kind(self.dim, polys, Formula::and(children), kind)
    }
}

/// Exact membership: `x ∈ A`.
pub fn eval_formula(rep: &Representation, point: &[Rational]) -> Result<bool, FormulaError> {
    rep.contains(point)
}

/// Canonical text in the formula grammar.
pub fn print_formula(rep: &Representation) -> String {
    let mut out = String::new();
    write_formula(&mut out, rep, rep.formula()).expect("writing to a String");
    out
}

fn write_formula(out: &mut String, rep: &Representation, f: &Formula) -> fmt::Result {
    match f {
        Formula::True => out.write_str("true"),
        Formula::False => out.write_str("false"),
        Formula::Atom { index, signs } => write_atom(out, &rep.polys()[*index], *signs),
        Formula::And(cs) | Formula::Or(cs) => {
            let sep = if matches!(f, Formula::And(_)) { " & " } else { " | " };
            out.write_char('(')?;
            for (i, c) in cs.iter().enumerate() {
                if i > 0 {
                    out.write_str(sep)?;
                }
                write_formula(out, rep, c)?;
            }
            out.write_char(')')
        }
        Formula::Not(c) => {
            out.write_char('!')?;
            if matches!(**c, Formula::And(_) | Formula::Or(_)) {
                write_formula(out, rep, c)
            } else {
                out.write_char('(')?;
                write_formula(out, rep, c)?;
                out.write_char(')')
            }
        }
    }
}

fn write_atom(out: &mut String, p: &Polynomial, signs: SignSet) -> fmt::Result {
    let poly = p.to_factored_string();
    let cmp = match signs {
        SignSet::NON_NEGATIVE => ">=",
        SignSet::POSITIVE => ">",
        SignSet::ZERO => "=",
        _ => return write!(out, "sign({}) in {}", poly, signs),
    };
    write!(out, "{} {} 0", poly, cmp)
}

impl fmt::Display for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_formula(self))
    }
}
