//! Text front-end for representations.
//!
//! ```text
//! formula := conj ('|' conj)*
//! conj    := neg ('&' neg)*
//! neg     := '!' neg | 'true' | 'false' | '(' formula ')' | atom
//! atom    := expr cmp expr | 'sign' '(' expr ')' 'in' '{' sign (',' sign)* '}'
//! cmp     := '>=' | '>' | '=' | '!=' | '<=' | '<'
//! expr    := term (('+' | '-') term)*
//! term    := unary ('*' unary)*
//! unary   := '-' unary | power
//! power   := primary ('^' integer)?
//! primary := integer | integer '/' integer | var | '(' expr ')'
//! var     := 'x' digits | 'x{' digits '}'
//! ```
//!
//! `p < q` and `p <= q` are stored as `q - p > 0` and `q - p >= 0`.
//! Polynomials are kept as the positive primitive rescaling of their first
//! occurrence; later atoms on a constant multiple reuse that entry.

use alloc::boxed::Box;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::formula::{Formula, Representation};
use crate::poly::Polynomial;
use crate::rational::Rational;
use crate::sign::{Sign, SignSet};

/// Largest accepted variable index.
pub const MAX_VARIABLE: usize = 1024;
/// Largest accepted exponent.
pub const MAX_EXPONENT: u32 = 64;
const MAX_DIGITS: usize = 256;
const MAX_DEPTH: usize = 200;
const MAX_TERMS: usize = 20_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    InvalidUtf8,
    UnexpectedChar(char),
    Unexpected { found: String, expected: &'static str },
    InvalidVariable,
    LiteralTooLong,
    ExponentTooLarge,
    ZeroDenominator,
    DimensionExceeded { variable: usize, dim: usize },
    ZeroAtom,
    InvalidSign,
    TooDeep,
    TooLarge,
    Empty,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::InvalidUtf8 => f.write_str("invalid UTF-8"),
            ParseErrorKind::UnexpectedChar(c) => write!(f, "unexpected character {:?}", c),
            ParseErrorKind::Unexpected { found, expected } => {
                write!(f, "expected {}, found {}", expected, found)
            }
            ParseErrorKind::InvalidVariable => {
                write!(f, "variables are x1 .. x{}", MAX_VARIABLE)
            }
            ParseErrorKind::LiteralTooLong => f.write_str("integer literal too long"),
            ParseErrorKind::ExponentTooLarge => write!(f, "exponent larger than {}", MAX_EXPONENT),
            ParseErrorKind::ZeroDenominator => f.write_str("zero denominator"),
            ParseErrorKind::DimensionExceeded { variable, dim } => {
                write!(f, "variable x{} exceeds dimension {}", variable, dim)
            }
            ParseErrorKind::ZeroAtom => f.write_str("atom polynomial is identically zero"),
            ParseErrorKind::InvalidSign => f.write_str("sign values are -1, 0 and 1"),
            ParseErrorKind::TooDeep => f.write_str("nesting too deep"),
            ParseErrorKind::TooLarge => f.write_str("expression too large"),
            ParseErrorKind::Empty => f.write_str("empty input"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input.
    pub offset: usize,
    /// 1-based.
    pub line: usize,
    /// 1-based, in characters.
    pub column: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.kind)
    }
}

/// Parses with the dimension set to the largest variable index used.
pub fn parse_formula(text: &str) -> Result<Representation, ParseError> {
    parse_formula_in(text, None)
}

/// Parses in a fixed ambient dimension when `dim` is given.
pub fn parse_formula_in(text: &str, dim: Option<usize>) -> Result<Representation, ParseError> {
    let tokens = lex(text).map_err(|(offset, kind)| locate(text, offset, kind))?;
    let mut max_var = None;
    for t in &tokens {
        if let Tok::Var(v) = t.tok {
            if let Some(d) = dim {
                if v >= d {
                    return Err(locate(text, t.start, ParseErrorKind::DimensionExceeded { variable: v + 1, dim: d }));
                }
            }
            max_var = max_var.max(Some(v));
        }
    }
    let dim = dim.unwrap_or_else(|| max_var.map_or(1, |v| v + 1)).max(1);
    let mut parser = Parser { tokens: &tokens, pos: 0, dim, depth: 0, polys: Vec::new(), normalized: Vec::new(), end: text.len() };
    let formula = parser.formula_eof().map_err(|(offset, kind)| locate(text, offset, kind))?;
    Ok(Representation::new(dim, parser.polys, formula).expect("parser output is well formed"))
}

/// Byte-level entry point: rejects invalid UTF-8 with the offending offset.
pub fn parse_formula_bytes(bytes: &[u8], dim: Option<usize>) -> Result<Representation, ParseError> {
    match core::str::from_utf8(bytes) {
        Ok(text) => parse_formula_in(text, dim),
        Err(e) => {
            let valid = core::str::from_utf8(&bytes[..e.valid_up_to()]).expect("valid prefix");
            let mut err = locate(valid, valid.len(), ParseErrorKind::InvalidUtf8);
            err.offset = e.valid_up_to();
            Err(err)
        }
    }
}

/// Parses a bare polynomial expression.
pub fn parse_polynomial(text: &str, dim: Option<usize>) -> Result<Polynomial, ParseError> {
    let tokens = lex(text).map_err(|(offset, kind)| locate(text, offset, kind))?;
    let mut max_var = None;
    for t in &tokens {
        if let Tok::Var(v) = t.tok {
            if let Some(d) = dim {
                if v >= d {
                    return Err(locate(text, t.start, ParseErrorKind::DimensionExceeded { variable: v + 1, dim: d }));
                }
            }
            max_var = max_var.max(Some(v));
        }
    }
    let dim = dim.unwrap_or_else(|| max_var.map_or(1, |v| v + 1)).max(1);
    let mut parser = Parser { tokens: &tokens, pos: 0, dim, depth: 0, polys: Vec::new(), normalized: Vec::new(), end: text.len() };
    let result = parser.expr().and_then(|p| match parser.peek() {
        Tok::Eof if parser.tokens.is_empty() => Err((0, ParseErrorKind::Empty)),
        Tok::Eof => Ok(p),
        _ => Err(parser.unexpected("end of input")),
    });
    result.map_err(|(offset, kind)| locate(text, offset, kind))
}

fn locate(text: &str, offset: usize, kind: ParseErrorKind) -> ParseError {
    let offset = offset.min(text.len());
    let before = &text[..offset];
    let line = before.matches('\n').count() + 1;
    let line_start = before.rfind('\n').map_or(0, |i| i + 1);
    let column = before[line_start..].chars().count() + 1;
    ParseError { offset, line, column, kind }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Var(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Ge,
    Gt,
    Eq,
    Ne,
    Le,
    Lt,
    And,
    Or,
    Not,
    True,
    False,
    Sign,
    In,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(n) => n.to_string(),
            Tok::Var(v) => alloc::format!("x{}", v + 1),
            Tok::Eof => "end of input".to_string(),
            other => alloc::format!("'{}'", other.symbol()),
        }
    }

    fn symbol(&self) -> &'static str {
        match self {
            Tok::Plus => "+",
            Tok::Minus => "-",
            Tok::Star => "*",
            Tok::Slash => "/",
            Tok::Caret => "^",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::LBrace => "{",
            Tok::RBrace => "}",
            Tok::Comma => ",",
            Tok::Ge => ">=",
            Tok::Gt => ">",
            Tok::Eq => "=",
            Tok::Ne => "!=",
            Tok::Le => "<=",
            Tok::Lt => "<",
            Tok::And => "&",
            Tok::Or => "|",
            Tok::Not => "!",
            Tok::True => "true",
            Tok::False => "false",
            Tok::Sign => "sign",
            Tok::In => "in",
            Tok::Int(_) | Tok::Var(_) | Tok::Eof => "",
        }
    }
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    start: usize,
}

type PResult<T> = Result<T, (usize, ParseErrorKind)>;

fn lex(text: &str) -> PResult<Vec<Token>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let two = |next: u8| bytes.get(i + 1) == Some(&next);
        let (tok, len) = match c {
            b'+' => (Tok::Plus, 1),
            b'-' => (Tok::Minus, 1),
            b'*' => (Tok::Star, 1),
            b'/' => (Tok::Slash, 1),
            b'^' => (Tok::Caret, 1),
            b'(' => (Tok::LParen, 1),
            b')' => (Tok::RParen, 1),
            b'{' => (Tok::LBrace, 1),
            b'}' => (Tok::RBrace, 1),
            b',' => (Tok::Comma, 1),
            b'>' if two(b'=') => (Tok::Ge, 2),
            b'>' => (Tok::Gt, 1),
            b'<' if two(b'=') => (Tok::Le, 2),
            b'<' => (Tok::Lt, 1),
            b'=' if two(b'=') => (Tok::Eq, 2),
            b'=' => (Tok::Eq, 1),
            b'&' if two(b'&') => (Tok::And, 2),
            b'&' => (Tok::And, 1),
            b'|' if two(b'|') => (Tok::Or, 2),
            b'|' => (Tok::Or, 1),
            b'!' if two(b'=') => (Tok::Ne, 2),
            b'!' => (Tok::Not, 1),
            b'0'..=b'9' => {
                let len = bytes[i..].iter().take_while(|b| b.is_ascii_digit()).count();
                if len > MAX_DIGITS {
                    return Err((start, ParseErrorKind::LiteralTooLong));
                }
                let n: BigInt = text[i..i + len].parse().expect("ascii digits");
                (Tok::Int(n), len)
            }
            b'x' if two(b'{') => {
                let digits = bytes[i + 2..].iter().take_while(|b| b.is_ascii_digit()).count();
                if digits == 0 || bytes.get(i + 2 + digits) != Some(&b'}') {
                    return Err((start, ParseErrorKind::InvalidVariable));
                }
                (Tok::Var(variable(&text[i + 2..i + 2 + digits], start)?), digits + 3)
            }
            b'x' if bytes.get(i + 1).is_some_and(u8::is_ascii_digit) => {
                let digits = bytes[i + 1..].iter().take_while(|b| b.is_ascii_digit()).count();
                (Tok::Var(variable(&text[i + 1..i + 1 + digits], start)?), digits + 1)
            }
            b'a'..=b'z' | b'A'..=b'Z' => {
                let len = bytes[i..].iter().take_while(|b| b.is_ascii_alphanumeric() || **b == b'_').count();
                let tok = match &text[i..i + len] {
                    "true" => Tok::True,
                    "false" => Tok::False,
                    "sign" => Tok::Sign,
                    "in" => Tok::In,
                    _ => {
                        let ch = text[i..].chars().next().expect("non-empty");
                        return Err((start, ParseErrorKind::UnexpectedChar(ch)));
                    }
                };
                (tok, len)
            }
            _ => {
                let ch = text[i..].chars().next().expect("char boundary");
                return Err((start, ParseErrorKind::UnexpectedChar(ch)));
            }
        };
        out.push(Token { tok, start });
        i += len;
    }
    Ok(out)
}

fn variable(digits: &str, start: usize) -> PResult<usize> {
    match digits.parse::<usize>() {
        Ok(k) if (1..=MAX_VARIABLE).contains(&k) && !digits.starts_with('0') => Ok(k - 1),
        _ => Err((start, ParseErrorKind::InvalidVariable)),
    }
}

struct Parser<'a> {
    tokens: &'a [Token],
    pos: usize,
    dim: usize,
    depth: usize,
    polys: Vec<Polynomial>,
    normalized: Vec<Polynomial>,
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        self.tokens.get(self.pos).map_or(&Tok::Eof, |t| &t.tok)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |t| t.start)
    }

    fn bump(&mut self) -> Tok {
        let t = self.peek().clone();
        self.pos += 1;
        t
    }

    fn unexpected(&self, expected: &'static str) -> (usize, ParseErrorKind) {
        (self.offset(), ParseErrorKind::Unexpected { found: self.peek().describe(), expected })
    }

    fn expect(&mut self, tok: Tok, expected: &'static str) -> PResult<()> {
        if *self.peek() == tok {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.unexpected(expected))
        }
    }

    fn enter(&mut self) -> PResult<()> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err((self.offset(), ParseErrorKind::TooDeep));
        }
        Ok(())
    }

    fn formula_eof(&mut self) -> PResult<Formula> {
        if self.tokens.is_empty() {
            return Err((0, ParseErrorKind::Empty));
        }
        let f = self.disjunction()?;
        match self.peek() {
            Tok::Eof => Ok(f),
            _ => Err(self.unexpected("'&', '|' or end of input")),
        }
    }

    fn disjunction(&mut self) -> PResult<Formula> {
        let mut parts = Vec::from([self.conjunction()?]);
        while *self.peek() == Tok::Or {
            self.pos += 1;
            parts.push(self.conjunction()?);
        }
        Ok(Formula::or(parts))
    }

    fn conjunction(&mut self) -> PResult<Formula> {
        let mut parts = Vec::from([self.negation()?]);
        while *self.peek() == Tok::And {
            self.pos += 1;
            parts.push(self.negation()?);
        }
        Ok(Formula::and(parts))
    }

    fn negation(&mut self) -> PResult<Formula> {
        self.enter()?;
        let out = match self.peek() {
            Tok::Not => {
                self.pos += 1;
                self.negation().map(|f| Formula::Not(Box::new(f)))
            }
            Tok::True => {
                self.pos += 1;
                Ok(Formula::True)
            }
            Tok::False => {
                self.pos += 1;
                Ok(Formula::False)
            }
            Tok::LParen => self.group_or_atom(),
            _ => self.atom(),
        };
        self.depth -= 1;
        out
    }

    /// A `(` opens either a polynomial or a sub-formula; the atom reading is
    /// tried first and the furthest error wins when both fail.
    fn group_or_atom(&mut self) -> PResult<Formula> {
        let (start, polys, normalized) = (self.pos, self.polys.len(), self.normalized.len());
        let atom_err = match self.atom() {
            Ok(f) => return Ok(f),
            Err(e) => e,
        };
        self.pos = start;
        self.polys.truncate(polys);
        self.normalized.truncate(normalized);
        self.pos += 1;
        let group = self.disjunction().and_then(|f| {
            self.expect(Tok::RParen, "')'")?;
            Ok(f)
        });
        match group {
            Ok(f) => Ok(f),
            Err(group_err) => Err(if atom_err.0 > group_err.0 { atom_err } else { group_err }),
        }
    }

    fn atom(&mut self) -> PResult<Formula> {
        let start = self.offset();
        if *self.peek() == Tok::Sign {
            self.pos += 1;
            self.expect(Tok::LParen, "'('")?;
            let p = self.expr()?;
            self.expect(Tok::RParen, "')'")?;
            self.expect(Tok::In, "'in'")?;
            let signs = self.sign_set()?;
            return self.make_atom(p, signs, start);
        }
        let lhs = self.expr()?;
        let cmp = match self.peek() {
            Tok::Ge | Tok::Gt | Tok::Eq | Tok::Ne | Tok::Le | Tok::Lt => self.bump(),
            _ => return Err(self.unexpected("a comparison")),
        };
        let rhs = self.expr()?;
        let (p, signs) = match cmp {
            Tok::Ge => (&lhs - &rhs, SignSet::NON_NEGATIVE),
            Tok::Gt => (&lhs - &rhs, SignSet::POSITIVE),
            Tok::Eq => (&lhs - &rhs, SignSet::ZERO),
            Tok::Ne => (&lhs - &rhs, SignSet::NONZERO),
            Tok::Le => (&rhs - &lhs, SignSet::NON_NEGATIVE),
            _ => (&rhs - &lhs, SignSet::POSITIVE),
        };
        self.make_atom(p, signs, start)
    }

    fn sign_set(&mut self) -> PResult<SignSet> {
        self.expect(Tok::LBrace, "'{'")?;
        let mut signs = Vec::new();
        loop {
            let at = self.offset();
            let negative = match self.peek() {
                Tok::Minus => {
                    self.pos += 1;
                    true
                }
                Tok::Plus => {
                    self.pos += 1;
                    false
                }
                _ => false,
            };
            let value = match self.bump() {
                Tok::Int(n) if n.is_zero() => Sign::Zero,
                Tok::Int(n) if n == BigInt::from(1) => {
                    if negative {
                        Sign::Negative
                    } else {
                        Sign::Positive
                    }
                }
                _ => return Err((at, ParseErrorKind::InvalidSign)),
            };
            signs.push(value);
            match self.bump() {
                Tok::Comma => continue,
                Tok::RBrace => break,
                _ => {
                    self.pos -= 1;
                    return Err(self.unexpected("',' or '}'"));
                }
            }
        }
        Ok(SignSet::new(&signs).expect("at least one sign"))
    }

    fn make_atom(&mut self, p: Polynomial, signs: SignSet, start: usize) -> PResult<Formula> {
        if p.is_zero() {
            return Err((start, ParseErrorKind::ZeroAtom));
        }
        let normalized = p.normalize().expect("nonzero");
        let lc = |q: &Polynomial| q.leading_term().expect("nonzero").1.is_positive();
        for (index, n) in self.normalized.iter().enumerate() {
            if *n == normalized {
                let same_sign = lc(&p) == lc(&self.polys[index]);
                let signs = if same_sign { signs } else { signs.flip() };
                return Ok(Formula::atom(index, signs));
            }
        }
        self.polys.push(p.primitive_part());
        self.normalized.push(normalized);
        Ok(Formula::atom(self.polys.len() - 1, signs))
    }

    fn expr(&mut self) -> PResult<Polynomial> {
        self.enter()?;
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => break,
            }
        }
        self.depth -= 1;
        Ok(acc)
    }

    fn term(&mut self) -> PResult<Polynomial> {
        let mut acc = self.unary()?;
        while *self.peek() == Tok::Star {
            let at = self.offset();
            self.pos += 1;
            let rhs = self.unary()?;
            acc = self.product(&acc, &rhs, at)?;
        }
        Ok(acc)
    }

    fn product(&self, a: &Polynomial, b: &Polynomial, at: usize) -> PResult<Polynomial> {
        if a.num_terms().saturating_mul(b.num_terms()) > 50 * MAX_TERMS {
            return Err((at, ParseErrorKind::TooLarge));
        }
        let p = a * b;
        if p.num_terms() > MAX_TERMS {
            return Err((at, ParseErrorKind::TooLarge));
        }
        Ok(p)
    }

    fn unary(&mut self) -> PResult<Polynomial> {
        if *self.peek() == Tok::Minus {
            self.enter()?;
            self.pos += 1;
            let p = -self.unary()?;
            self.depth -= 1;
            return Ok(p);
        }
        let base = self.primary()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        let at = self.offset();
        self.pos += 1;
        let e = match self.bump() {
            Tok::Int(n) => n,
            _ => {
                self.pos -= 1;
                return Err(self.unexpected("an exponent"));
            }
        };
        let e = match u32::try_from(&e) {
            Ok(e) if e <= MAX_EXPONENT => e,
            _ => return Err((at, ParseErrorKind::ExponentTooLarge)),
        };
        let mut acc = Polynomial::one(self.dim);
        for _ in 0..e {
            acc = self.product(&acc, &base, at)?;
        }
        Ok(acc)
    }

    fn primary(&mut self) -> PResult<Polynomial> {
        let at = self.offset();
        match self.bump() {
            Tok::Int(n) => {
                if *self.peek() == Tok::Slash {
                    self.pos += 1;
                    let d_at = self.offset();
                    let d = match self.bump() {
                        Tok::Int(d) => d,
                        _ => {
                            self.pos -= 1;
                            return Err(self.unexpected("a denominator"));
                        }
                    };
                    if d.is_zero() {
                        return Err((d_at, ParseErrorKind::ZeroDenominator));
                    }
                    return Ok(Polynomial::constant(self.dim, Rational::new(n, d)));
                }
                Ok(Polynomial::constant(self.dim, Rational::from_integer(n)))
            }
            Tok::Var(v) => Ok(Polynomial::var(self.dim, v)),
            Tok::LParen => {
                let p = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(p)
            }
            _ => {
                self.pos -= 1;
                let _ = at;
                Err(self.unexpected("a number, a variable or '('"))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{print_formula, Kind};
    use crate::rational::{int, ratio};

    #[test]
    fn saturn_text() {
        let rep = parse_formula("(1 - x1^2 - x2^2)*x2^2 >= 0").unwrap();
        assert_eq!(rep.polys().len(), 1);
        assert_eq!(rep.dim(), 2);
        assert_eq!(rep.kind(), Kind::ElementaryClosed);
        assert_eq!(print_formula(&rep), "(1 - x1^2 - x2^2)*x2^2 >= 0");
        assert!(rep.contains(&[int(0), ratio(1, 2)]).unwrap());
    }

    #[test]
    fn general_set_text() {
        let rep = parse_formula("x2 > 0 & ((x1-1)^2 + x2^2 <= 1 | x1^2 + x2^2 <= 1)").unwrap();
        assert_eq!(rep.dim(), 2);
        assert_eq!(rep.polys().len(), 3);
        assert_eq!(rep.kind(), Kind::General);
        assert!(rep.contains(&[int(1), ratio(1, 2)]).unwrap());
        assert!(!rep.contains(&[int(1), int(0)]).unwrap());
        let again = parse_formula(&print_formula(&rep)).unwrap();
        assert_eq!(again, rep);
    }

    #[test]
    fn dedup_by_constant_multiple() {
        let rep = parse_formula("2*x1 >= 0 & x1 >= 0 & -x1 > 0").unwrap();
        assert_eq!(rep.polys().len(), 1);
        assert_eq!(rep.formula().atoms()[2].1, SignSet::new(&[Sign::Negative]).unwrap());
        let rep = parse_formula("x1 <= 3/2").unwrap();
        assert_eq!(format!("{}", rep.polys()[0]), "3 - 2*x1");
    }

    #[test]
    fn not_equal() {
        let rep = parse_formula("x2 != 0 & !x1 = 0").unwrap();
        assert_eq!(rep.formula().atoms()[0].1, SignSet::NONZERO);
        assert!(rep.contains(&[int(1), int(-1)]).unwrap());
        assert!(!rep.contains(&[int(0), int(-1)]).unwrap());
    }

    #[test]
    fn sign_syntax_and_round_trip() {
        for text in [
            "x1 >= 0",
            "sign(x2) in {-1,1}",
            "!(x1 = 0)",
            "(x1 > 0 | !(x2 >= 0 & x1 = 0))",
            "true",
            "(x{12} >= 0 & false)",
        ] {
            let rep = parse_formula(text).unwrap();
            let printed = print_formula(&rep);
            assert_eq!(parse_formula(&printed).unwrap(), rep, "{} -> {}", text, printed);
        }
        assert_eq!(print_formula(&parse_formula("x1 >= 0").unwrap()), "x1 >= 0");
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_formula("x1 >= 0 &").unwrap_err();
        assert_eq!(e.offset, 9);
        let e = parse_formula("x1 >= 0 $ x2").unwrap_err();
        assert_eq!((e.offset, e.kind.clone()), (8, ParseErrorKind::UnexpectedChar('$')));
        let e = parse_formula("x1\n  >= 1/0").unwrap_err();
        assert_eq!((e.line, e.column, e.kind), (2, 8, ParseErrorKind::ZeroDenominator));
        let e = parse_formula_in("x3 >= 0", Some(2)).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::DimensionExceeded { variable: 3, dim: 2 });
        assert_eq!(parse_formula("x0 > 0").unwrap_err().kind, ParseErrorKind::InvalidVariable);
        assert_eq!(parse_formula("x1 - x1 > 0").unwrap_err().kind, ParseErrorKind::ZeroAtom);
        assert_eq!(parse_formula("").unwrap_err().kind, ParseErrorKind::Empty);
        assert_eq!(parse_formula("x1^65 > 0").unwrap_err().kind, ParseErrorKind::ExponentTooLarge);
        let deep: String = "(".repeat(500) + "x1";
        assert_eq!(parse_formula(&deep).unwrap_err().kind, ParseErrorKind::TooDeep);
        let big = "(x1+x2+x3+x4+x5+x6)^40 > 0";
        assert_eq!(parse_formula(big).unwrap_err().kind, ParseErrorKind::TooLarge);
        let e = parse_formula_bytes(b"x1 >= \xff", None).unwrap_err();
        assert_eq!((e.offset, e.kind), (6, ParseErrorKind::InvalidUtf8));
    }

    #[test]
    fn polynomial_only() {
        let p = parse_polynomial("x3^2*x1 - x2^2", None).unwrap();
        assert_eq!(p.dim(), 3);
        assert_eq!(p.eval(&[int(1), int(1), int(1)]).unwrap(), int(0));
        assert!(parse_polynomial("x1 >= 0", None).is_err());
    }
}
