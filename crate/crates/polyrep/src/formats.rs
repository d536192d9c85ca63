//! Small text formats: points, boxes, vertex lists and witness specs.

use std::fmt;

use polyrep_core::geom::LocalShape;
use polyrep_core::rational::parse_rational;
use polyrep_core::{Ball, Polynomial, Rational, Rule, Witness};

/// Rationals separated by whitespace or commas.
pub fn parse_rationals(text: &str) -> Result<Vec<Rational>, String> {
    text.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|s| !s.is_empty())
        .map(|s| parse_rational(s).ok_or_else(|| format!("not a rational number: \"{}\"", s)))
        .collect()
}

pub fn parse_point(text: &str, dim: usize) -> Result<Vec<Rational>, String> {
    let x = parse_rationals(text)?;
    if x.len() != dim {
        return Err(format!("expected {} coordinates, got {}", dim, x.len()));
    }
    Ok(x)
}

/// `lo hi` for a cube, or `lo1 hi1 lo2 hi2 ...`.
pub fn parse_bbox(text: &str, dim: usize) -> Result<Vec<(Rational, Rational)>, String> {
    let v = parse_rationals(text)?;
    let pairs: Vec<(Rational, Rational)> = match v.len() {
        2 => vec![(v[0].clone(), v[1].clone()); dim],
        n if n == 2 * dim => v.chunks(2).map(|c| (c[0].clone(), c[1].clone())).collect(),
        n => return Err(format!("a box needs 2 or {} numbers, got {}", 2 * dim, n)),
    };
    if pairs.iter().any(|(lo, hi)| lo >= hi) {
        return Err(String::from("every box side needs lo < hi"));
    }
    Ok(pairs)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for LineError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

/// One `x y` pair per line; blank lines and `#` comments are skipped.
pub fn parse_vertices(text: &str) -> Result<Vec<Vec<Rational>>, LineError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let v = parse_point(line, 2).map_err(|message| LineError { line: i + 1, message })?;
        out.push(v);
    }
    Ok(out)
}

/// A witness as given on the command line, before `f` is known.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessSpec {
    pub rule: Rule,
    pub shapes: Vec<ShapeSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShapeSpec {
    pub shape: String,
    pub ball: (Vec<Rational>, Rational),
    pub interior: Option<(Vec<Rational>, Rational)>,
}

fn parse_ball(text: &str) -> Result<(Vec<Rational>, Rational), String> {
    let (center, radius) = text
        .split_once(';')
        .ok_or_else(|| format!("a ball is \"center; radius\", got \"{}\"", text))?;
    let center = parse_rationals(center)?;
    let radius = parse_rational(radius.trim()).ok_or_else(|| format!("bad radius \"{}\"", radius.trim()))?;
    Ok((center, radius))
}

fn parse_shape(text: &str) -> Result<ShapeSpec, String> {
    let (main, interior) = match text.split_once("+interior@") {
        Some((m, i)) => (m, Some(parse_ball(i)?)),
        None => (text, None),
    };
    let (shape, ball) = main
        .split_once('@')
        .ok_or_else(|| format!("a shape is \"SHAPE@center;radius\", got \"{}\"", main))?;
    Ok(ShapeSpec { shape: shape.trim().to_string(), ball: parse_ball(ball)?, interior })
}

/// `RULE` for the boundary rule, otherwise
/// `RULE:SHAPE@c1 c2;r[+interior@c1 c2;r][,SHAPE@...]`.
pub fn parse_witness(text: &str) -> Result<WitnessSpec, String> {
    let (rule, rest) = match text.split_once(':') {
        Some((r, rest)) => (r.trim(), Some(rest)),
        None => (text.trim(), None),
    };
    let rule = Rule::from_id(rule).ok_or_else(|| format!("unknown rule \"{}\"", rule))?;
    let shapes = match rest {
        Some(rest) => rest.split(',').map(parse_shape).collect::<Result<Vec<_>, _>>()?,
        None => Vec::new(),
    };
    let needed = match rule {
        Rule::T1I => 0,
        Rule::C1II => 2,
        _ => 1,
    };
    if shapes.len() != needed {
        return Err(format!("{} takes {} shape(s), got {}", rule, needed, shapes.len()));
    }
    Ok(WitnessSpec { rule, shapes })
}

fn make_ball((center, radius): &(Vec<Rational>, Rational), dim: usize) -> Result<Ball, String> {
    if center.len() != dim {
        return Err(format!("ball center needs {} coordinates, got {}", dim, center.len()));
    }
    Ball::new(center.clone(), radius.clone()).map_err(|e| e.to_string())
}

impl WitnessSpec {
    /// The witnesses with their shapes built on `f`.
    pub fn witnesses(&self, f: &Polynomial) -> Result<Vec<Witness>, String> {
        self.shapes
            .iter()
            .map(|s| {
                let shape = LocalShape::from_name(&s.shape, f.clone())
                    .ok_or_else(|| format!("unknown shape \"{}\"", s.shape))?;
                let mut w = Witness::new(make_ball(&s.ball, f.dim())?, shape);
                if let Some(i) = &s.interior {
                    w = w.with_interior(make_ball(i, f.dim())?);
                }
                Ok(w)
            })
            .collect()
    }
}
