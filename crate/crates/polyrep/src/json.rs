//! JSON forms of the core types.
//!
//! Rationals are strings (`"3/4"`), polynomials carry both their text and an
//! exact term list, formulas are nested `{"op": ...}` nodes.

use polyrep_core::formula::print_formula;
use polyrep_core::geom::{BoundaryCell, NonsingularZero};
use polyrep_core::lint::{
    Certificate, Contradiction, Evidence, HypothesisCheck, InteriorReport, Requirement,
};
use polyrep_core::polytope::{FactorMap, FactorMapReport, PolygonReport};
use polyrep_core::rational::{format_rational, parse_rational};
use polyrep_core::{
    Ball, Formula, GridSpec, Kind, LintVerdict, Polynomial, PolytopeH, Rational, Representation,
    SampleReport, Sign, SignSet, Witness,
};
use serde_json::{json, Map, Value};

pub fn rational(q: &Rational) -> Value {
    Value::String(format_rational(q))
}

pub fn point(x: &[Rational]) -> Value {
    Value::Array(x.iter().map(rational).collect())
}

fn float(x: f64) -> Value {
    serde_json::Number::from_f64(x).map(Value::Number).unwrap_or(Value::Null)
}

fn floats(xs: &[f64]) -> Value {
    Value::Array(xs.iter().copied().map(float).collect())
}

fn one_based(indices: &[usize]) -> Value {
    json!(indices.iter().map(|i| i + 1).collect::<Vec<_>>())
}

pub fn polynomial(p: &Polynomial) -> Value {
    let terms: Vec<Value> = p
        .terms()
        .map(|(m, c)| {
            json!({
                "exponents": m.exponents(),
                "num": c.numer().to_string(),
                "den": c.denom().to_string(),
            })
        })
        .collect();
    json!({ "text": p.to_string(), "dim": p.dim(), "terms": terms })
}

fn signs(set: SignSet) -> Value {
    json!(set.signs().map(Sign::as_i8).collect::<Vec<_>>())
}

pub fn formula(f: &Formula) -> Value {
    match f {
        Formula::True => json!({ "op": "true" }),
        Formula::False => json!({ "op": "false" }),
        Formula::Atom { index, signs: set } => json!({ "op": "atom", "index": index, "signs": signs(*set) }),
        Formula::And(cs) => json!({ "op": "and", "args": cs.iter().map(formula).collect::<Vec<_>>() }),
        Formula::Or(cs) => json!({ "op": "or", "args": cs.iter().map(formula).collect::<Vec<_>>() }),
        Formula::Not(c) => json!({ "op": "not", "arg": formula(c) }),
    }
}

pub fn representation(rep: &Representation) -> Value {
    json!({
        "text": print_formula(rep),
        "dim": rep.dim(),
        "kind": rep.kind().as_str(),
        "polys": rep.polys().iter().map(polynomial).collect::<Vec<_>>(),
        "formula": formula(rep.formula()),
    })
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value, String> {
    v.get(key).ok_or_else(|| format!("missing field \"{}\"", key))
}

fn as_usize(v: &Value, what: &str) -> Result<usize, String> {
    v.as_u64().map(|n| n as usize).ok_or_else(|| format!("{} must be a non-negative integer", what))
}

fn polynomial_from(v: &Value, dim: usize) -> Result<Polynomial, String> {
    let terms = field(v, "terms")?.as_array().ok_or("\"terms\" must be an array")?;
    let mut out = Vec::with_capacity(terms.len());
    for t in terms {
        let exps = field(t, "exponents")?
            .as_array()
            .ok_or("\"exponents\" must be an array")?
            .iter()
            .map(|e| e.as_u64().and_then(|e| u32::try_from(e).ok()).ok_or("bad exponent"))
            .collect::<Result<Vec<u32>, _>>()?;
        let num = field(t, "num")?.as_str().ok_or("\"num\" must be a string")?;
        let den = field(t, "den")?.as_str().ok_or("\"den\" must be a string")?;
        let c = parse_rational(&format!("{}/{}", num, den)).ok_or("bad coefficient")?;
        out.push((exps, c));
    }
    Polynomial::from_terms(dim, out).map_err(|e| e.to_string())
}

fn formula_from(v: &Value, depth: usize) -> Result<Formula, String> {
    if depth > 200 {
        return Err(String::from("formula nested too deeply"));
    }
    let op = field(v, "op")?.as_str().ok_or("\"op\" must be a string")?;
    let list = |v: &Value| -> Result<Vec<Formula>, String> {
        field(v, "args")?
            .as_array()
            .ok_or_else(|| String::from("\"args\" must be an array"))?
            .iter()
            .map(|c| formula_from(c, depth + 1))
            .collect()
    };
    Ok(match op {
        "true" => Formula::True,
        "false" => Formula::False,
        "atom" => {
            let index = as_usize(field(v, "index")?, "index")?;
            let signs = field(v, "signs")?
                .as_array()
                .ok_or("\"signs\" must be an array")?
                .iter()
                .map(|s| s.as_i64().and_then(|s| Sign::from_i8(s as i8)).ok_or("signs are -1, 0 or 1"))
                .collect::<Result<Vec<Sign>, _>>()?;
            Formula::atom(index, SignSet::new(&signs).ok_or("empty sign set")?)
        }
        "and" => Formula::And(list(v)?),
        "or" => Formula::Or(list(v)?),
        "not" => Formula::not(formula_from(field(v, "arg")?, depth + 1)?),
        other => return Err(format!("unknown op \"{}\"", other)),
    })
}

/// Reads the form written by [`representation`]; `text` is ignored.
pub fn representation_from(v: &Value) -> Result<Representation, String> {
    let dim = as_usize(field(v, "dim")?, "dim")?;
    let polys = field(v, "polys")?
        .as_array()
        .ok_or("\"polys\" must be an array")?
        .iter()
        .map(|p| polynomial_from(p, dim))
        .collect::<Result<Vec<_>, _>>()?;
    let f = formula_from(field(v, "formula")?, 0)?;
    match v.get("kind").and_then(Value::as_str) {
        Some(name) => {
            let kind = Kind::from_name(name).ok_or_else(|| format!("unknown kind \"{}\"", name))?;
            Representation::with_kind(dim, polys, f, kind).map_err(|e| e.to_string())
        }
        None => Representation::new(dim, polys, f).map_err(|e| e.to_string()),
    }
}

pub fn ball(b: &Ball) -> Value {
    json!({ "center": point(b.center()), "radius": rational(b.radius()) })
}

pub fn witness(w: &Witness) -> Value {
    json!({
        "shape": w.shape.name(),
        "f": w.shape.poly().to_string(),
        "ball": ball(&w.ball),
        "interior": w.interior.as_ref().map(ball),
    })
}

pub fn grid(g: &GridSpec) -> Value {
    json!({
        "bbox": g.bbox().iter().map(|(lo, hi)| json!([rational(lo), rational(hi)])).collect::<Vec<_>>(),
        "resolution": g.resolution(),
    })
}

pub fn nonsingular_zero(z: &NonsingularZero) -> Value {
    json!({
        "point": floats(&z.point),
        "exact": point(&z.exact),
        "value": float(z.value),
        "gradient": floats(&z.gradient),
        "gradient_norm": float(z.gradient_norm),
        "bracket": z.bracket.as_ref().map(|(lo, hi)| json!({ "lo": point(lo), "hi": point(hi) })),
    })
}

pub fn sample(r: &SampleReport) -> Value {
    json!({
        "tested": r.tested,
        "agreements": r.agreements,
        "agreement_ratio": float(r.agreement_ratio()),
        "full_agreement": r.full_agreement(),
        "vacuous": r.vacuous,
        "first_counterexample": r.first_counterexample.as_deref().map(point),
        "nonsingular_zero": r.nonsingular_zero.as_ref().map(nonsingular_zero),
    })
}

fn interior(r: &InteriorReport) -> Value {
    json!({
        "ball": ball(&r.ball),
        "membership": sample(&r.membership),
        "nonsingular_zero": r.nonsingular_zero.as_ref().map(nonsingular_zero),
        "supported": r.supported,
    })
}

pub fn hypothesis(h: &HypothesisCheck) -> Value {
    json!({
        "witness": witness(&h.witness),
        "off_zero_set": h.off_zero_set,
        "shape": sample(&h.shape),
        "interior": h.interior.as_ref().map(interior),
        "supported": h.supported,
        "notes": h.notes,
    })
}

pub fn evidence(e: &Evidence) -> Value {
    json!({
        "multiplicities": e.multiplicities,
        "dividing": one_based(&e.dividing),
        "odd": one_based(&e.odd),
        "even": one_based(&e.even),
        "branch": e.branch,
    })
}

pub fn boundary_cell(c: &BoundaryCell) -> Value {
    json!({
        "cell": c.cell,
        "min_abs_corner": float(c.min_abs_corner),
        "min_abs_center": float(c.min_abs_center),
        "within_bound": c.within_bound,
    })
}

pub fn verdict(v: &LintVerdict) -> Value {
    let mut m = Map::new();
    m.insert("rule".into(), json!(v.rule.id()));
    m.insert("status".into(), json!(v.status.as_str()));
    m.insert("conclusion".into(), json!(v.rule.conclusion()));
    m.insert("conclusion_holds".into(), json!(v.conclusion_holds));
    m.insert("f".into(), v.f.as_ref().map(polynomial).unwrap_or(Value::Null));
    m.insert("irreducibility".into(), json!(v.irreducibility.as_ref().map(|i| i.to_string())));
    m.insert("evidence".into(), evidence(&v.evidence));
    m.insert("hypotheses_supported".into(), json!(v.hypotheses_supported()));
    m.insert("hypotheses_assumed".into(), json!(v.hypotheses_assumed));
    m.insert("hypotheses".into(), Value::Array(v.hypotheses.iter().map(hypothesis).collect()));
    if let Some(b) = &v.boundary {
        m.insert(
            "boundary".into(),
            json!({
                "grid": grid(&b.grid),
                "cells": b.cells,
                "within_bound": b.within_bound,
                "first_violation": b.first_violation,
            }),
        );
    }
    Value::Object(m)
}

fn requirement(r: &Requirement) -> Value {
    json!({
        "rule": r.rule.id(),
        "demand": r.demand.as_str(),
        "hypotheses": hypothesis(&r.hypotheses),
    })
}

pub fn certificate(c: &Certificate) -> Value {
    json!({
        "kind": c.kind.as_str(),
        "f": polynomial(&c.f),
        "odd_demand": requirement(&c.odd_demand),
        "even_demand": requirement(&c.even_demand),
        "conclusion": c.conclusion,
    })
}

pub fn contradiction(c: &Contradiction) -> Value {
    match c {
        Contradiction::Certificate(cert) => json!({ "outcome": "certificate", "certificate": certificate(cert) }),
        Contradiction::Consistent { requirements, reason } => json!({
            "outcome": "consistent",
            "reason": reason,
            "requirements": requirements.iter().map(requirement).collect::<Vec<_>>(),
        }),
    }
}

pub fn polytope(p: &PolytopeH) -> Value {
    json!({
        "dim": p.dim(),
        "facets": p.facets().iter().map(polynomial).collect::<Vec<_>>(),
        "vertices": p.vertices().iter().map(|v| point(v)).collect::<Vec<_>>(),
    })
}

pub fn factor_map(m: &FactorMap) -> Value {
    json!({
        "multiplicities": m.multiplicities,
        "assignment": m.assignment.iter().enumerate().map(|(i, row)| json!({
            "facet": i + 1,
            "q": row.iter().map(|(j, k)| json!({ "index": j + 1, "multiplicity": k, "parity": if k % 2 == 1 { "odd" } else { "even" } })).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    })
}

pub fn factor_map_report(r: &FactorMapReport) -> Value {
    json!({
        "verdict": r.verdict.as_str(),
        "map": factor_map(&r.map),
        "violations": r.violations,
        "grid": grid(&r.grid),
        "agreement": sample(&r.agreement),
    })
}

pub fn polygon_report(r: &PolygonReport) -> Value {
    json!({
        "edges": r.edges,
        "map": factor_map(&r.map),
        "index_sets": [one_based(&r.index_sets[0]), one_based(&r.index_sets[1])],
        "carrier": r.carrier.map(|j| j + 1),
        "g1": r.g1.as_ref().map(polynomial),
        "g2": r.g2.as_ref().map(polynomial),
        "conditions": {
            "odd_multiplicities": r.odd_multiplicities,
            "g_free_of_edge_factors": r.g_coprime,
            "g2_vanishes_at_vertices": r.g2_vanishes_at_vertices,
        },
        "g2_at_vertices": r.g2_at_vertices.as_ref().map(|vs| vs.iter().map(rational).collect::<Vec<_>>()),
        "structure_matched": r.structure_matched,
        "notes": r.notes,
        "grid": grid(&r.grid),
        "agreement": sample(&r.agreement),
    })
}
