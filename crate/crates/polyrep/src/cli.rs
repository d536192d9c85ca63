//! Command-line front-end.
//!
//! Exit codes: 0 pass, 1 fail (or an IO problem), 2 parse error, 3
//! hypothesis unsupported, 64 usage error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use polyrep_core::corpus;
use polyrep_core::formula::print_formula;
use polyrep_core::geom::{Tolerances, DEFAULT_ZERO_PER_AXIS};
use polyrep_core::lint::{derive_contradiction, lint_boundary, Contradiction, LintOptions};
use polyrep_core::parse::{parse_formula_bytes, parse_polynomial, ParseError};
use polyrep_core::polytope::{check_polygon_structure, check_polytope_factor_map, polygon_from_vertices, PolytopeError, Verdict};
use polyrep_core::{GridSpec, Kind, LintVerdict, Polynomial, Representation, Rule, Status};
use serde_json::{json, Map, Value};

use crate::formats::{parse_bbox, parse_point, parse_vertices, parse_witness, WitnessSpec};
use crate::{json as j, parallel, raster, report};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_UNSUPPORTED: i32 = 3;
pub const EXIT_USAGE: i32 = 64;

#[derive(Parser, Debug)]
#[command(name = "polyrep", version, about = "Lint sign-condition representations of semi-algebraic sets")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Sampling {
    /// Grid cells per axis for set comparisons and boundary cells.
    #[arg(long, default_value_t = 128)]
    pub grid: usize,
    /// Lattice points per axis inside witness balls.
    #[arg(long, default_value_t = 33)]
    pub per_axis: usize,
    /// Zero tolerance, relative to the largest coefficient of f.
    #[arg(long, default_value_t = 1e-9)]
    pub tol_zero: f64,
    /// Gradient tolerance, relative to the largest coefficient of f.
    #[arg(long, default_value_t = 1e-4)]
    pub tol_grad: f64,
    /// Sign-change edges bisected per zero search.
    #[arg(long, default_value_t = 256)]
    pub zero_budget: usize,
    /// Worker threads for grid sampling.
    #[arg(long)]
    pub threads: Option<usize>,
    /// Leave the timing field out of JSON reports.
    #[arg(long)]
    pub no_timing: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Membership of a point and the sign of every polynomial there.
    Eval {
        formula: PathBuf,
        #[arg(allow_hyphen_values = true)]
        point: String,
        #[arg(long)]
        dim: Option<usize>,
    },
    /// Print a formula in canonical form.
    Fmt {
        formula: PathBuf,
        /// Print the JSON form instead.
        #[arg(long)]
        json: bool,
        #[arg(long)]
        dim: Option<usize>,
    },
    /// Run lints for witnesses such as `C-closed:zero-set@2 0;1/4+interior@0 0;1/2`.
    Lint {
        formula: PathBuf,
        /// File holding the polynomial f; not needed for T1-I alone.
        f: Option<PathBuf>,
        #[arg(long = "witness", required = true, allow_hyphen_values = true)]
        witnesses: Vec<String>,
        /// Combine the witnesses into a certificate against `closed` or `open`.
        #[arg(long)]
        certificate: Option<String>,
        /// Report PASS/FAIL even when sampled hypotheses are unsupported.
        #[arg(long)]
        assume_hypotheses: bool,
        /// Box for T1-I, `lo hi` or `lo1 hi1 lo2 hi2 ...`.
        #[arg(long, allow_hyphen_values = true, default_value = "-3 3")]
        bbox: String,
        #[arg(long)]
        dim: Option<usize>,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Write a binary PGM membership image of a planar set.
    Raster {
        formula: PathBuf,
        #[arg(long, allow_hyphen_values = true, default_value = "-2 2 -2 2")]
        bbox: String,
        #[arg(long, default_value_t = 256)]
        resolution: usize,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        threads: Option<usize>,
        #[arg(long)]
        dim: Option<usize>,
    },
    /// Compare two formulas on the grid corners.
    Compare {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, allow_hyphen_values = true, default_value = "-3 3")]
        bbox: String,
        #[arg(long)]
        dim: Option<usize>,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Check a two-polynomial description of a convex polygon.
    Polygon {
        vertices: PathBuf,
        q1: PathBuf,
        q2: PathBuf,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Check that every edge form divides exactly one q with odd multiplicity.
    FactorMap {
        vertices: PathBuf,
        #[arg(required = true)]
        qs: Vec<PathBuf>,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Run the built-in example sets and compare with their expected verdicts.
    Corpus {
        #[command(flatten)]
        sampling: Sampling,
    },
}

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Parse(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Parse(_) => EXIT_PARSE,
            Failure::Io(_) => EXIT_FAIL,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Parse(m) | Failure::Io(m) => m,
        }
    }
}

type Out<'a> = &'a mut dyn Write;

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: Out, err: Out) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let text = e.render().to_string();
            let _ = if code == EXIT_PASS { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "polyrep: {}", f.message());
            f.code()
        }
    }
}

fn execute(command: Command, out: Out) -> Result<i32, Failure> {
    match command {
        Command::Eval { formula, point, dim } => eval(&formula, &point, dim, out),
        Command::Fmt { formula, json, dim } => fmt(&formula, json, dim, out),
        Command::Lint { formula, f, witnesses, certificate, assume_hypotheses, bbox, dim, sampling } => {
            let started = Instant::now();
            let cmd = LintCommand { formula, f, witnesses, certificate, assume_hypotheses, bbox, dim, sampling };
            let (code, report) = parallel::with_threads(cmd.sampling.threads, || cmd.run(started))?;
            emit(out, &report)?;
            Ok(code)
        }
        Command::Raster { formula, bbox, resolution, out: path, threads, dim } => {
            raster_cmd(&formula, &bbox, resolution, &path, threads, dim)
        }
        Command::Compare { a, b, bbox, dim, sampling } => compare(&a, &b, &bbox, dim, &sampling, out),
        Command::Polygon { vertices, q1, q2, sampling } => polygon(&vertices, &q1, &q2, &sampling, out),
        Command::FactorMap { vertices, qs, sampling } => factor_map(&vertices, &qs, &sampling, out),
        Command::Corpus { sampling } => corpus_cmd(&sampling, out),
    }
}

fn read(path: &Path) -> Result<Vec<u8>, Failure> {
    if !path.exists() {
        return Err(Failure::Usage(format!("{}: no such file", path.display())));
    }
    std::fs::read(path).map_err(|e| Failure::Io(format!("{}: {}", path.display(), e)))
}

fn read_text(path: &Path) -> Result<String, Failure> {
    String::from_utf8(read(path)?).map_err(|e| {
        Failure::Parse(format!("{}: invalid UTF-8 at byte {}", path.display(), e.utf8_error().valid_up_to()))
    })
}

fn parse_failure(path: &Path, e: &ParseError) -> Failure {
    Failure::Parse(format!("{}:{}:{}: {}", path.display(), e.line, e.column, e.kind))
}

/// A formula in text form, or its JSON form when the file starts with `{`.
pub fn load_formula(path: &Path, dim: Option<usize>) -> Result<Representation, Failure> {
    let bytes = read(path)?;
    if bytes.iter().find(|b| !b.is_ascii_whitespace()) == Some(&b'{') {
        let v: Value = serde_json::from_slice(&bytes)
            .map_err(|e| Failure::Parse(format!("{}:{}:{}: {}", path.display(), e.line(), e.column(), e)))?;
        return j::representation_from(&v).map_err(|e| Failure::Parse(format!("{}: {}", path.display(), e)));
    }
    parse_formula_bytes(&bytes, dim).map_err(|e| parse_failure(path, &e))
}

pub fn load_polynomial(path: &Path, dim: usize) -> Result<Polynomial, Failure> {
    let text = read_text(path)?;
    parse_polynomial(&text, Some(dim)).map_err(|e| parse_failure(path, &e))
}

fn grid(bbox: &str, dim: usize, resolution: usize) -> Result<GridSpec, Failure> {
    let bbox = parse_bbox(bbox, dim).map_err(Failure::Usage)?;
    GridSpec::new(bbox, resolution).map_err(|e| Failure::Usage(e.to_string()))
}

fn emit(out: Out, v: &Value) -> Result<(), Failure> {
    out.write_all(report::to_text(v).as_bytes()).map_err(|e| Failure::Io(e.to_string()))
}

fn elapsed(sampling: &Sampling, started: Instant) -> Option<std::time::Duration> {
    (!sampling.no_timing).then(|| started.elapsed())
}

fn eval(path: &Path, point: &str, dim: Option<usize>, out: Out) -> Result<i32, Failure> {
    let rep = load_formula(path, dim)?;
    let x = parse_point(point, rep.dim()).map_err(Failure::Usage)?;
    let inside = rep.contains(&x).expect("checked dimension");
    let mut text = format!("{}\n", inside);
    for (i, p) in rep.polys().iter().enumerate() {
        let v = p.eval(&x).expect("checked dimension");
        text.push_str(&format!(
            "p{} = {}: sign {} value {}\n",
            i + 1,
            p,
            polyrep_core::rational::sign_of(&v).as_i8(),
            polyrep_core::rational::format_rational(&v)
        ));
    }
    out.write_all(text.as_bytes()).map_err(|e| Failure::Io(e.to_string()))?;
    Ok(EXIT_PASS)
}

fn fmt(path: &Path, json: bool, dim: Option<usize>, out: Out) -> Result<i32, Failure> {
    let rep = load_formula(path, dim)?;
    let text = if json { report::to_text(&j::representation(&rep)) } else { format!("{}\n", print_formula(&rep)) };
    out.write_all(text.as_bytes()).map_err(|e| Failure::Io(e.to_string()))?;
    Ok(EXIT_PASS)
}

struct LintCommand {
    formula: PathBuf,
    f: Option<PathBuf>,
    witnesses: Vec<String>,
    certificate: Option<String>,
    assume_hypotheses: bool,
    bbox: String,
    dim: Option<usize>,
    sampling: Sampling,
}

fn options(s: &Sampling, assume: bool) -> LintOptions {
    LintOptions {
        per_axis: s.per_axis,
        zero_per_axis: DEFAULT_ZERO_PER_AXIS,
        zero_budget: s.zero_budget,
        tolerances: Tolerances { zero: s.tol_zero, grad: s.tol_grad },
        assume_hypotheses: assume,
    }
}

fn exit_for(statuses: impl IntoIterator<Item = Status>) -> i32 {
    let statuses: Vec<Status> = statuses.into_iter().collect();
    if statuses.contains(&Status::Fail) {
        EXIT_FAIL
    } else if statuses.contains(&Status::HypothesisUnsupported) {
        EXIT_UNSUPPORTED
    } else {
        EXIT_PASS
    }
}

impl LintCommand {
    fn run(&self, started: Instant) -> Result<(i32, Value), Failure> {
        let specs = self
            .witnesses
            .iter()
            .map(|w| parse_witness(w).map_err(Failure::Usage))
            .collect::<Result<Vec<WitnessSpec>, _>>()?;
        let kind = match self.certificate.as_deref() {
            None => None,
            Some(name) => match Kind::from_name(name) {
                Some(k @ (Kind::ElementaryClosed | Kind::ElementaryOpen)) => Some(k),
                _ => return Err(Failure::Usage(format!("--certificate takes closed or open, got \"{}\"", name))),
            },
        };
        let rep = load_formula(&self.formula, self.dim)?;
        let needs_f = specs.iter().any(|s| s.rule != Rule::T1I);
        let f = match (&self.f, needs_f) {
            (Some(path), _) => Some(load_polynomial(path, rep.dim())?),
            (None, true) => return Err(Failure::Usage(String::from("an f-file is needed for every rule except T1-I"))),
            (None, false) => None,
        };
        let opts = options(&self.sampling, self.assume_hypotheses);

        let mut input = Map::new();
        input.insert("formula".into(), j::representation(&rep));
        input.insert("f".into(), f.as_ref().map(j::polynomial).unwrap_or(Value::Null));
        input.insert("witnesses".into(), json!(self.witnesses));
        input.insert(
            "options".into(),
            json!({
                "grid": self.sampling.grid,
                "bbox": self.bbox,
                "per_axis": opts.per_axis,
                "zero_per_axis": opts.zero_per_axis,
                "zero_budget": opts.zero_budget,
                "tol_zero": opts.tolerances.zero,
                "tol_grad": opts.tolerances.grad,
                "assume_hypotheses": opts.assume_hypotheses,
            }),
        );

        let mut results = Map::new();
        let code = if let Some(kind) = kind {
            let f = f.expect("certificates need f");
            let mut pairs = Vec::new();
            for s in &specs {
                for w in s.witnesses(&f).map_err(Failure::Usage)? {
                    pairs.push((w, s.rule));
                }
            }
            let c = derive_contradiction(&rep, kind, &pairs, &opts).map_err(|e| Failure::Usage(e.to_string()))?;
            let code = match &c {
                Contradiction::Certificate(_) => EXIT_FAIL,
                Contradiction::Consistent { requirements, .. } => {
                    if requirements.iter().all(|r| r.hypotheses.supported) {
                        EXIT_PASS
                    } else {
                        EXIT_UNSUPPORTED
                    }
                }
            };
            results.insert("status".into(), json!(if code == EXIT_FAIL { "CERTIFICATE" } else { "CONSISTENT" }));
            results.insert("certificate".into(), j::contradiction(&c));
            code
        } else {
            let mut verdicts: Vec<LintVerdict> = Vec::new();
            for s in &specs {
                let v = if s.rule == Rule::T1I {
                    let g = grid(&self.bbox, rep.dim(), self.sampling.grid)?;
                    lint_boundary(&rep, &g)
                } else {
                    let f = f.as_ref().expect("checked above");
                    let ws = s.witnesses(f).map_err(Failure::Usage)?;
                    corpus::run_lint(&rep, s.rule, f, &ws, &opts)
                };
                verdicts.push(v.map_err(|e| Failure::Usage(e.to_string()))?);
            }
            verdicts.sort_by_key(|v| v.rule);
            let code = exit_for(verdicts.iter().map(|v| v.status));
            let overall = match code {
                EXIT_PASS => Status::Pass,
                EXIT_FAIL => Status::Fail,
                _ => Status::HypothesisUnsupported,
            };
            results.insert("status".into(), json!(overall.as_str()));
            results.insert("verdicts".into(), Value::Array(verdicts.iter().map(j::verdict).collect()));
            code
        };
        let v = report::envelope("lint", Value::Object(input), results, elapsed(&self.sampling, started));
        Ok((code, v))
    }
}

fn raster_cmd(
    path: &Path,
    bbox: &str,
    resolution: usize,
    target: &Path,
    threads: Option<usize>,
    dim: Option<usize>,
) -> Result<i32, Failure> {
    if resolution == 0 || resolution > raster::MAX_RESOLUTION {
        return Err(Failure::Usage(format!("resolution must be between 1 and {}", raster::MAX_RESOLUTION)));
    }
    let rep = load_formula(path, dim.or(Some(2)))?;
    if rep.dim() != 2 {
        return Err(Failure::Usage(format!("rasters need a planar set, got dimension {}", rep.dim())));
    }
    let g = grid(bbox, 2, resolution)?;
    let bytes = parallel::with_threads(threads, || raster::render(&rep, &g));
    std::fs::write(target, bytes).map_err(|e| Failure::Io(format!("{}: {}", target.display(), e)))?;
    Ok(EXIT_PASS)
}

fn compare(a: &Path, b: &Path, bbox: &str, dim: Option<usize>, s: &Sampling, out: Out) -> Result<i32, Failure> {
    let started = Instant::now();
    let ra = load_formula(a, dim)?;
    let rb = load_formula(b, dim)?;
    let d = ra.dim().max(rb.dim());
    let ra = if ra.dim() < d { load_formula(a, Some(d))? } else { ra };
    let rb = if rb.dim() < d { load_formula(b, Some(d))? } else { rb };
    let g = grid(bbox, d, s.grid)?;
    let r = parallel::with_threads(s.threads, || parallel::compare(&ra, &rb, &g));
    let input = json!({ "a": j::representation(&ra), "b": j::representation(&rb), "grid": j::grid(&g) });
    let mut results = Map::new();
    results.insert("status".into(), json!(if r.full_agreement() { "AGREE" } else { "DISAGREE" }));
    results.insert("agreement".into(), j::sample(&r));
    emit(out, &report::envelope("compare", input, results, elapsed(s, started)))?;
    Ok(if r.full_agreement() { EXIT_PASS } else { EXIT_FAIL })
}

fn load_polygon(path: &Path) -> Result<polyrep_core::PolytopeH, Failure> {
    let text = read_text(path)?;
    let vs = parse_vertices(&text).map_err(|e| Failure::Parse(format!("{}:{}", path.display(), e)))?;
    polygon_from_vertices(vs).map_err(|e| match e {
        PolytopeError::Geom(g) => Failure::Usage(g.to_string()),
        other => Failure::Parse(format!("{}: {}", path.display(), other)),
    })
}

fn polytope_grid(p: &polyrep_core::PolytopeH, s: &Sampling) -> Result<GridSpec, Failure> {
    p.default_grid(s.grid).map_err(|e| Failure::Usage(e.to_string()))
}

fn polygon(vertices: &Path, q1: &Path, q2: &Path, s: &Sampling, out: Out) -> Result<i32, Failure> {
    let started = Instant::now();
    let p = load_polygon(vertices)?;
    let (q1, q2) = (load_polynomial(q1, 2)?, load_polynomial(q2, 2)?);
    let g = polytope_grid(&p, s)?;
    let r = parallel::with_threads(s.threads, || check_polygon_structure(&p, &q1, &q2, Some(&g)))
        .map_err(|e| Failure::Usage(e.to_string()))?;
    let input = json!({ "polygon": j::polytope(&p), "q1": j::polynomial(&q1), "q2": j::polynomial(&q2) });
    let mut results = Map::new();
    results.insert("report".into(), j::polygon_report(&r));
    emit(out, &report::envelope("polygon", input, results, elapsed(s, started)))?;
    Ok(EXIT_PASS)
}

fn factor_map(vertices: &Path, qs: &[PathBuf], s: &Sampling, out: Out) -> Result<i32, Failure> {
    let started = Instant::now();
    let p = load_polygon(vertices)?;
    let qs = qs.iter().map(|q| load_polynomial(q, 2)).collect::<Result<Vec<_>, _>>()?;
    let g = polytope_grid(&p, s)?;
    let r = check_polytope_factor_map(&p, &qs, Some(&g)).map_err(|e| Failure::Usage(e.to_string()))?;
    let input = json!({ "polytope": j::polytope(&p), "qs": qs.iter().map(j::polynomial).collect::<Vec<_>>() });
    let mut results = Map::new();
    results.insert("status".into(), json!(r.verdict.as_str()));
    results.insert("report".into(), j::factor_map_report(&r));
    emit(out, &report::envelope("factor-map", input, results, elapsed(s, started)))?;
    Ok(if r.verdict == Verdict::Pass { EXIT_PASS } else { EXIT_FAIL })
}

fn corpus_cmd(s: &Sampling, out: Out) -> Result<i32, Failure> {
    let opts = options(s, false);
    let mut all = true;
    let mut text = String::new();
    for entry in corpus::entries() {
        for o in corpus::run_entry(&entry, &opts) {
            all &= o.matched;
            text.push_str(&format!(
                "{:<28} {:<40} {:<8} {}\n",
                o.entry,
                o.label,
                if o.matched { "ok" } else { "MISMATCH" },
                o.found
            ));
        }
    }
    out.write_all(text.as_bytes()).map_err(|e| Failure::Io(e.to_string()))?;
    Ok(if all { EXIT_PASS } else { EXIT_FAIL })
}
