//! Polytopes given by degree-one inequalities, and checks of two-polynomial
//! representations of polygons against their edge forms.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{Signed, Zero};

use crate::factor::{multiplicity, try_divide};
use crate::formula::Representation;
use crate::geom::{compare_sets, GeomError, GridSpec, SampleReport};
use crate::linalg::null_space;
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::rational::{int, ratio, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolytopeError {
    TooFewVertices { found: usize },
    DimensionMismatch { expected: usize, found: usize },
    DuplicateVertex { first: usize, second: usize },
    /// Three consecutive vertices on a line.
    Collinear { triple: [usize; 3] },
    Clockwise,
    /// Vertex `vertex` lies on the wrong side of (or on) the edge `edge, edge + 1`.
    NotConvex { triple: [usize; 3] },
    NotDegreeOne { index: usize },
    VertexOutside { vertex: usize, facet: usize },
    VertexNotOnFacets { vertex: usize },
    NoInteriorPoint,
    WrongCount { expected: usize, found: usize },
    ZeroPolynomial { index: usize },
    Geom(GeomError),
}

impl From<GeomError> for PolytopeError {
    fn from(e: GeomError) -> Self {
        PolytopeError::Geom(e)
    }
}

impl fmt::Display for PolytopeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolytopeError::TooFewVertices { found } => write!(f, "need at least 3 vertices, got {}", found),
            PolytopeError::DimensionMismatch { expected, found } => {
                write!(f, "expected dimension {}, found {}", expected, found)
            }
            PolytopeError::DuplicateVertex { first, second } => {
                write!(f, "vertices {} and {} coincide", first + 1, second + 1)
            }
            PolytopeError::Collinear { triple } => {
                write!(f, "vertices {}, {}, {} are collinear", triple[0] + 1, triple[1] + 1, triple[2] + 1)
            }
            PolytopeError::Clockwise => f.write_str("vertices are in clockwise order"),
            PolytopeError::NotConvex { triple } => write!(
                f,
                "vertex {} is not strictly inside the edge {}-{}",
                triple[2] + 1,
                triple[0] + 1,
                triple[1] + 1
            ),
            PolytopeError::NotDegreeOne { index } => write!(f, "facet {} is not of degree one", index + 1),
            PolytopeError::VertexOutside { vertex, facet } => {
                write!(f, "vertex {} violates facet {}", vertex + 1, facet + 1)
            }
            PolytopeError::VertexNotOnFacets { vertex } => {
                write!(f, "vertex {} lies on too few facets", vertex + 1)
            }
            PolytopeError::NoInteriorPoint => f.write_str("the vertex centroid is not interior"),
            PolytopeError::WrongCount { expected, found } => {
                write!(f, "expected {} polynomials, got {}", expected, found)
            }
            PolytopeError::ZeroPolynomial { index } => write!(f, "q{} is zero", index + 1),
            PolytopeError::Geom(e) => write!(f, "{}", e),
        }
    }
}

/// A polytope `{p_1 >= 0, ..., p_m >= 0}` with its vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolytopeH {
    dim: usize,
    facets: Vec<Polynomial>,
    vertices: Vec<Vec<Rational>>,
}

fn centroid(points: &[Vec<Rational>]) -> Vec<Rational> {
    let n = int(points.len() as i64);
    (0..points[0].len())
        .map(|a| points.iter().map(|p| p[a].clone()).sum::<Rational>() / &n)
        .collect()
}

/// Integer coprime coefficients, positive at `inside`.
fn orient(p: &Polynomial, inside: &[Rational]) -> Polynomial {
    let p = p.primitive_part();
    if p.eval(inside).expect("same dimension").is_negative() {
        -&p
    } else {
        p
    }
}

/// The line through `a` and `b`, positive to the left of `a -> b`.
fn edge_form(a: &[Rational], b: &[Rational]) -> Polynomial {
    // cross(b - a, x - a)
    let dx = &b[0] - &a[0];
    let dy = &b[1] - &a[1];
    let c = &dy * &a[0] - &dx * &a[1];
    let p = Polynomial::var(2, 1).scale(&dx) - Polynomial::var(2, 0).scale(&dy) + Polynomial::constant(2, c);
    p.primitive_part()
}

fn cross(a: &[Rational], b: &[Rational], c: &[Rational]) -> Rational {
    (&b[0] - &a[0]) * (&c[1] - &a[1]) - (&b[1] - &a[1]) * (&c[0] - &a[0])
}

impl PolytopeH {
    /// Checks the facet and vertex lists against each other.
    pub fn new(facets: Vec<Polynomial>, vertices: Vec<Vec<Rational>>) -> Result<PolytopeH, PolytopeError> {
        if vertices.is_empty() {
            return Err(PolytopeError::TooFewVertices { found: 0 });
        }
        let dim = vertices[0].len();
        for v in &vertices {
            if v.len() != dim {
                return Err(PolytopeError::DimensionMismatch { expected: dim, found: v.len() });
            }
        }
        for (index, p) in facets.iter().enumerate() {
            if p.dim() != dim {
                return Err(PolytopeError::DimensionMismatch { expected: dim, found: p.dim() });
            }
            if p.total_degree() != Some(1) {
                return Err(PolytopeError::NotDegreeOne { index });
            }
        }
        let inside = centroid(&vertices);
        for p in &facets {
            if !p.eval(&inside).expect("same dimension").is_positive() {
                return Err(PolytopeError::NoInteriorPoint);
            }
        }
        let facets: Vec<Polynomial> = facets.iter().map(|p| orient(p, &inside)).collect();
        for (vi, v) in vertices.iter().enumerate() {
            let mut tight = 0;
            for (fi, p) in facets.iter().enumerate() {
                let value = p.eval(v).expect("same dimension");
                if value.is_negative() {
                    return Err(PolytopeError::VertexOutside { vertex: vi, facet: fi });
                }
                if value.is_zero() {
                    tight += 1;
                }
            }
            if tight < dim {
                return Err(PolytopeError::VertexNotOnFacets { vertex: vi });
            }
        }
        Ok(PolytopeH { dim, facets, vertices })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Normalized facet forms, positive on the interior.
    pub fn facets(&self) -> &[Polynomial] {
        &self.facets
    }

    pub fn vertices(&self) -> &[Vec<Rational>] {
        &self.vertices
    }

    pub fn centroid(&self) -> Vec<Rational> {
        centroid(&self.vertices)
    }

    pub fn representation(&self) -> Representation {
        Representation::elementary_closed(self.facets.clone()).expect("facets share the dimension")
    }

    /// Intersections of consecutive edges of a polygon, so that vertex `i`
    /// comes from edges `i - 1` and `i`. `None` outside the plane.
    pub fn edge_intersections(&self) -> Option<Vec<Vec<Rational>>> {
        if self.dim != 2 {
            return None;
        }
        let m = self.facets.len();
        let coef = |p: &Polynomial| {
            (
                p.coefficient(&Monomial::var(2, 0)),
                p.coefficient(&Monomial::var(2, 1)),
                p.coefficient(&Monomial::one(2)),
            )
        };
        let mut out = Vec::with_capacity(m);
        for i in 0..m {
            let (a1, b1, c1) = coef(&self.facets[(i + m - 1) % m]);
            let (a2, b2, c2) = coef(&self.facets[i]);
            let det = &a1 * &b2 - &a2 * &b1;
            if det.is_zero() {
                return None;
            }
            let x = (&b1 * &c2 - &b2 * &c1) / &det;
            let y = (&a2 * &c1 - &a1 * &c2) / &det;
            out.push(vec![x, y]);
        }
        Some(out)
    }

    /// Pairs of facets with proportional linear parts.
    pub fn parallel_pairs(&self) -> Vec<(usize, usize)> {
        let linear = |p: &Polynomial| -> Vec<Rational> {
            (0..self.dim).map(|a| p.coefficient(&Monomial::var(self.dim, a))).collect()
        };
        let lin: Vec<_> = self.facets.iter().map(linear).collect();
        let mut out = Vec::new();
        for i in 0..lin.len() {
            for j in i + 1..lin.len() {
                let proportional = (0..self.dim)
                    .all(|a| (0..self.dim).all(|b| &lin[i][a] * &lin[j][b] == &lin[i][b] * &lin[j][a]));
                if proportional {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// The bounding box grown by half its width on every side.
    pub fn default_grid(&self, resolution: usize) -> Result<GridSpec, PolytopeError> {
        let bbox = (0..self.dim)
            .map(|a| {
                let lo = self.vertices.iter().map(|v| &v[a]).min().expect("vertices").clone();
                let hi = self.vertices.iter().map(|v| &v[a]).max().expect("vertices").clone();
                let pad = (&hi - &lo) / int(2);
                (&lo - &pad, &hi + &pad)
            })
            .collect();
        Ok(GridSpec::new(bbox, resolution)?)
    }
}

/// Edge `i` joins vertex `i` to vertex `i + 1`.
pub fn polygon_from_vertices(vertices: Vec<Vec<Rational>>) -> Result<PolytopeH, PolytopeError> {
    let m = vertices.len();
    if m < 3 {
        return Err(PolytopeError::TooFewVertices { found: m });
    }
    for v in &vertices {
        if v.len() != 2 {
            return Err(PolytopeError::DimensionMismatch { expected: 2, found: v.len() });
        }
    }
    for i in 0..m {
        for j in i + 1..m {
            if vertices[i] == vertices[j] {
                return Err(PolytopeError::DuplicateVertex { first: i, second: j });
            }
        }
    }
    for i in 0..m {
        let triple = [i, (i + 1) % m, (i + 2) % m];
        if cross(&vertices[triple[0]], &vertices[triple[1]], &vertices[triple[2]]).is_zero() {
            return Err(PolytopeError::Collinear { triple });
        }
    }
    let twice_area: Rational = (0..m)
        .map(|i| {
            let (a, b) = (&vertices[i], &vertices[(i + 1) % m]);
            &a[0] * &b[1] - &b[0] * &a[1]
        })
        .sum();
    if twice_area.is_negative() {
        return Err(PolytopeError::Clockwise);
    }
    let facets: Vec<Polynomial> = (0..m).map(|i| edge_form(&vertices[i], &vertices[(i + 1) % m])).collect();
    for (i, p) in facets.iter().enumerate() {
        for (k, v) in vertices.iter().enumerate() {
            if k == i || k == (i + 1) % m {
                continue;
            }
            if !p.eval(v).expect("plane").is_positive() {
                return Err(PolytopeError::NotConvex { triple: [i, (i + 1) % m, k] });
            }
        }
    }
    PolytopeH::new(facets, vertices)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
        }
    }
}

/// For each facet, the `(j, multiplicity)` pairs with `p_i | q_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorMap {
    pub multiplicities: Vec<Vec<u32>>,
    pub assignment: Vec<Vec<(usize, u32)>>,
}

impl FactorMap {
    fn compute(facets: &[Polynomial], qs: &[Polynomial]) -> FactorMap {
        let multiplicities: Vec<Vec<u32>> = facets
            .iter()
            .map(|p| qs.iter().map(|q| multiplicity(p, q).expect("non-zero and non-constant")).collect())
            .collect();
        let assignment = multiplicities
            .iter()
            .map(|row| row.iter().enumerate().filter(|(_, &k)| k > 0).map(|(j, &k)| (j, k)).collect())
            .collect();
        FactorMap { multiplicities, assignment }
    }

    /// Facets dividing `q_j`.
    pub fn index_set(&self, j: usize) -> Vec<usize> {
        (0..self.assignment.len()).filter(|&i| self.multiplicities[i][j] > 0).collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FactorMapReport {
    pub map: FactorMap,
    pub verdict: Verdict,
    pub violations: Vec<String>,
    pub grid: GridSpec,
    /// Corner agreement of the polytope with `{q_1 >= 0, ..., q_d >= 0}`.
    pub agreement: SampleReport,
}

fn check_qs(qs: &[Polynomial], dim: usize) -> Result<(), PolytopeError> {
    for (index, q) in qs.iter().enumerate() {
        if q.dim() != dim {
            return Err(PolytopeError::DimensionMismatch { expected: dim, found: q.dim() });
        }
        if q.is_zero() {
            return Err(PolytopeError::ZeroPolynomial { index });
        }
    }
    Ok(())
}

/// Checks that every facet form divides exactly one `q_j`, with odd
/// multiplicity. The algebraic verdict is only meaningful when the `q_j`
/// really describe the polytope; the grid agreement is the evidence for that.
pub fn check_polytope_factor_map(
    polytope: &PolytopeH,
    qs: &[Polynomial],
    grid: Option<&GridSpec>,
) -> Result<FactorMapReport, PolytopeError> {
    if qs.len() != polytope.dim {
        return Err(PolytopeError::WrongCount { expected: polytope.dim, found: qs.len() });
    }
    check_qs(qs, polytope.dim)?;
    let map = FactorMap::compute(&polytope.facets, qs);
    let mut violations = Vec::new();
    for (i, row) in map.assignment.iter().enumerate() {
        match row.as_slice() {
            [] => violations.push(format!("p{} = {} divides no q", i + 1, polytope.facets[i])),
            [(j, k)] if k % 2 == 0 => violations.push(format!(
                "p{} = {} has even multiplicity {} in q{}",
                i + 1,
                polytope.facets[i],
                k,
                j + 1
            )),
            [_] => {}
            many => violations.push(format!(
                "p{} = {} divides {} of the q",
                i + 1,
                polytope.facets[i],
                many.len()
            )),
        }
    }
    let grid = match grid {
        Some(g) => g.clone(),
        None => polytope.default_grid(128)?,
    };
    let q_rep = Representation::elementary_closed(qs.to_vec()).expect("same dimension");
    let agreement = compare_sets(&polytope.representation(), &q_rep, &grid)?;
    let verdict = if violations.is_empty() { Verdict::Pass } else { Verdict::Fail };
    Ok(FactorMapReport { map, verdict, violations, grid, agreement })
}

#[derive(Clone, Debug, PartialEq)]
pub struct PolygonReport {
    pub edges: usize,
    pub map: FactorMap,
    /// Edges dividing `q1` and `q2`.
    pub index_sets: [Vec<usize>; 2],
    /// The `q` that every edge form divides while none divides the other.
    pub carrier: Option<usize>,
    pub g1: Option<Polynomial>,
    pub g2: Option<Polynomial>,
    /// All `k_i` odd.
    pub odd_multiplicities: Option<bool>,
    /// Neither `g` is divisible by an edge form.
    pub g_coprime: Option<bool>,
    /// `g2` at each vertex.
    pub g2_at_vertices: Option<Vec<Rational>>,
    pub g2_vanishes_at_vertices: Option<bool>,
    pub structure_matched: bool,
    pub notes: Vec<String>,
    pub grid: GridSpec,
    pub agreement: SampleReport,
}

/// Reports whether `{q1, q2} = {p_1^k_1 ... p_m^k_m g1, g2}` with odd `k_i`,
/// `g1`, `g2` free of edge factors and `g2` vanishing at every vertex.
pub fn check_polygon_structure(
    polygon: &PolytopeH,
    q1: &Polynomial,
    q2: &Polynomial,
    grid: Option<&GridSpec>,
) -> Result<PolygonReport, PolytopeError> {
    if polygon.dim != 2 {
        return Err(PolytopeError::DimensionMismatch { expected: 2, found: polygon.dim });
    }
    let qs = [q1.clone(), q2.clone()];
    check_qs(&qs, 2)?;
    let m = polygon.facets.len();
    let map = FactorMap::compute(&polygon.facets, &qs);
    let index_sets = [map.index_set(0), map.index_set(1)];
    let carrier = (0..2).find(|&j| index_sets[j].len() == m && index_sets[1 - j].is_empty());
    let mut notes = Vec::new();
    let (mut g1, mut g2, mut odd, mut coprime, mut at_vertices, mut vanish) = (None, None, None, None, None, None);
    if let Some(j) = carrier {
        let mut g = qs[j].clone();
        for (i, p) in polygon.facets.iter().enumerate() {
            for _ in 0..map.multiplicities[i][j] {
                g = try_divide(&g, p).expect("non-zero").expect("multiplicity counted it");
            }
        }
        let other = qs[1 - j].clone();
        odd = Some((0..m).all(|i| map.multiplicities[i][j] % 2 == 1));
        coprime = Some(polygon.facets.iter().all(|p| {
            [&g, &other].iter().all(|h| try_divide(h, p).expect("non-zero").is_none())
        }));
        let values: Vec<Rational> =
            polygon.vertices.iter().map(|v| other.eval(v).expect("plane")).collect();
        vanish = Some(values.iter().all(Zero::is_zero));
        at_vertices = Some(values);
        g1 = Some(g);
        g2 = Some(other);
    } else {
        notes.push(format!(
            "edge forms split across both polynomials: q1 carries {:?}, q2 carries {:?}",
            index_sets[0].iter().map(|i| i + 1).collect::<Vec<_>>(),
            index_sets[1].iter().map(|i| i + 1).collect::<Vec<_>>()
        ));
    }
    if m < 7 {
        notes.push(format!("m = {} < 7: the structure is only forced for at least 7 edges", m));
    }
    if m >= 5 && polygon.parallel_pairs().is_empty() {
        notes.push(String::from("no parallel edges: the structure is expected already for m >= 5"));
    }
    let structure_matched =
        carrier.is_some() && odd == Some(true) && coprime == Some(true) && vanish == Some(true);
    let grid = match grid {
        Some(g) => g.clone(),
        None => polygon.default_grid(128)?,
    };
    let q_rep = Representation::elementary_closed(qs.to_vec()).expect("same dimension");
    let agreement = compare_sets(&polygon.representation(), &q_rep, &grid)?;
    Ok(PolygonReport {
        edges: m,
        map,
        index_sets,
        carrier,
        g1,
        g2,
        odd_multiplicities: odd,
        g_coprime: coprime,
        g2_at_vertices: at_vertices,
        g2_vanishes_at_vertices: vanish,
        structure_matched,
        notes,
        grid,
        agreement,
    })
}

fn point(x: Rational, y: Rational) -> Vec<Rational> {
    vec![x, y]
}

/// A centrally symmetric hexagon with `q1 = p1 p3 p5` and `q2 = p2 p4 p6`.
pub fn hexagon_counterexample() -> (PolytopeH, Polynomial, Polynomial) {
    let h = ratio(1, 2);
    let vertices = vec![
        point(int(1), int(0)),
        point(h.clone(), int(1)),
        point(-&h, int(1)),
        point(int(-1), int(0)),
        point(-&h, int(-1)),
        point(h, int(-1)),
    ];
    let hexagon = polygon_from_vertices(vertices).expect("fixed hexagon is convex");
    let p = hexagon.facets();
    let q1 = &(&p[0] * &p[2]) * &p[4];
    let q2 = &(&p[1] * &p[3]) * &p[5];
    (hexagon, q1, q2)
}

/// A heptagon inscribed in the unit circle, from rational parameters of the
/// circle.
pub fn heptagon() -> PolytopeH {
    let ts = [ratio(0, 1), ratio(1, 3), int(1), int(3), int(-3), int(-1), ratio(-1, 3)];
    let vertices = ts
        .iter()
        .map(|t| {
            let s = int(1) + t * t;
            point((int(1) - t * t) / &s, (int(2) * t) / &s)
        })
        .collect();
    polygon_from_vertices(vertices).expect("fixed heptagon is convex")
}

/// All monomials of total degree at most `degree`, in increasing order.
fn monomials_up_to(dim: usize, degree: u32) -> Vec<Monomial> {
    let mut out = vec![Monomial::one(dim)];
    let mut frontier = out.clone();
    for _ in 0..degree {
        let mut next: Vec<Monomial> = Vec::new();
        for m in &frontier {
            for a in 0..dim {
                let n = m.mul(&Monomial::var(dim, a));
                if !next.contains(&n) {
                    next.push(n);
                }
            }
        }
        next.sort();
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Polynomials of degree at most `degree` vanishing at every point, one per
/// null-space direction, each made primitive.
pub fn vanishing_polynomials(points: &[Vec<Rational>], dim: usize, degree: u32) -> Vec<Polynomial> {
    let monomials = monomials_up_to(dim, degree);
    let rows: Vec<Vec<Rational>> = points
        .iter()
        .map(|pt| {
            monomials
                .iter()
                .map(|m| Polynomial::from_terms(dim, [(m.exponents().to_vec(), int(1))]).expect("dim").eval(pt).expect("dim"))
                .collect()
        })
        .collect();
    null_space(&rows, monomials.len())
        .into_iter()
        .map(|v| {
            let terms = monomials.iter().map(|m| m.exponents().to_vec()).zip(v);
            Polynomial::from_terms(dim, terms).expect("dim").primitive_part()
        })
        .collect()
}

/// `q2` for a polygon by undetermined coefficients: the unique polynomial of
/// degree at most `degree` through the vertices, oriented positive at the
/// centroid. `None` when the family is not one-dimensional.
pub fn vertex_polynomial(polygon: &PolytopeH, degree: u32) -> Option<Polynomial> {
    let mut candidates = vanishing_polynomials(polygon.vertices(), polygon.dim(), degree);
    if candidates.len() != 1 {
        return None;
    }
    let q = candidates.pop().expect("one candidate");
    let value = q.eval(&polygon.centroid()).expect("dim");
    if value.is_zero() {
        None
    } else if value.is_negative() {
        Some(-&q)
    } else {
        Some(q)
    }
}

/// The heptagon with `q1` the product of its edge forms and `q2` the circle.
pub fn heptagon_fixture() -> (PolytopeH, Polynomial, Polynomial) {
    let p = heptagon();
    let q1 = p.facets().iter().fold(Polynomial::one(2), |acc, f| &acc * f);
    let q2 = vertex_polynomial(&p, 2).expect("seven points on a conic");
    (p, q1, q2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;

    fn poly(s: &str) -> Polynomial {
        parse_polynomial(s, Some(2)).unwrap()
    }

    fn square() -> PolytopeH {
        polygon_from_vertices(vec![
            point(int(0), int(0)),
            point(int(1), int(0)),
            point(int(1), int(1)),
            point(int(0), int(1)),
        ])
        .unwrap()
    }

    #[test]
    fn square_edges() {
        let s = square();
        let expected: Vec<Polynomial> = ["x2", "1 - x1", "1 - x2", "x1"].iter().map(|t| poly(t)).collect();
        assert_eq!(s.facets(), expected.as_slice());
        assert_eq!(s.edge_intersections().unwrap(), s.vertices());
    }

    #[test]
    fn rejects_bad_polygons() {
        let tri = |pts: [(i64, i64); 3]| polygon_from_vertices(pts.iter().map(|&(x, y)| point(int(x), int(y))).collect());
        assert_eq!(tri([(0, 0), (1, 0), (0, 0)]), Err(PolytopeError::DuplicateVertex { first: 0, second: 2 }));
        assert_eq!(tri([(0, 0), (1, 1), (2, 2)]), Err(PolytopeError::Collinear { triple: [0, 1, 2] }));
        assert_eq!(tri([(0, 0), (0, 1), (1, 0)]), Err(PolytopeError::Clockwise));
        let dart = [(0, 0), (4, 0), (1, 1), (0, 4)];
        assert!(matches!(
            polygon_from_vertices(dart.iter().map(|&(x, y)| point(int(x), int(y))).collect()),
            Err(PolytopeError::NotConvex { .. })
        ));
    }

    #[test]
    fn square_factor_map() {
        let s = square();
        let r = check_polytope_factor_map(&s, &[poly("x1*(1-x1)"), poly("x2*(1-x2)")], None).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        assert!(r.agreement.full_agreement());
        let r = check_polytope_factor_map(&s, &[poly("x1^2*(1-x1)"), poly("x2*(1-x2)")], None).unwrap();
        assert_eq!(r.verdict, Verdict::Fail);
        assert!(r.agreement.first_counterexample.is_some());
        let r = check_polytope_factor_map(&s, &[poly("x1*(1-x1)*x2"), poly("x2*(1-x2)")], None).unwrap();
        assert_eq!(r.verdict, Verdict::Fail);
        assert_eq!(r.map.assignment[0], vec![(0, 1), (1, 1)]);
    }

    #[test]
    fn hexagon_splits() {
        let (h, q1, q2) = hexagon_counterexample();
        assert_eq!(h.parallel_pairs(), vec![(0, 3), (1, 4), (2, 5)]);
        let r = check_polygon_structure(&h, &q1, &q2, None).unwrap();
        assert_eq!(r.index_sets, [vec![0, 2, 4], vec![1, 3, 5]]);
        assert_eq!(r.carrier, None);
        assert!(!r.structure_matched);
        assert!(r.agreement.full_agreement());
    }

    #[test]
    fn heptagon_matches() {
        let (p, q1, q2) = heptagon_fixture();
        assert_eq!(q2, poly("1 - x1^2 - x2^2"));
        let r = check_polygon_structure(&p, &q1, &q2, None).unwrap();
        assert_eq!(r.carrier, Some(0));
        assert!(r.structure_matched, "{:?}", r.notes);
        assert_eq!(r.g1, Some(Polynomial::one(2)));
        assert!(r.agreement.full_agreement());
    }
}
