//! Sampling oracles: lattices in balls, membership grids, boundary cells,
//! set comparison and the search for non-singular zeros.
//!
//! Every membership decision is an exact sign evaluation at a rational
//! point. Floating point only appears in the zero search, whose result is
//! anchored by an exact sign change.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Range;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::formula::Representation;
use crate::poly::{Polynomial, SignEvaluator};
use crate::rational::{int, to_f64, Rational};
use crate::sign::Sign;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeomError {
    DimensionMismatch { expected: usize, found: usize },
    NonPositiveRadius,
    EmptyCenter,
    DegenerateInterval { axis: usize },
    ResolutionTooSmall,
    ResolutionTooLarge,
    ConstantShape,
}

impl fmt::Display for GeomError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeomError::DimensionMismatch { expected, found } => {
                write!(f, "dimension {} does not match {}", found, expected)
            }
            GeomError::NonPositiveRadius => f.write_str("radius must be positive"),
            GeomError::EmptyCenter => f.write_str("ball center has no coordinates"),
            GeomError::DegenerateInterval { axis } => {
                write!(f, "interval for x{} is empty", axis + 1)
            }
            GeomError::ResolutionTooSmall => f.write_str("resolution must be at least 2"),
            GeomError::ResolutionTooLarge => f.write_str("grid has too many points"),
            GeomError::ConstantShape => f.write_str("shape polynomial is constant"),
        }
    }
}

/// Open Euclidean ball with rational center and radius.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ball {
    center: Vec<Rational>,
    radius: Rational,
}

impl Ball {
    pub fn new(center: Vec<Rational>, radius: Rational) -> Result<Ball, GeomError> {
        if center.is_empty() {
            return Err(GeomError::EmptyCenter);
        }
        if !radius.is_positive() {
            return Err(GeomError::NonPositiveRadius);
        }
        Ok(Ball { center, radius })
    }

    pub fn center(&self) -> &[Rational] {
        &self.center
    }

    pub fn radius(&self) -> &Rational {
        &self.radius
    }

    pub fn dim(&self) -> usize {
        self.center.len()
    }

    pub fn contains(&self, point: &[Rational]) -> bool {
        let d2: Rational = point
            .iter()
            .zip(&self.center)
            .map(|(x, c)| {
                let t = x - c;
                &t * &t
            })
            .sum();
        d2 < &self.radius * &self.radius
    }
}

/// How a set is claimed to look inside a ball.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LocalShape {
    /// `A ∩ B = Z(f) ∩ B`.
    ZeroSet(Polynomial),
    /// `A ∩ B = {f ≥ 0} ∩ B`.
    ClosedHalf(Polynomial),
    /// `A ∩ B = {f > 0} ∩ B`.
    OpenHalf(Polynomial),
    /// `A ∩ B = B \ Z(f)`.
    ComplementOfZero(Polynomial),
}

impl LocalShape {
    pub fn poly(&self) -> &Polynomial {
        match self {
            LocalShape::ZeroSet(f)
            | LocalShape::ClosedHalf(f)
            | LocalShape::OpenHalf(f)
            | LocalShape::ComplementOfZero(f) => f,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            LocalShape::ZeroSet(_) => "zero-set",
            LocalShape::ClosedHalf(_) => "closed-half",
            LocalShape::OpenHalf(_) => "open-half",
            LocalShape::ComplementOfZero(_) => "complement-of-zero",
        }
    }

    pub fn from_name(name: &str, f: Polynomial) -> Option<LocalShape> {
        Some(match name {
            "zero-set" | "zero" => LocalShape::ZeroSet(f),
            "closed-half" | "closed" => LocalShape::ClosedHalf(f),
            "open-half" | "open" => LocalShape::OpenHalf(f),
            "complement-of-zero" | "complement" => LocalShape::ComplementOfZero(f),
            _ => return None,
        })
    }

    /// Membership predicate in terms of the sign of `f`.
    pub fn admits(&self, s: Sign) -> bool {
        match self {
            LocalShape::ZeroSet(_) => s == Sign::Zero,
            LocalShape::ClosedHalf(_) => s != Sign::Negative,
            LocalShape::OpenHalf(_) => s == Sign::Positive,
            LocalShape::ComplementOfZero(_) => s != Sign::Zero,
        }
    }
}

/// Axis-aligned box split into `resolution` cells per axis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridSpec {
    bbox: Vec<(Rational, Rational)>,
    resolution: usize,
}

/// Upper bound on the number of grid points handled in one pass.
pub const MAX_GRID_POINTS: usize = 1 << 26;

impl GridSpec {
    pub fn new(bbox: Vec<(Rational, Rational)>, resolution: usize) -> Result<GridSpec, GeomError> {
        if bbox.is_empty() {
            return Err(GeomError::EmptyCenter);
        }
        if let Some(axis) = bbox.iter().position(|(lo, hi)| lo >= hi) {
            return Err(GeomError::DegenerateInterval { axis });
        }
        if resolution < 2 {
            return Err(GeomError::ResolutionTooSmall);
        }
        let points = (resolution + 1).checked_pow(bbox.len() as u32);
        if points.is_none_or(|n| n > MAX_GRID_POINTS) {
            return Err(GeomError::ResolutionTooLarge);
        }
        Ok(GridSpec { bbox, resolution })
    }

    /// `[lo, hi]^dim`.
    pub fn cube(dim: usize, lo: Rational, hi: Rational, resolution: usize) -> Result<GridSpec, GeomError> {
        GridSpec::new(vec![(lo, hi); dim], resolution)
    }

    pub fn dim(&self) -> usize {
        self.bbox.len()
    }

    pub fn resolution(&self) -> usize {
        self.resolution
    }

    pub fn bbox(&self) -> &[(Rational, Rational)] {
        &self.bbox
    }

    pub fn corner_count(&self) -> usize {
        (self.resolution + 1).pow(self.dim() as u32)
    }

    pub fn cell_count(&self) -> usize {
        self.resolution.pow(self.dim() as u32)
    }

    /// Multi-index of a flat index; `x1` varies fastest.
    pub fn unflatten(&self, mut flat: usize, per_axis: usize) -> Vec<usize> {
        (0..self.dim())
            .map(|_| {
                let i = flat % per_axis;
                flat /= per_axis;
                i
            })
            .collect()
    }

    pub fn flatten(&self, index: &[usize], per_axis: usize) -> usize {
        index.iter().rev().fold(0, |acc, &i| acc * per_axis + i)
    }

    fn coordinate(&self, axis: usize, twice_index: usize) -> Rational {
        let (lo, hi) = &self.bbox[axis];
        lo + (hi - lo) * Rational::new(BigInt::from(twice_index), BigInt::from(2 * self.resolution))
    }

    pub fn corner(&self, flat: usize) -> Vec<Rational> {
        self.unflatten(flat, self.resolution + 1)
            .into_iter()
            .enumerate()
            .map(|(axis, i)| self.coordinate(axis, 2 * i))
            .collect()
    }

    pub fn cell_center(&self, flat: usize) -> Vec<Rational> {
        self.unflatten(flat, self.resolution)
            .into_iter()
            .enumerate()
            .map(|(axis, i)| self.coordinate(axis, 2 * i + 1))
            .collect()
    }

    /// Euclidean diameter of a cell.
    pub fn cell_diameter(&self) -> f64 {
        let n = self.resolution as f64;
        libm::sqrt(
            self.bbox
                .iter()
                .map(|(lo, hi)| {
                    let w = to_f64(&(hi - lo)) / n;
                    w * w
                })
                .sum(),
        )
    }

    /// Integer numerators over a shared denominator for corners or centers,
    /// when everything fits in `i64`.
    pub fn scaled_axes(&self, points: GridPoints) -> Option<ScaledAxes> {
        let two_n = BigInt::from(2 * self.resolution);
        let mut den = BigInt::one();
        for (lo, hi) in &self.bbox {
            den = den.lcm(lo.denom()).lcm(hi.denom());
        }
        den *= &two_n;
        let den_q = Rational::from_integer(den.clone());
        let (count, start, step) = match points {
            GridPoints::Corners => (self.resolution + 1, 0, 2),
            GridPoints::Centers => (self.resolution, 1, 2),
        };
        let mut axes = Vec::with_capacity(self.dim());
        for axis in 0..self.dim() {
            let mut nums = Vec::with_capacity(count);
            for k in 0..count {
                let q = self.coordinate(axis, start + step * k) * &den_q;
                debug_assert!(q.is_integer());
                nums.push(q.to_integer().to_i64()?);
            }
            axes.push(nums);
        }
        Some(ScaledAxes { den: den.to_i64()?, axes })
    }

    fn point(&self, points: GridPoints, flat: usize) -> Vec<Rational> {
        match points {
            GridPoints::Corners => self.corner(flat),
            GridPoints::Centers => self.cell_center(flat),
        }
    }

    pub fn point_count(&self, points: GridPoints) -> usize {
        match points {
            GridPoints::Corners => self.corner_count(),
            GridPoints::Centers => self.cell_count(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GridPoints {
    /// `(resolution + 1)^d` cell corners.
    Corners,
    /// `resolution^d` cell centers.
    Centers,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaledAxes {
    pub den: i64,
    pub axes: Vec<Vec<i64>>,
}

/// Exact membership tester for one representation.
#[derive(Clone, Debug)]
pub struct Membership<'a> {
    rep: &'a Representation,
    evals: Vec<SignEvaluator>,
}

impl<'a> Membership<'a> {
    pub fn new(rep: &'a Representation) -> Membership<'a> {
        Membership { rep, evals: rep.polys().iter().map(SignEvaluator::new).collect() }
    }

    pub fn rep(&self) -> &Representation {
        self.rep
    }

    pub fn contains_scaled(&self, nums: &[i64], den: i64) -> bool {
        let signs: Vec<Sign> = self.evals.iter().map(|e| e.sign_at_scaled(nums, den)).collect();
        self.rep.formula().eval_signs(&signs)
    }

    /// Panics if the point has the wrong length.
    pub fn contains(&self, point: &[Rational]) -> bool {
        match scale_point(point) {
            Some((nums, den)) => self.contains_scaled(&nums, den),
            None => self.rep.contains(point).expect("point length checked by caller"),
        }
    }

    /// Memberships of grid points `range` in flat order.
    pub fn grid_range(&self, grid: &GridSpec, points: GridPoints, range: Range<usize>) -> Vec<bool> {
        match grid.scaled_axes(points) {
            Some(scaled) => {
                let per_axis = scaled.axes[0].len();
                let mut nums = vec![0i64; grid.dim()];
                range
                    .map(|flat| {
                        for (axis, i) in grid.unflatten(flat, per_axis).into_iter().enumerate() {
                            nums[axis] = scaled.axes[axis][i];
                        }
                        self.contains_scaled(&nums, scaled.den)
                    })
                    .collect()
            }
            None => range.map(|flat| self.contains(&grid.point(points, flat))).collect(),
        }
    }

    pub fn grid(&self, grid: &GridSpec, points: GridPoints) -> Vec<bool> {
        self.grid_range(grid, points, 0..grid.point_count(points))
    }
}

/// `nums / den` with a common denominator, if it fits in `i64`.
pub fn scale_point(point: &[Rational]) -> Option<(Vec<i64>, i64)> {
    let mut den = BigInt::one();
    for x in point {
        den = den.lcm(x.denom());
    }
    let den_i = den.to_i64()?;
    let nums = point
        .iter()
        .map(|x| (x.numer() * (&den / x.denom())).to_i64())
        .collect::<Option<Vec<_>>>()?;
    Some((nums, den_i))
}

/// Agreement statistics from a sampling check.
#[derive(Clone, Debug, PartialEq)]
pub struct SampleReport {
    pub tested: usize,
    pub agreements: usize,
    pub first_counterexample: Option<Vec<Rational>>,
    /// Filled by callers that also search for a non-singular zero.
    pub nonsingular_zero: Option<NonsingularZero>,
    /// Nothing was tested.
    pub vacuous: bool,
}

impl SampleReport {
    fn empty() -> SampleReport {
        SampleReport { tested: 0, agreements: 0, first_counterexample: None, nonsingular_zero: None, vacuous: true }
    }

    fn record(&mut self, agree: bool, point: impl FnOnce() -> Vec<Rational>) {
        self.tested += 1;
        self.vacuous = false;
        if agree {
            self.agreements += 1;
        } else if self.first_counterexample.is_none() {
            self.first_counterexample = Some(point());
        }
    }

    /// Every tested point agreed and at least one was tested.
    pub fn full_agreement(&self) -> bool {
        !self.vacuous && self.agreements == self.tested
    }

    pub fn agreement_ratio(&self) -> f64 {
        if self.tested == 0 {
            0.0
        } else {
            self.agreements as f64 / self.tested as f64
        }
    }
}

/// Grid points strictly inside the ball, `x1` varying fastest. Even counts
/// are bumped to the next odd one so the center is always a lattice point.
pub fn ball_lattice(ball: &Ball, per_axis: usize) -> Vec<Vec<Rational>> {
    let per_axis = per_axis.max(3) | 1;
    let half = (per_axis / 2) as i64;
    let step = ball.radius() / int(half);
    let offsets: Vec<Rational> = (-half..=half).map(|k| &step * int(k)).collect();
    let d = ball.dim();
    let total = per_axis.pow(d as u32);
    let r2 = ball.radius() * ball.radius();
    let mut out = Vec::new();
    for flat in 0..total {
        let mut rest = flat;
        let mut d2 = Rational::zero();
        let mut idx = Vec::with_capacity(d);
        for _ in 0..d {
            let i = rest % per_axis;
            rest /= per_axis;
            d2 += &offsets[i] * &offsets[i];
            idx.push(i);
        }
        if d2 < r2 {
            out.push(idx.iter().zip(ball.center()).map(|(&i, c)| c + &offsets[i]).collect());
        }
    }
    out
}

/// Compares `A ∩ B` with the claimed shape at every lattice point.
pub fn check_local_shape(
    rep: &Representation,
    shape: &LocalShape,
    ball: &Ball,
    per_axis: usize,
) -> Result<SampleReport, GeomError> {
    shape_report(rep, shape, ball, per_axis, false)
}

/// Like [`check_local_shape`], but lattice points on `Z(f)` are skipped, so
/// only the split of the ball into `A` and its complement away from `Z(f)`
/// is compared.
pub fn check_local_shape_off_zero(
    rep: &Representation,
    shape: &LocalShape,
    ball: &Ball,
    per_axis: usize,
) -> Result<SampleReport, GeomError> {
    shape_report(rep, shape, ball, per_axis, true)
}

fn shape_report(
    rep: &Representation,
    shape: &LocalShape,
    ball: &Ball,
    per_axis: usize,
    skip_zero: bool,
) -> Result<SampleReport, GeomError> {
    check_dim(rep.dim(), ball.dim())?;
    check_dim(rep.dim(), shape.poly().dim())?;
    let membership = Membership::new(rep);
    let f = SignEvaluator::new(shape.poly());
    let mut report = SampleReport::empty();
    for point in ball_lattice(ball, per_axis) {
        let (in_a, s) = match scale_point(&point) {
            Some((nums, den)) => (membership.contains_scaled(&nums, den), f.sign_at_scaled(&nums, den)),
            None => (membership.contains(&point), shape.poly().sign_at(&point).expect("dimension checked")),
        };
        if skip_zero && s == Sign::Zero {
            continue;
        }
        report.record(in_a == shape.admits(s), || point.clone());
    }
    Ok(report)
}

/// Lattice points of the ball that lie in `A` and on `Z(f)`.
pub fn interior_zero_points(
    rep: &Representation,
    f: &Polynomial,
    ball: &Ball,
    per_axis: usize,
) -> Result<(usize, usize), GeomError> {
    check_dim(rep.dim(), ball.dim())?;
    check_dim(rep.dim(), f.dim())?;
    let membership = Membership::new(rep);
    let (mut in_a, mut on_zero) = (0, 0);
    let lattice = ball_lattice(ball, per_axis);
    for point in &lattice {
        if membership.contains(point) {
            in_a += 1;
            if f.sign_at(point).expect("dimension checked") == Sign::Zero {
                on_zero += 1;
            }
        }
    }
    Ok((in_a, on_zero))
}

fn check_dim(expected: usize, found: usize) -> Result<(), GeomError> {
    if expected == found {
        Ok(())
    } else {
        Err(GeomError::DimensionMismatch { expected, found })
    }
}

/// Thresholds relative to the largest absolute coefficient of `f`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    pub zero: f64,
    pub grad: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { zero: 1e-9, grad: 1e-4 }
    }
}

pub const DEFAULT_ZERO_BUDGET: usize = 256;
pub const DEFAULT_ZERO_PER_AXIS: usize = 17;
const BISECTION_STEPS: usize = 64;

#[derive(Clone, Debug, PartialEq)]
pub struct NonsingularZero {
    pub point: Vec<f64>,
    /// The exact rational point the floating-point values come from.
    pub exact: Vec<Rational>,
    pub value: f64,
    pub gradient: Vec<f64>,
    pub gradient_norm: f64,
    /// Rational endpoints with opposite exact signs of `f`, absent when the
    /// zero is a lattice point.
    pub bracket: Option<(Vec<Rational>, Vec<Rational>)>,
}

/// Default lattice and tolerances.
pub fn find_nonsingular_zero(f: &Polynomial, ball: &Ball, budget: usize) -> Option<NonsingularZero> {
    find_nonsingular_zero_with(f, ball, budget, DEFAULT_ZERO_PER_AXIS, Tolerances::default())
}

/// Looks for a point of `Z(f)` in the ball where the gradient does not
/// vanish: first exact zeros on the lattice, then sign changes along
/// lattice edges refined by exact bisection. `budget` caps the number of
/// edges bisected.
pub fn find_nonsingular_zero_with(
    f: &Polynomial,
    ball: &Ball,
    budget: usize,
    per_axis: usize,
    tol: Tolerances,
) -> Option<NonsingularZero> {
    if f.is_constant() || f.dim() != ball.dim() {
        return None;
    }
    let scale = to_f64(&f.max_abs_coefficient());
    let gradient = f.gradient();
    let accept = |x: &[Rational], bracket: Option<(Vec<Rational>, Vec<Rational>)>| {
        let value = to_f64(&f.eval(x).ok()?);
        if libm::fabs(value) > tol.zero * scale {
            return None;
        }
        let grad: Vec<f64> = gradient.iter().map(|g| to_f64(&g.eval(x).expect("same dimension"))).collect();
        let norm = libm::sqrt(grad.iter().map(|g| g * g).sum());
        (norm >= tol.grad * scale).then(|| NonsingularZero {
            point: x.iter().map(to_f64).collect(),
            exact: x.to_vec(),
            value,
            gradient: grad,
            gradient_norm: norm,
            bracket,
        })
    };

    let per_axis = per_axis.max(3) | 1;
    let half = (per_axis / 2) as i64;
    let step = ball.radius() / int(half);
    let d = ball.dim();
    let index_point = |idx: &[usize]| -> Vec<Rational> {
        idx.iter()
            .zip(ball.center())
            .map(|(&i, c)| c + &step * int(i as i64 - half))
            .collect()
    };
    let total = per_axis.pow(d as u32);
    let unflatten = |mut flat: usize| -> Vec<usize> {
        (0..d)
            .map(|_| {
                let i = flat % per_axis;
                flat /= per_axis;
                i
            })
            .collect()
    };
    let mut signs: Vec<Option<Sign>> = Vec::with_capacity(total);
    for flat in 0..total {
        let p = index_point(&unflatten(flat));
        if !ball.contains(&p) {
            signs.push(None);
            continue;
        }
        let s = f.sign_at(&p).expect("same dimension");
        if s == Sign::Zero {
            if let Some(z) = accept(&p, None) {
                return Some(z);
            }
        }
        signs.push(Some(s));
    }

    let mut used = 0;
    for flat in 0..total {
        let Some(sa) = signs[flat] else { continue };
        let idx = unflatten(flat);
        for axis in 0..d {
            if idx[axis] + 1 == per_axis {
                continue;
            }
            let next = flat + per_axis.pow(axis as u32);
            let Some(sb) = signs[next] else { continue };
            if sa == Sign::Zero || sb == Sign::Zero || sa == sb {
                continue;
            }
            if used == budget {
                return None;
            }
            used += 1;
            let mut lo = index_point(&idx);
            let mut hi = lo.clone();
            hi[axis] += &step;
            for _ in 0..BISECTION_STEPS {
                let mut mid = lo.clone();
                mid[axis] = (&lo[axis] + &hi[axis]) / int(2);
                match f.sign_at(&mid).expect("same dimension") {
                    Sign::Zero => {
                        lo = mid.clone();
                        hi = mid;
                        break;
                    }
                    s if s == sa => lo = mid,
                    _ => hi = mid,
                }
            }
            let mut mid = lo.clone();
            mid[axis] = (&lo[axis] + &hi[axis]) / int(2);
            let bracket = (lo != hi).then(|| (lo.clone(), hi.clone()));
            if let Some(z) = accept(&mid, bracket) {
                return Some(z);
            }
        }
    }
    None
}

/// A grid cell whose corners disagree on membership.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryCell {
    /// Lower corner multi-index.
    pub cell: Vec<usize>,
    /// `min_i min_corners |p_i|`.
    pub min_abs_corner: f64,
    /// `min_i |p_i|` at the cell center.
    pub min_abs_center: f64,
    /// Whether some `p_i` satisfies `|p_i(center)| <= 4 · diam · L_i`, with
    /// `L_i` the largest gradient norm of `p_i` seen at the corners and the
    /// center.
    pub within_bound: bool,
}

/// Boundary cells from precomputed corner memberships (flat corner order).
pub fn boundary_cells_from(rep: &Representation, grid: &GridSpec, corners: &[bool]) -> Vec<BoundaryCell> {
    let n = grid.resolution();
    let d = grid.dim();
    let diam = grid.cell_diameter();
    let gradients: Vec<Vec<Polynomial>> = rep.polys().iter().map(Polynomial::gradient).collect();
    let mut out = Vec::new();
    for cell_flat in 0..grid.cell_count() {
        let cell = grid.unflatten(cell_flat, n);
        let corner_flats: Vec<usize> = (0..1usize << d)
            .map(|mask| {
                let idx: Vec<usize> = (0..d).map(|a| cell[a] + ((mask >> a) & 1)).collect();
                grid.flatten(&idx, n + 1)
            })
            .collect();
        let first = corners[corner_flats[0]];
        if corner_flats.iter().all(|&c| corners[c] == first) {
            continue;
        }
        let corner_points: Vec<Vec<f64>> = corner_flats
            .iter()
            .map(|&c| grid.corner(c).iter().map(to_f64).collect())
            .collect();
        let center: Vec<f64> = grid.cell_center(cell_flat).iter().map(to_f64).collect();
        let mut min_abs_corner = f64::INFINITY;
        let mut min_abs_center = f64::INFINITY;
        let mut within_bound = false;
        for (p, grad) in rep.polys().iter().zip(&gradients) {
            let grad_norm = |x: &[f64]| {
                libm::sqrt(grad.iter().map(|g| g.eval_f64(x).expect("same dimension")).map(|v| v * v).sum())
            };
            let mut lipschitz = grad_norm(&center);
            for x in &corner_points {
                min_abs_corner = min_abs_corner.min(libm::fabs(p.eval_f64(x).expect("same dimension")));
                lipschitz = lipschitz.max(grad_norm(x));
            }
            let at_center = libm::fabs(p.eval_f64(&center).expect("same dimension"));
            min_abs_center = min_abs_center.min(at_center);
            if at_center <= 4.0 * diam * lipschitz + f64::EPSILON * (1.0 + at_center) {
                within_bound = true;
            }
        }
        out.push(BoundaryCell { cell, min_abs_corner, min_abs_center, within_bound });
    }
    out
}

pub fn boundary_cells(rep: &Representation, grid: &GridSpec) -> Result<Vec<BoundaryCell>, GeomError> {
    check_dim(rep.dim(), grid.dim())?;
    let corners = Membership::new(rep).grid(grid, GridPoints::Corners);
    Ok(boundary_cells_from(rep, grid, &corners))
}

/// Exact agreement of two memberships over all grid corners.
pub fn compare_sets(a: &Representation, b: &Representation, grid: &GridSpec) -> Result<SampleReport, GeomError> {
    check_dim(a.dim(), b.dim())?;
    check_dim(a.dim(), grid.dim())?;
    let ma = Membership::new(a).grid(grid, GridPoints::Corners);
    let mb = Membership::new(b).grid(grid, GridPoints::Corners);
    Ok(compare_memberships(grid, &ma, &mb))
}

/// Agreement report from two corner membership vectors.
pub fn compare_memberships(grid: &GridSpec, a: &[bool], b: &[bool]) -> SampleReport {
    let mut report = SampleReport::empty();
    for (flat, (x, y)) in a.iter().zip(b).enumerate() {
        report.record(x == y, || grid.corner(flat));
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_formula;
    use crate::rational::ratio;

    fn ball(c: &[Rational], r: Rational) -> Ball {
        Ball::new(c.to_vec(), r).unwrap()
    }

    #[test]
    fn lattice_of_unit_interval() {
        let pts = ball_lattice(&ball(&[int(0)], int(1)), 5);
        let xs: Vec<Rational> = pts.into_iter().map(|p| p[0].clone()).collect();
        assert_eq!(xs, vec![ratio(-1, 2), int(0), ratio(1, 2)]);
        assert!(!ball_lattice(&ball(&vec![int(0); 6], ratio(1, 3)), 4).is_empty());
    }

    #[test]
    fn far_ball_misses_disk() {
        let disk = parse_formula("x1^2 + x2^2 <= 1").unwrap();
        let b = ball(&[int(2), int(2)], ratio(1, 10));
        for p in ball_lattice(&b, 9) {
            assert!(!disk.contains(&p).unwrap());
        }
    }

    #[test]
    fn saturn_shapes() {
        let saturn = parse_formula("(1 - x1^2 - x2^2)*x2^2 >= 0").unwrap();
        let x2 = Polynomial::var(2, 1);
        let r = check_local_shape(&saturn, &LocalShape::ZeroSet(x2), &ball(&[int(2), int(0)], ratio(1, 4)), 33)
            .unwrap();
        assert!(r.full_agreement(), "{:?}", r);
        assert_eq!(r.tested, ball_lattice(&ball(&[int(2), int(0)], ratio(1, 4)), 33).len());
    }

    #[test]
    fn general_set_excludes_line() {
        let rep = parse_formula("x2 > 0 & ((x1-1)^2 + x2^2 <= 1 | x1^2 + x2^2 <= 1)").unwrap();
        let shape = LocalShape::ClosedHalf(Polynomial::var(2, 1));
        let r = check_local_shape(&rep, &shape, &ball(&[ratio(1, 2), int(0)], ratio(1, 8)), 33).unwrap();
        let cx = r.first_counterexample.unwrap();
        assert_eq!(cx[1], int(0));
    }

    #[test]
    fn zero_search() {
        let x2 = Polynomial::var(2, 1);
        let z = find_nonsingular_zero(&x2, &ball(&[int(0), int(0)], int(1)), 10).unwrap();
        assert_eq!(z.gradient, vec![0.0, 1.0]);
        let (x1, x2) = (Polynomial::var(2, 0), Polynomial::var(2, 1));
        let cubic = &(&x1.pow(2) + &x2.pow(2)) - &x1.pow(3);
        assert!(find_nonsingular_zero(&cubic, &ball(&[int(0), int(0)], ratio(1, 2)), 1000).is_none());
        let on_curve = find_nonsingular_zero(&cubic, &ball(&[int(2), int(2)], ratio(1, 4)), 1000).unwrap();
        assert_eq!(on_curve.exact, vec![int(2), int(2)]);
    }

    #[test]
    fn bisection_brackets_irrational_zero() {
        let (x1, x2) = (Polynomial::var(2, 0), Polynomial::var(2, 1));
        let f = &(&x1.pow(2) - &Polynomial::constant(2, int(2))) + &(&x2 * &Polynomial::zero(2));
        let z = find_nonsingular_zero(&f, &ball(&[ratio(3, 2), int(0)], ratio(1, 4)), 10).unwrap();
        let (lo, hi) = z.bracket.unwrap();
        assert_ne!(f.sign_at(&lo).unwrap(), f.sign_at(&hi).unwrap());
        assert!((z.point[0] - core::f64::consts::SQRT_2).abs() < 1e-12);
    }

    #[test]
    fn disk_boundary_and_comparison() {
        let disk = parse_formula("1 - x1^2 - x2^2 >= 0").unwrap();
        let grid = GridSpec::cube(2, int(-2), int(2), 64).unwrap();
        let cells = boundary_cells(&disk, &grid).unwrap();
        assert!(!cells.is_empty());
        assert!(cells.iter().all(|c| c.within_bound && c.min_abs_center < 0.2));
        let everything = parse_formula("true").unwrap();
        let everything = Representation::new(2, vec![], everything.formula().clone()).unwrap();
        assert!(boundary_cells(&everything, &grid).unwrap().is_empty());
        let square = parse_formula("x1 >= -1 & x1 <= 1 & x2 >= -1 & x2 <= 1").unwrap();
        let r = compare_sets(&disk, &square, &grid).unwrap();
        assert!(r.first_counterexample.is_some());
        assert!(compare_sets(&disk, &disk, &grid).unwrap().full_agreement());
    }

    #[test]
    fn scaled_grid_matches_exact() {
        let rep = parse_formula("x1^3 - x2 > 1/3").unwrap();
        let grid = GridSpec::new(vec![(ratio(-7, 3), ratio(5, 2)), (int(-1), int(2))], 10).unwrap();
        let m = Membership::new(&rep);
        for points in [GridPoints::Corners, GridPoints::Centers] {
            let fast = m.grid(&grid, points);
            for (flat, &v) in fast.iter().enumerate() {
                assert_eq!(v, rep.contains(&grid.point(points, flat)).unwrap());
            }
        }
    }
}
