//! Sparse multivariate polynomials with exact rational coefficients.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::monomial::{write_var, Monomial};
use crate::rational::{format_rational, sign_of, to_f64, Rational};
use crate::sign::Sign;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyError {
    DimensionMismatch { left: usize, right: usize },
    PointLength { expected: usize, found: usize },
    AxisOutOfRange { axis: usize, dim: usize },
    ZeroPolynomial,
    ZeroDimension,
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::DimensionMismatch { left, right } => {
                write!(f, "dimension mismatch: {} vs {}", left, right)
            }
            PolyError::PointLength { expected, found } => {
                write!(f, "point has {} coordinates, expected {}", found, expected)
            }
            PolyError::AxisOutOfRange { axis, dim } => {
                write!(f, "axis {} out of range for dimension {}", axis, dim)
            }
            PolyError::ZeroPolynomial => f.write_str("zero polynomial"),
            PolyError::ZeroDimension => f.write_str("ambient dimension must be positive"),
        }
    }
}

/// A polynomial in `x1, …, xd` over the rationals.
///
/// Always stored fully expanded: no zero coefficients, every monomial of
/// length `dim`, terms kept in graded-lex order. The zero polynomial has no
/// terms but still carries its dimension.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    dim: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    /// Panics on `dim == 0`; use [`Polynomial::from_terms`] for a fallible path.
    pub fn zero(dim: usize) -> Polynomial {
        assert!(dim > 0, "ambient dimension must be positive");
        Polynomial { dim, terms: BTreeMap::new() }
    }

    pub fn one(dim: usize) -> Polynomial {
        Polynomial::constant(dim, Rational::one())
    }

    pub fn constant(dim: usize, c: Rational) -> Polynomial {
        let mut p = Polynomial::zero(dim);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(dim), c);
        }
        p
    }

    /// The coordinate `x_{axis+1}`. Panics when `axis >= dim`.
    pub fn var(dim: usize, axis: usize) -> Polynomial {
        assert!(axis < dim, "axis {} out of range for dimension {}", axis, dim);
        let mut p = Polynomial::zero(dim);
        p.terms.insert(Monomial::var(dim, axis), Rational::one());
        p
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, summing
    /// repeated monomials and dropping zeros.
    pub fn from_terms<I>(dim: usize, terms: I) -> Result<Polynomial, PolyError>
    where
        I: IntoIterator<Item = (Vec<u32>, Rational)>,
    {
        if dim == 0 {
            return Err(PolyError::ZeroDimension);
        }
        let mut p = Polynomial::zero(dim);
        for (exps, c) in terms {
            if exps.len() != dim {
                return Err(PolyError::DimensionMismatch { left: dim, right: exps.len() });
            }
            p.add_term(Monomial::from_exponents(exps), c);
        }
        Ok(p)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use alloc::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_constant() {
            Some(self.terms.values().next().cloned().unwrap_or_else(Rational::zero))
        } else {
            None
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> + '_ {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Graded-lex leading term, `None` for zero.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, axis: usize) -> u32 {
        self.terms.keys().map(|m| m.exponents()[axis]).max().unwrap_or(0)
    }

    /// Axes whose variable occurs in some term.
    pub fn variables(&self) -> Vec<usize> {
        (0..self.dim).filter(|&a| self.degree_in(a) > 0).collect()
    }

    /// Largest absolute coefficient, zero for the zero polynomial.
    pub fn max_abs_coefficient(&self) -> Rational {
        self.terms.values().map(|c| c.abs()).max().unwrap_or_else(Rational::zero)
    }

    /// Re-embeds a constant into another ambient dimension.
    pub fn lift_constant(&self, dim: usize) -> Option<Polynomial> {
        let c = self.constant_value()?;
        (dim > 0).then(|| Polynomial::constant(dim, c))
    }

    /// `self -= c · m · f`, in place.
    pub(crate) fn sub_scaled_shifted(&mut self, c: &Rational, m: &Monomial, f: &Polynomial) {
        for (fm, fc) in &f.terms {
            self.add_term(fm.mul(m), -(c * fc));
        }
    }

    fn same_dim(&self, other: &Polynomial) -> Result<(), PolyError> {
        if self.dim == other.dim {
            Ok(())
        } else {
            Err(PolyError::DimensionMismatch { left: self.dim, right: other.dim })
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.same_dim(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.same_dim(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.same_dim(other)?;
        let mut out = Polynomial::zero(self.dim);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.dim);
        }
        Polynomial {
            dim: self.dim,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    /// Multiplies by the monomial `m`.
    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            dim: self.dim,
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v.clone())).collect(),
        }
    }

    pub fn pow(&self, mut k: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one(self.dim);
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact value at a rational point.
    pub fn eval(&self, point: &[Rational]) -> Result<Rational, PolyError> {
        if point.len() != self.dim {
            return Err(PolyError::PointLength { expected: self.dim, found: point.len() });
        }
        let powers = self.powers_table(point, Rational::one(), |a, b| a * b);
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (axis, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t *= &powers[axis][e as usize];
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    pub fn sign_at(&self, point: &[Rational]) -> Result<Sign, PolyError> {
        self.eval(point).map(|v| sign_of(&v))
    }

    /// Floating-point evaluation, used only by numerical searches.
    pub fn eval_f64(&self, point: &[f64]) -> Result<f64, PolyError> {
        if point.len() != self.dim {
            return Err(PolyError::PointLength { expected: self.dim, found: point.len() });
        }
        let powers = self.powers_table(point, 1.0, |a, b| a * b);
        Ok(self
            .terms
            .iter()
            .map(|(m, c)| {
                m.exponents()
                    .iter()
                    .enumerate()
                    .fold(to_f64(c), |t, (axis, &e)| t * powers[axis][e as usize])
            })
            .sum())
    }

    fn powers_table<T: Clone>(&self, point: &[T], one: T, mul: impl Fn(&T, &T) -> T) -> Vec<Vec<T>> {
        (0..self.dim)
            .map(|axis| {
                let top = self.degree_in(axis) as usize;
                let mut row = Vec::with_capacity(top + 1);
                row.push(one.clone());
                for k in 1..=top {
                    let next = mul(&row[k - 1], &point[axis]);
                    row.push(next);
                }
                row
            })
            .collect()
    }

    /// Formal partial derivative with respect to `x_{axis+1}`.
    pub fn partial(&self, axis: usize) -> Result<Polynomial, PolyError> {
        if axis >= self.dim {
            return Err(PolyError::AxisOutOfRange { axis, dim: self.dim });
        }
        let mut out = Polynomial::zero(self.dim);
        for (m, c) in &self.terms {
            let e = m.exponents()[axis];
            if e == 0 {
                continue;
            }
            let mut dm = m.clone();
            dm.exponents_mut()[axis] = e - 1;
            out.add_term(dm, c * Rational::from_integer(BigInt::from(e)));
        }
        Ok(out)
    }

    pub fn gradient(&self) -> Vec<Polynomial> {
        (0..self.dim)
            .map(|axis| self.partial(axis).expect("axis in range"))
            .collect()
    }

    /// Positive content: `self = content · primitive_part` with the
    /// primitive part having coprime integer coefficients.
    pub fn content(&self) -> Rational {
        let mut lcm_den = BigInt::one();
        for c in self.terms.values() {
            lcm_den = lcm_den.lcm(c.denom());
        }
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            let scaled = c.numer() * (&lcm_den / c.denom());
            g = g.gcd(&scaled);
        }
        if g.is_zero() {
            return Rational::zero();
        }
        Rational::new(g, lcm_den)
    }

    /// Coprime integer coefficients, obtained by a positive rescaling (so
    /// signs of values are preserved). Zero stays zero.
    pub fn primitive_part(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.content();
        self.scale(&c.recip())
    }

    /// Coprime integer coefficients with a positive graded-lex leading
    /// coefficient. Two polynomials are constant multiples of each other
    /// exactly when their normalizations agree.
    pub fn normalize(&self) -> Result<Polynomial, PolyError> {
        let (_, lc) = self.leading_term().ok_or(PolyError::ZeroPolynomial)?;
        let p = self.primitive_part();
        Ok(if lc.is_negative() { -&p } else { p })
    }

    /// The rational `c` with `self = c · normalize(self)`.
    pub fn normalization_factor(&self) -> Result<Rational, PolyError> {
        let (_, lc) = self.leading_term().ok_or(PolyError::ZeroPolynomial)?;
        let c = self.content();
        Ok(if lc.is_negative() { -c } else { c })
    }

    /// Replaces `x_{axis+1}` by `q`.
    pub fn substitute(&self, axis: usize, q: &Polynomial) -> Result<Polynomial, PolyError> {
        if axis >= self.dim {
            return Err(PolyError::AxisOutOfRange { axis, dim: self.dim });
        }
        self.same_dim(q)?;
        let top = self.degree_in(axis) as usize;
        let mut powers = vec![Polynomial::one(self.dim)];
        for k in 1..=top {
            let next = &powers[k - 1] * q;
            powers.push(next);
        }
        let mut out = Polynomial::zero(self.dim);
        for (m, c) in &self.terms {
            let mut rest = m.clone();
            let e = rest.exponents()[axis] as usize;
            rest.exponents_mut()[axis] = 0;
            let piece = powers[e].mul_monomial(&rest).scale(c);
            out = &out + &piece;
        }
        Ok(out)
    }

    /// Coefficients with respect to `x_{axis+1}`: `self = Σ_k coeffs[k]·x^k`,
    /// each coefficient free of that variable.
    pub fn coefficients_in(&self, axis: usize) -> Vec<Polynomial> {
        let top = self.degree_in(axis) as usize;
        let mut out = vec![Polynomial::zero(self.dim); top + 1];
        for (m, c) in &self.terms {
            let mut rest = m.clone();
            let e = rest.exponents()[axis] as usize;
            rest.exponents_mut()[axis] = 0;
            out[e].add_term(rest, c.clone());
        }
        out
    }

    /// Inverse of [`Polynomial::coefficients_in`].
    pub fn from_coefficients(dim: usize, axis: usize, coeffs: &[Polynomial]) -> Polynomial {
        let mut out = Polynomial::zero(dim);
        for (k, c) in coeffs.iter().enumerate() {
            let mut m = Monomial::one(dim);
            m.exponents_mut()[axis] = k as u32;
            for (cm, cv) in &c.terms {
                out.add_term(cm.mul(&m), cv.clone());
            }
        }
        out
    }

    /// Gcd of all monomials in the support (the monomial content).
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        match it.next() {
            None => Monomial::one(self.dim),
            Some(first) => it.fold(first.clone(), |acc, m| acc.gcd(m)),
        }
    }

    /// Divides every term by the monomial `m`; `None` if some term is not a
    /// multiple of it.
    pub fn div_monomial(&self, m: &Monomial) -> Option<Polynomial> {
        let mut terms = BTreeMap::new();
        for (k, v) in &self.terms {
            terms.insert(k.div(m)?, v.clone());
        }
        Some(Polynomial { dim: self.dim, terms })
    }

    /// Renders as `(cofactor)*monomial` when the support has a non-trivial
    /// monomial content and more than one term, otherwise like `Display`.
    pub fn to_factored_string(&self) -> String {
        let content = self.monomial_content();
        if self.num_terms() > 1 && !content.is_one() {
            let rest = self.div_monomial(&content).expect("content divides every term");
            alloc::format!("({})*{}", rest, content)
        } else {
            alloc::format!("{}", self)
        }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        // Ascending total degree; inside a degree x1 comes first.
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| {
            a.degree()
                .cmp(&b.degree())
                .then_with(|| b.exponents().cmp(a.exponents()))
        });
        for (i, (m, c)) in terms.into_iter().enumerate() {
            let magnitude = c.abs();
            if i == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            if m.is_one() {
                f.write_str(&format_rational(&magnitude))?;
            } else if magnitude.is_one() {
                write!(f, "{}", m)?;
            } else {
                write!(f, "{}*{}", format_rational(&magnitude), m)?;
            }
        }
        Ok(())
    }
}

/// Writes the variable name for `axis` in the formula grammar.
pub fn variable_name(axis: usize) -> String {
    let mut s = String::new();
    write_var(&mut s, axis).expect("writing to a String");
    s
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl<'a> $trait<&'a Polynomial> for &'a Polynomial {
            type Output = Polynomial;
            /// Panics on a dimension mismatch.
            fn $method(self, rhs: &'a Polynomial) -> Polynomial {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{}", e))
            }
        }
        impl $trait<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            dim: self.dim,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

/// Exact sign evaluation at points given over a common denominator.
///
/// The polynomial is rescaled to integer coefficients and homogenized with
/// respect to the denominator, so the sign at `nums / den` is the sign of an
/// integer expression. Evaluation runs in `i128` and falls back to big
/// integers on overflow.
#[derive(Clone, Debug)]
pub struct SignEvaluator {
    dim: usize,
    degree: u32,
    small: Option<Vec<(i128, Vec<u32>)>>,
    big: Vec<(BigInt, Vec<u32>)>,
}

impl SignEvaluator {
    pub fn new(p: &Polynomial) -> SignEvaluator {
        let prim = p.primitive_part();
        let degree = prim.total_degree().unwrap_or(0);
        let big: Vec<(BigInt, Vec<u32>)> = prim
            .terms
            .iter()
            .map(|(m, c)| (c.numer().clone(), m.exponents().to_vec()))
            .collect();
        let small = big
            .iter()
            .map(|(c, e)| c.to_i128().map(|c| (c, e.clone())))
            .collect();
        SignEvaluator { dim: p.dim, degree, small, big }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Sign of the polynomial at `nums[i] / den`; `den` must be positive.
    pub fn sign_at_scaled(&self, nums: &[i64], den: i64) -> Sign {
        debug_assert!(den > 0);
        debug_assert_eq!(nums.len(), self.dim);
        if let Some(small) = &self.small {
            if let Some(v) = self.eval_small(small, nums, den) {
                return match v.signum() {
                    -1 => Sign::Negative,
                    0 => Sign::Zero,
                    _ => Sign::Positive,
                };
            }
        }
        let v = self.eval_big(nums, den);
        if v.is_zero() {
            Sign::Zero
        } else if v.is_positive() {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    fn eval_small(&self, terms: &[(i128, Vec<u32>)], nums: &[i64], den: i64) -> Option<i128> {
        let mut acc: i128 = 0;
        for (c, exps) in terms {
            let mut t = *c;
            let mut deg = 0u32;
            for (axis, &e) in exps.iter().enumerate() {
                deg += e;
                t = t.checked_mul((nums[axis] as i128).checked_pow(e)?)?;
            }
            t = t.checked_mul((den as i128).checked_pow(self.degree - deg)?)?;
            acc = acc.checked_add(t)?;
        }
        Some(acc)
    }

    fn eval_big(&self, nums: &[i64], den: i64) -> BigInt {
        let mut acc = BigInt::zero();
        for (c, exps) in &self.big {
            let mut t = c.clone();
            let mut deg = 0u32;
            for (axis, &e) in exps.iter().enumerate() {
                deg += e;
                if e > 0 {
                    t *= num_traits::pow(BigInt::from(nums[axis]), e as usize);
                }
            }
            t *= num_traits::pow(BigInt::from(den), (self.degree - deg) as usize);
            acc += t;
        }
        acc
    }
}
