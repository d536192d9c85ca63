//! Exact division, factor multiplicities, gcd and squarefree parts.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;


use crate::irreducible::{check_irreducible, Irreducibility};
use crate::monomial::Monomial;
use crate::poly::{PolyError, Polynomial};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FactorError {
    Poly(PolyError),
    /// Division by the zero polynomial.
    ZeroDivisor,
    /// A multiplicity was asked for a constant factor.
    ConstantFactor,
    /// The polynomial whose factors are counted is zero.
    ZeroPolynomial,
    /// `gcd(0, 0)`.
    BothZero,
    /// Squarefree part of a constant.
    ConstantInput,
    /// Entry `index` of a product list is zero.
    ZeroEntry { index: usize },
    EmptyProduct,
}

impl From<PolyError> for FactorError {
    fn from(e: PolyError) -> Self {
        FactorError::Poly(e)
    }
}

impl fmt::Display for FactorError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactorError::Poly(e) => write!(f, "{}", e),
            FactorError::ZeroDivisor => f.write_str("division by the zero polynomial"),
            FactorError::ConstantFactor => f.write_str("multiplicity of a constant factor is undefined"),
            FactorError::ZeroPolynomial => f.write_str("multiplicity inside the zero polynomial is undefined"),
            FactorError::BothZero => f.write_str("gcd(0, 0) is undefined"),
            FactorError::ConstantInput => f.write_str("squarefree part of a constant"),
            FactorError::ZeroEntry { index } => write!(f, "polynomial #{} is zero", index + 1),
            FactorError::EmptyProduct => f.write_str("empty polynomial list"),
        }
    }
}

/// `Some(g)` with `f·g = p` exactly, or `None` when `f` does not divide `p`.
///
/// Works by reducing leading terms in graded-lex order: if `f` divides `p`
/// then the leading monomial of every intermediate remainder is a multiple
/// of the leading monomial of `f`, so the first failure proves
/// non-divisibility.
pub fn try_divide(p: &Polynomial, f: &Polynomial) -> Result<Option<Polynomial>, FactorError> {
    if p.dim() != f.dim() {
        return Err(PolyError::DimensionMismatch { left: p.dim(), right: f.dim() }.into());
    }
    let (lm_f, lc_f) = f.leading_term().ok_or(FactorError::ZeroDivisor)?;
    let (lm_f, lc_inv) = (lm_f.clone(), lc_f.recip());
    let mut rest = p.clone();
    let mut quotient = Polynomial::zero(p.dim());
    while let Some((lm, lc)) = rest.leading_term() {
        let Some(shift) = lm.div(&lm_f) else {
            return Ok(None);
        };
        let c = lc * &lc_inv;
        rest.sub_scaled_shifted(&c, &shift, f);
        quotient.add_term(shift, c);
    }
    Ok(Some(quotient))
}

fn divide_exact(p: &Polynomial, f: &Polynomial) -> Polynomial {
    try_divide(p, f)
        .expect("same dimension, nonzero divisor")
        .expect("exact division")
}

/// Largest `k` with `f^k | p`.
///
/// Gallops over `f, f^2, f^4, …` and then walks the binary digits back down,
/// so only `O(log k)` divisions are needed.
pub fn multiplicity(f: &Polynomial, p: &Polynomial) -> Result<u32, FactorError> {
    if f.dim() != p.dim() {
        return Err(PolyError::DimensionMismatch { left: f.dim(), right: p.dim() }.into());
    }
    if f.is_constant() {
        return Err(FactorError::ConstantFactor);
    }
    if p.is_zero() {
        return Err(FactorError::ZeroPolynomial);
    }
    let f_deg = f.total_degree().unwrap_or(0);
    let mut rest = p.clone();
    let mut k = 0u32;
    let mut powers = vec![f.clone()];
    loop {
        let top = powers.last().expect("non-empty");
        if top.total_degree() > rest.total_degree() {
            break;
        }
        match try_divide(&rest, top)? {
            Some(q) => {
                rest = q;
                k += 1 << (powers.len() - 1);
                let next = top * top;
                powers.push(next);
            }
            None => break,
        }
    }
    // The last pushed power failed or was never tried; step below it.
    for j in (0..powers.len().saturating_sub(1)).rev() {
        if (f_deg << j) > rest.total_degree().unwrap_or(0) {
            continue;
        }
        if let Some(q) = try_divide(&rest, &powers[j])? {
            rest = q;
            k += 1 << j;
        }
    }
    Ok(k)
}

/// Normalized greatest common divisor.
///
/// Primitive polynomial remainder sequences over a recursive representation:
/// the main variable is the one of highest degree (ties go to the lowest
/// index), contents are gcds of the coefficient polynomials in the remaining
/// variables.
pub fn gcd(p: &Polynomial, q: &Polynomial) -> Result<Polynomial, FactorError> {
    if p.dim() != q.dim() {
        return Err(PolyError::DimensionMismatch { left: p.dim(), right: q.dim() }.into());
    }
    match (p.is_zero(), q.is_zero()) {
        (true, true) => Err(FactorError::BothZero),
        (true, false) => Ok(q.normalize()?),
        (false, true) => Ok(p.normalize()?),
        (false, false) => Ok(gcd_nonzero(p, q).normalize()?),
    }
}

fn gcd_nonzero(a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a.is_constant() || b.is_constant() {
        return Polynomial::one(a.dim());
    }
    let axis = (0..a.dim())
        .max_by_key(|&v| (a.degree_in(v).max(b.degree_in(v)), core::cmp::Reverse(v)))
        .expect("positive dimension");
    let (da, db) = (a.degree_in(axis), b.degree_in(axis));
    if da == 0 {
        return gcd_nonzero(a, &content_in(b, axis));
    }
    if db == 0 {
        return gcd_nonzero(&content_in(a, axis), b);
    }
    let (ca, cb) = (content_in(a, axis), content_in(b, axis));
    let content = gcd_nonzero(&ca, &cb);
    let mut hi = divide_exact(a, &ca).primitive_part();
    let mut lo = divide_exact(b, &cb).primitive_part();
    if hi.degree_in(axis) < lo.degree_in(axis) {
        core::mem::swap(&mut hi, &mut lo);
    }
    let g = loop {
        let r = pseudo_remainder(&hi, &lo, axis);
        if r.is_zero() {
            break lo;
        }
        if r.degree_in(axis) == 0 {
            break Polynomial::one(a.dim());
        }
        hi = lo;
        lo = primitive_in(&r, axis);
    };
    (&content * &g).primitive_part()
}

/// Gcd of the coefficients of `p` seen as a polynomial in `x_{axis+1}`.
fn content_in(p: &Polynomial, axis: usize) -> Polynomial {
    let mut acc: Option<Polynomial> = None;
    for c in p.coefficients_in(axis).into_iter().filter(|c| !c.is_zero()) {
        acc = Some(match acc {
            None => c.primitive_part(),
            Some(g) => {
                if g.is_constant() {
                    return Polynomial::one(p.dim());
                }
                gcd_nonzero(&g, &c).primitive_part()
            }
        });
    }
    acc.unwrap_or_else(|| Polynomial::one(p.dim()))
}

fn primitive_in(p: &Polynomial, axis: usize) -> Polynomial {
    divide_exact(p, &content_in(p, axis)).primitive_part()
}

fn leading_coefficient_in(p: &Polynomial, axis: usize) -> Polynomial {
    p.coefficients_in(axis).pop().expect("at least one coefficient")
}

/// Pseudo-remainder of `a` by `b` in `x_{axis+1}`; multiplies through by the
/// leading coefficient of `b` instead of dividing.
fn pseudo_remainder(a: &Polynomial, b: &Polynomial, axis: usize) -> Polynomial {
    let db = b.degree_in(axis);
    let lcb = leading_coefficient_in(b, axis);
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(axis) >= db {
        let shift = r.degree_in(axis) - db;
        let lcr = leading_coefficient_in(&r, axis);
        let mut m = Monomial::one(a.dim());
        m.exponents_mut()[axis] = shift;
        r = &(&lcb * &r) - &(&lcr * &b.mul_monomial(&m));
        r = r.primitive_part();
    }
    r
}

/// `p / gcd(p, ∂p/∂x1, …, ∂p/∂xd)`, normalized: the product of the distinct
/// irreducible factors of `p`, each to the first power.
pub fn squarefree_part(p: &Polynomial) -> Result<Polynomial, FactorError> {
    if p.is_constant() {
        return Err(FactorError::ConstantInput);
    }
    let mut g = p.clone();
    for d in p.gradient() {
        if !d.is_zero() {
            g = gcd(&g, &d)?;
        }
    }
    Ok(divide_exact(p, &g).normalize()?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Odd,
    Even,
}

impl Parity {
    pub fn of(k: u32) -> Parity {
        if k % 2 == 1 {
            Parity::Odd
        } else {
            Parity::Even
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Odd => "odd",
            Parity::Even => "even",
        })
    }
}

/// A normalized factor together with its multiplicity in a product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorMultiplicity {
    pub factor: Polynomial,
    pub multiplicity: u32,
    /// Multiplicity of the factor in each entry of the input list.
    pub per_entry: Vec<u32>,
}

impl FactorMultiplicity {
    pub fn parity(&self) -> Parity {
        Parity::of(self.multiplicity)
    }

    /// Indices of the input entries the factor divides.
    pub fn entries(&self) -> impl Iterator<Item = usize> + '_ {
        self.per_entry.iter().enumerate().filter(|(_, &k)| k > 0).map(|(i, _)| i)
    }
}

/// Bookkeeping for `p_1 ⋯ p_m = unit · Π f_i^{s_i} · residue`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductFactorization {
    pub factors: Vec<FactorMultiplicity>,
    pub unit: Rational,
    /// What is left after peeling the known factors, normalized; `1` when
    /// nothing is left.
    pub residue: Polynomial,
    pub residue_squarefree: Option<Polynomial>,
    /// Whether the residue is a certified irreducible; `None` for a constant
    /// residue.
    pub residue_irreducibility: Option<Irreducibility>,
}

impl ProductFactorization {
    /// `unit · Π factor^multiplicity · residue`.
    pub fn reconstruct(&self) -> Polynomial {
        let dim = self.residue.dim();
        let mut acc = Polynomial::constant(dim, self.unit.clone());
        for fm in &self.factors {
            acc = &acc * &fm.factor.pow(fm.multiplicity);
        }
        &acc * &self.residue
    }
}

/// Peels each known candidate factor off `Π ps` to its exact multiplicity
/// and reports on the residue.
pub fn product_factorization(
    ps: &[Polynomial],
    known_factors: &[Polynomial],
) -> Result<ProductFactorization, FactorError> {
    let first = ps.first().ok_or(FactorError::EmptyProduct)?;
    let dim = first.dim();
    for (index, p) in ps.iter().enumerate() {
        if p.dim() != dim {
            return Err(PolyError::DimensionMismatch { left: dim, right: p.dim() }.into());
        }
        if p.is_zero() {
            return Err(FactorError::ZeroEntry { index });
        }
    }
    let mut rest = ps.iter().fold(Polynomial::one(dim), |acc, p| &acc * p);
    let mut factors: Vec<FactorMultiplicity> = Vec::new();
    for f in known_factors {
        if f.dim() != dim {
            return Err(PolyError::DimensionMismatch { left: dim, right: f.dim() }.into());
        }
        if f.is_constant() {
            return Err(FactorError::ConstantFactor);
        }
        let f = f.normalize()?;
        if factors.iter().any(|fm| fm.factor == f) {
            continue;
        }
        let k = multiplicity(&f, &rest)?;
        if k == 0 {
            continue;
        }
        rest = divide_exact(&rest, &f.pow(k));
        let per_entry = ps
            .iter()
            .map(|p| multiplicity(&f, p))
            .collect::<Result<Vec<_>, _>>()?;
        factors.push(FactorMultiplicity { factor: f, multiplicity: k, per_entry });
    }
    let (unit, residue) = match rest.constant_value() {
        Some(c) => (c, Polynomial::one(dim)),
        None => (rest.normalization_factor()?, rest.normalize()?),
    };
    let (residue_squarefree, residue_irreducibility) = if residue.is_constant() {
        (None, None)
    } else {
        (Some(squarefree_part(&residue)?), Some(check_irreducible(&residue)))
    };
    Ok(ProductFactorization { factors, unit, residue, residue_squarefree, residue_irreducibility })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;
    use crate::rational::int;

    fn x(d: usize, a: usize) -> Polynomial {
        Polynomial::var(d, a)
    }
    fn c(d: usize, v: i64) -> Polynomial {
        Polynomial::constant(d, int(v))
    }
    fn disk(d: usize) -> Polynomial {
        (0..d).fold(c(d, 1), |acc, a| &acc - &x(d, a).pow(2))
    }

    #[test]
    fn divide_rising_sun_factor() {
        let shift = &x(2, 1) + &c(2, 2);
        let p = &disk(2) * &shift;
        assert_eq!(try_divide(&p, &shift).unwrap(), Some(disk(2)));
        assert_eq!(try_divide(&p, &Polynomial::one(2)).unwrap(), Some(p.clone()));
        assert_eq!(try_divide(&(&x(2, 0) + &c(2, 1)), &x(2, 1)).unwrap(), None);
        assert_eq!(try_divide(&p, &Polynomial::zero(2)), Err(FactorError::ZeroDivisor));
    }

    #[test]
    fn multiplicities() {
        let d = 3;
        let saturn = &disk(d) * &x(d, 2).pow(2);
        assert_eq!(multiplicity(&x(d, 2), &saturn).unwrap(), 2);
        let (x1, x2) = (x(2, 0), x(2, 1));
        assert_eq!(multiplicity(&(&x1 - &x2), &(&x1 + &x2)).unwrap(), 0);
        let p = &x1.pow(3) * &(&x1 + &c(2, 1));
        assert_eq!(multiplicity(&x1, &p).unwrap(), 3);
        assert_eq!(multiplicity(&c(2, 3), &p), Err(FactorError::ConstantFactor));
        assert_eq!(multiplicity(&x1, &Polynomial::zero(2)), Err(FactorError::ZeroPolynomial));
        for k in 0..12 {
            assert_eq!(multiplicity(&x2, &(&x2.pow(k) * &(&x1 + &x2))).unwrap(), k);
        }
    }

    #[test]
    fn gcds() {
        let (x1, x2) = (x(2, 0), x(2, 1));
        assert_eq!(gcd(&(&x1.pow(2) - &x2.pow(2)), &(&x1 - &x2)).unwrap(), &x1 - &x2);
        let p = &(&x1.pow(2) * &x2) - &c(2, 3);
        assert_eq!(gcd(&p, &p).unwrap(), p.normalize().unwrap());
        let lhs = &(&c(2, 1) - &x1.pow(2)) * &x2.pow(2);
        assert_eq!(gcd(&lhs, &x2.pow(3)).unwrap(), x2.pow(2));
        assert_eq!(gcd(&p, &Polynomial::zero(2)).unwrap(), p.normalize().unwrap());
        assert_eq!(gcd(&Polynomial::zero(2), &Polynomial::zero(2)), Err(FactorError::BothZero));
    }

    #[test]
    fn squarefree_parts() {
        let (x1, x2) = (x(2, 0), x(2, 1));
        assert_eq!(squarefree_part(&x2.pow(2)).unwrap(), x2);
        let saturn = &disk(2) * &x2.pow(2);
        let sf = squarefree_part(&saturn).unwrap();
        assert_eq!(sf, (&disk(2) * &x2).normalize().unwrap());
        assert_eq!(multiplicity(&x2, &sf).unwrap(), 1);
        assert_eq!(multiplicity(&disk(2), &sf).unwrap(), 1);
        let sqf = &(&x1 + &x2) * &disk(2);
        assert_eq!(squarefree_part(&sqf).unwrap(), sqf.normalize().unwrap());
        assert_eq!(squarefree_part(&c(2, 4)), Err(FactorError::ConstantInput));
    }

    #[test]
    fn product_bookkeeping() {
        let d = 2;
        let xd = x(d, 1);
        let saturn = &disk(d) * &xd.pow(2);
        let pf = product_factorization(core::slice::from_ref(&saturn), core::slice::from_ref(&xd)).unwrap();
        assert_eq!(pf.factors.len(), 1);
        assert_eq!(pf.factors[0].multiplicity, 2);
        assert_eq!(pf.reconstruct(), saturn);

        let shift = &xd + &c(d, 2);
        let ps = [shift.clone(), &disk(d) * &shift];
        let pf = product_factorization(&ps, core::slice::from_ref(&shift)).unwrap();
        assert_eq!(pf.factors[0].multiplicity, 2);
        assert_eq!(pf.factors[0].per_entry, alloc::vec![1, 1]);
        assert_eq!(pf.reconstruct(), &ps[0] * &ps[1]);

        let pf = product_factorization(&[Polynomial::one(d)], &[x(d, 0)]).unwrap();
        assert!(pf.factors.is_empty());
        assert!(pf.unit.is_one());
        assert_eq!(
            product_factorization(&[Polynomial::zero(d)], &[]),
            Err(FactorError::ZeroEntry { index: 0 })
        );
    }
}
