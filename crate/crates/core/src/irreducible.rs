//! Bounded irreducibility certificate over the rationals.
//!
//! Degree-one polynomials are always irreducible. Polynomials in at most two
//! variables of total degree at most four are searched exhaustively for a
//! rational factor: after a shear that makes the polynomial monic in the
//! first variable, any factor of total degree `e` specializes at `y = c` to a
//! monic degree-`e` divisor of a univariate polynomial, and `e + 1` such
//! specializations determine the factor by interpolation. Every candidate is
//! confirmed by exact division. Anything else is reported as unchecked.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::factor::{gcd, try_divide};
use crate::poly::Polynomial;
use crate::rational::{int, Rational};

/// Largest integer whose divisors are enumerated by trial division.
const FACTOR_LIMIT: u64 = 1_000_000_000_000;
/// Cap on interpolation candidates per factor degree.
const COMBINATION_LIMIT: usize = 20_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Irreducibility {
    /// No non-trivial rational factorization exists.
    Irreducible,
    /// A non-trivial factor was found.
    Reducible { factor: Polynomial },
    /// Constants are neither.
    Constant,
    /// Outside the checked family, or a search bound was hit; irreducibility
    /// remains a caller assertion.
    Unchecked,
}

impl Irreducibility {
    pub fn is_certified(&self) -> bool {
        matches!(self, Irreducibility::Irreducible)
    }
}

impl fmt::Display for Irreducibility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Irreducibility::Irreducible => f.write_str("irreducible over Q (certified)"),
            Irreducibility::Reducible { factor } => write!(f, "reducible, factor {}", factor),
            Irreducibility::Constant => f.write_str("constant"),
            Irreducibility::Unchecked => f.write_str("unchecked (caller assertion)"),
        }
    }
}

pub fn check_irreducible(p: &Polynomial) -> Irreducibility {
    let Some(n) = p.total_degree() else {
        return Irreducibility::Constant;
    };
    if n == 0 {
        return Irreducibility::Constant;
    }
    if n == 1 {
        return Irreducibility::Irreducible;
    }
    let vars = p.variables();
    if vars.len() > 2 || n > 4 {
        return Irreducibility::Unchecked;
    }
    // Repeated factors show up in the gcd with any non-zero partial.
    for d in p.gradient() {
        if d.is_zero() {
            continue;
        }
        let g = gcd(p, &d).expect("p is nonzero");
        if !g.is_constant() {
            return Irreducibility::Reducible { factor: g };
        }
    }
    let (u, v) = (vars[0], vars.get(1).copied());
    let plane = to_plane(p, u, v);
    match find_factor(&plane, n) {
        Search::Found(g) => Irreducibility::Reducible { factor: from_plane(&g, p.dim(), u, v) },
        Search::None => Irreducibility::Irreducible,
        Search::GaveUp => Irreducibility::Unchecked,
    }
}

enum Search {
    Found(Polynomial),
    None,
    GaveUp,
}

fn to_plane(p: &Polynomial, u: usize, v: Option<usize>) -> Polynomial {
    let terms = p.terms().map(|(m, c)| {
        let e = m.exponents();
        (vec![e[u], v.map_or(0, |v| e[v])], c.clone())
    });
    Polynomial::from_terms(2, terms).expect("dimension two")
}

fn from_plane(g: &Polynomial, dim: usize, u: usize, v: Option<usize>) -> Polynomial {
    let terms = g.terms().map(|(m, c)| {
        let mut e = vec![0; dim];
        e[u] += m.exponents()[0];
        match v {
            Some(v) => e[v] += m.exponents()[1],
            None => debug_assert_eq!(m.exponents()[1], 0),
        }
        (e, c.clone())
    });
    Polynomial::from_terms(dim, terms).expect("matching dimension")
}

fn find_factor(p: &Polynomial, n: u32) -> Search {
    let x = Polynomial::var(2, 0);
    let y = Polynomial::var(2, 1);
    // Shear y -> y + λx until the x^n coefficient is a non-zero constant.
    let mut top = vec![0u32; 2];
    top[0] = n;
    let top = crate::monomial::Monomial::from_exponents(top);
    let mut sheared = None;
    for lambda in 0..=n as i64 {
        let image = &y + &x.scale(&int(lambda));
        let s = p.substitute(1, &image).expect("dimension two");
        let lc = s.coefficient(&top);
        if !lc.is_zero() {
            sheared = Some((lambda, s.scale(&lc.recip())));
            break;
        }
    }
    let (lambda, monic) = sheared.expect("a binary form has at most n roots");
    let points: Vec<Rational> = [0i64, 1, -1, 2, -2].iter().map(|&c| int(c)).collect();
    let mut gave_up = false;
    for e in 1..=(n / 2) as usize {
        let sample = &points[..=e];
        let mut per_point = Vec::with_capacity(sample.len());
        for c in sample {
            let uni = specialize(&monic, c, n as usize);
            match monic_divisors(&uni, e) {
                Some(ds) => per_point.push(ds),
                None => {
                    gave_up = true;
                    per_point.clear();
                    break;
                }
            }
        }
        if per_point.is_empty() || per_point.iter().any(Vec::is_empty) {
            continue;
        }
        let total: usize = per_point.iter().map(Vec::len).product();
        if total > COMBINATION_LIMIT {
            gave_up = true;
            continue;
        }
        for combo in 0..total {
            let mut idx = combo;
            let chosen: Vec<&Vec<Rational>> = per_point
                .iter()
                .map(|ds| {
                    let d = &ds[idx % ds.len()];
                    idx /= ds.len();
                    d
                })
                .collect();
            let Some(g) = interpolate_factor(sample, &chosen, e) else {
                continue;
            };
            if let Ok(Some(_)) = try_divide(&monic, &g) {
                let back = &y - &x.scale(&int(lambda));
                let original = g.substitute(1, &back).expect("dimension two");
                return Search::Found(original.normalize().expect("non-constant"));
            }
        }
    }
    if gave_up {
        Search::GaveUp
    } else {
        Search::None
    }
}

/// Coefficients (index = power of x) of `p(x, c)`.
fn specialize(p: &Polynomial, c: &Rational, n: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); n + 1];
    for (m, coef) in p.terms() {
        let e = m.exponents();
        out[e[0] as usize] += coef * num_traits::pow(c.clone(), e[1] as usize);
    }
    out
}

/// Builds `x^e + Σ_j a_j(y) x^j` where `a_j(c_i) = chosen[i][j]`, rejecting
/// interpolants whose degree in `y` exceeds `e - j`.
fn interpolate_factor(nodes: &[Rational], chosen: &[&Vec<Rational>], e: usize) -> Option<Polynomial> {
    let mut terms = vec![(vec![e as u32, 0], Rational::one())];
    for j in 0..e {
        let values: Vec<Rational> = chosen.iter().map(|d| d[j].clone()).collect();
        let coeffs = newton_interpolate(nodes, &values);
        for (k, a) in coeffs.into_iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            if k > e - j {
                return None;
            }
            terms.push((vec![j as u32, k as u32], a));
        }
    }
    Polynomial::from_terms(2, terms).ok()
}

/// Monomial-basis coefficients of the interpolating polynomial.
fn newton_interpolate(nodes: &[Rational], values: &[Rational]) -> Vec<Rational> {
    let n = nodes.len();
    let mut dd = values.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&nodes[i] - &nodes[i - level]);
        }
    }
    let mut coeffs = vec![Rational::zero(); n];
    for i in (0..n).rev() {
        // coeffs = coeffs * (t - nodes[i]) + dd[i]
        let mut next = vec![Rational::zero(); n];
        for k in 0..n {
            if coeffs[k].is_zero() {
                continue;
            }
            if k + 1 < n {
                next[k + 1] += &coeffs[k];
            }
            next[k] -= &coeffs[k] * &nodes[i];
        }
        next[0] += &dd[i];
        coeffs = next;
    }
    coeffs
}

/// All monic degree-`e` divisors (`e` in 1..=2) of a monic univariate
/// polynomial of degree at most four, as coefficient vectors of length `e`
/// (the leading 1 omitted). `None` when a search bound is hit.
fn monic_divisors(u: &[Rational], e: usize) -> Option<Vec<Vec<Rational>>> {
    let n = u.len() - 1;
    // Integer monic transform: V(t) = D^n u(t / D).
    let mut d = BigInt::one();
    for c in u {
        d = d.lcm(c.denom());
    }
    let dq = Rational::from_integer(d.clone());
    let v: Vec<BigInt> = (0..=n)
        .map(|k| {
            let scaled = &u[k] * num_traits::pow(dq.clone(), n - k);
            debug_assert!(scaled.is_integer());
            scaled.to_integer()
        })
        .collect();
    let (roots, rest) = integer_roots(&v)?;
    let back_linear = |r: &BigInt| Rational::new(-r.clone(), d.clone());
    let mut out: Vec<Vec<Rational>> = Vec::new();
    match e {
        1 => {
            let mut seen: Vec<&BigInt> = Vec::new();
            for r in &roots {
                if !seen.contains(&r) {
                    seen.push(r);
                    out.push(vec![back_linear(r)]);
                }
            }
        }
        2 => {
            let mut quads: Vec<(BigInt, BigInt)> = Vec::new();
            for i in 0..roots.len() {
                for j in (i + 1)..roots.len() {
                    // (t - a)(t - b) = t^2 - (a + b) t + ab
                    quads.push((-(&roots[i] + &roots[j]), &roots[i] * &roots[j]));
                }
            }
            match rest.len() - 1 {
                2 => quads.push((rest[1].clone(), rest[0].clone())),
                4 => quads.extend(quartic_quadratic_factors(&rest)?),
                _ => {}
            }
            quads.sort();
            quads.dedup();
            let d2 = &d * &d;
            for (s, t) in quads {
                out.push(vec![Rational::new(t, d2.clone()), Rational::new(s, d.clone())]);
            }
        }
        _ => return None,
    }
    Some(out)
}

/// Integer roots with multiplicity of a monic integer polynomial, and the
/// deflated cofactor (ascending coefficients).
fn integer_roots(v: &[BigInt]) -> Option<(Vec<BigInt>, Vec<BigInt>)> {
    let mut poly = v.to_vec();
    let mut roots = Vec::new();
    while poly.len() > 1 && poly[0].is_zero() {
        poly.remove(0);
        roots.push(BigInt::zero());
    }
    if poly.len() == 1 {
        return Some((roots, poly));
    }
    let candidates = divisors(&poly[0])?;
    for r in candidates {
        for cand in [r.clone(), -r] {
            while poly.len() > 1 {
                match synthetic_division(&poly, &cand) {
                    Some(q) => {
                        poly = q;
                        roots.push(cand.clone());
                    }
                    None => break,
                }
            }
        }
    }
    Some((roots, poly))
}

/// Quotient by `(t - r)` when the remainder vanishes.
fn synthetic_division(poly: &[BigInt], r: &BigInt) -> Option<Vec<BigInt>> {
    let n = poly.len() - 1;
    let mut q = vec![BigInt::zero(); n];
    let mut carry = BigInt::zero();
    for k in (0..=n).rev() {
        let val = &poly[k] + &carry * r;
        if k == 0 {
            return val.is_zero().then_some(q);
        }
        q[k - 1] = val.clone();
        carry = val;
    }
    unreachable!()
}

/// Monic quadratic factors `t^2 + s t + t0` (returned as `(s, t0)`) of a
/// monic integer quartic with no integer roots.
fn quartic_quadratic_factors(w: &[BigInt]) -> Option<Vec<(BigInt, BigInt)>> {
    let (d0, c, b, a) = (&w[0], &w[1], &w[2], &w[3]);
    let mut out = Vec::new();
    for t in divisors(d0)? {
        for t in [t.clone(), -t] {
            let t2 = d0 / &t;
            let mut candidates = Vec::new();
            if t2 != t {
                // s (t2 - t) = c - a t
                let num = c - a * &t;
                let den = &t2 - &t;
                if (&num % &den).is_zero() {
                    candidates.push(num / den);
                }
            } else if *c == a * &t {
                // s + s' = a, s s' = b - 2t
                let disc = a * a - BigInt::from(4) * (b - BigInt::from(2) * &t);
                if !disc.is_negative() {
                    let root = disc.sqrt();
                    if &root * &root == disc {
                        for sign in [1i32, -1] {
                            let num = a + BigInt::from(sign) * &root;
                            if num.is_even() {
                                candidates.push(num / 2);
                            }
                        }
                    }
                }
            }
            for s in candidates {
                let s2 = a - &s;
                let t_ok = &t + &t2 + &s * &s2 == *b && &s * &t2 + &s2 * &t == *c;
                if t_ok {
                    out.push((s, t.clone()));
                }
            }
        }
    }
    Some(out)
}

/// Positive divisors of `|m|` (for `m != 0`), by trial division.
fn divisors(m: &BigInt) -> Option<Vec<BigInt>> {
    let m = m.abs().to_u64()?;
    if m == 0 || m > FACTOR_LIMIT {
        return None;
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut k = 1u64;
    while k * k <= m {
        if m % k == 0 {
            small.push(BigInt::from(k));
            if k * k != m {
                large.push(BigInt::from(m / k));
            }
        }
        k += 1;
    }
    large.reverse();
    small.extend(large);
    Some(small)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factor::multiplicity;

    fn x(d: usize, a: usize) -> Polynomial {
        Polynomial::var(d, a)
    }
    fn c(d: usize, v: i64) -> Polynomial {
        Polynomial::constant(d, int(v))
    }

    fn assert_reducible(p: &Polynomial) {
        match check_irreducible(p) {
            Irreducibility::Reducible { factor } => {
                assert!(!factor.is_constant());
                assert!(factor.total_degree() < p.total_degree());
                assert!(try_divide(p, &factor).unwrap().is_some(), "{} does not divide {}", factor, p);
            }
            other => panic!("{} reported {:?}", p, other),
        }
    }

    #[test]
    fn corpus_factors_are_irreducible() {
        let (x1, x2) = (x(2, 0), x(2, 1));
        let disk = &(&c(2, 1) - &x1.pow(2)) - &x2.pow(2);
        let cubic = &(&x1.pow(2) + &x2.pow(2)) - &x1.pow(3);
        let shifted = &(&x1 - &c(2, 1)).pow(2) + &x2.pow(2);
        for p in [disk, cubic, &shifted - &c(2, 1), x1.clone(), &x2 + &c(2, 2)] {
            assert_eq!(check_irreducible(&p), Irreducibility::Irreducible, "{}", p);
        }
        // three variables are out of the checked family
        let (y1, y2, y3) = (x(3, 0), x(3, 1), x(3, 2));
        let umbrella = &(&y3.pow(2) * &y1) - &y2.pow(2);
        assert_eq!(check_irreducible(&umbrella), Irreducibility::Unchecked);
        assert_eq!(check_irreducible(&c(2, 3)), Irreducibility::Constant);
    }

    #[test]
    fn finds_factors() {
        let (x1, x2) = (x(2, 0), x(2, 1));
        let disk = &(&c(2, 1) - &x1.pow(2)) - &x2.pow(2);
        assert_reducible(&(&x1.pow(2) - &x2.pow(2)));
        assert_reducible(&(&disk * &x2));
        assert_reducible(&(&disk * &x2.pow(2)));
        // product of two irreducible conics: no linear factor at all
        let other = &(&x1.pow(2) + &x2.pow(2).scale(&int(2))) - &c(2, 3);
        let prod = &disk * &other;
        assert_reducible(&prod);
        match check_irreducible(&prod) {
            Irreducibility::Reducible { factor } => {
                assert_eq!(factor.total_degree(), Some(2));
                assert_eq!(multiplicity(&factor, &prod).unwrap(), 1);
            }
            _ => unreachable!(),
        }
        // x2^2 is the only term in x2: needs the shear
        let q = &(&x1 * &x2) - &c(2, 1);
        assert_eq!(check_irreducible(&q), Irreducibility::Irreducible);
        assert_reducible(&(&q * &(&x1 + &x2.scale(&int(3)))));
        // rational, non-integer roots
        let r = &(&x1.scale(&int(2)) - &c(2, 1)) * &(&x1.scale(&int(3)) + &x2);
        assert_reducible(&r);
    }

    #[test]
    fn univariate_quartics() {
        let t = x(3, 2);
        // (t^2 + 1)(t^2 + 2) in an ambient 3-space
        let p = &(&t.pow(2) + &c(3, 1)) * &(&t.pow(2) + &c(3, 2));
        assert_reducible(&p);
        let q = &t.pow(4) + &c(3, 1);
        assert_eq!(check_irreducible(&q), Irreducibility::Irreducible);
        let r = &t.pow(4) - &c(3, 4);
        assert_reducible(&r);
    }

    #[test]
    fn interpolation_recovers_monomial_coefficients() {
        let nodes = [int(0), int(1), int(-1)];
        // 3 - 2t + t^2
        let values: Vec<Rational> = nodes.iter().map(|t| int(3) - int(2) * t + t * t).collect();
        assert_eq!(newton_interpolate(&nodes, &values), vec![int(3), int(-2), int(1)]);
    }
}
