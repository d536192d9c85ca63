#![allow(dead_code)]

use num_bigint::BigInt;
use polyrep_core::rational::{int, ratio};
use polyrep_core::{Polynomial, Rational};
use proptest::prelude::*;

pub fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| ratio(n, d))
}

pub fn nonzero_rational() -> impl Strategy<Value = Rational> {
    (1i64..=6, 1i64..=4, any::<bool>()).prop_map(|(n, d, neg)| ratio(if neg { -n } else { n }, d))
}

pub fn point(dim: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec((-20i64..=20, 1i64..=7).prop_map(|(n, d)| ratio(n, d)), dim)
}

fn clamp_degree(mut exps: Vec<u32>, degree: u32) -> Vec<u32> {
    let mut total: u32 = exps.iter().sum();
    for e in exps.iter_mut().rev() {
        if total <= degree {
            break;
        }
        let cut = (*e).min(total - degree);
        *e -= cut;
        total -= cut;
    }
    exps
}

/// Polynomials with up to `terms` terms of total degree at most `degree`.
pub fn poly(dim: usize, degree: u32, terms: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(
        (prop::collection::vec(0..=degree, dim), (-5i64..=5), 1i64..=3),
        0..=terms,
    )
    .prop_map(move |ts| {
        Polynomial::from_terms(dim, ts.into_iter().map(|(e, n, d)| (clamp_degree(e, degree), ratio(n, d))))
            .expect("consistent dimension")
    })
}

pub fn nonconstant_poly(dim: usize, degree: u32, terms: usize) -> impl Strategy<Value = Polynomial> {
    poly(dim, degree, terms).prop_filter("non-constant", |p| !p.is_constant())
}

pub fn nonzero_poly(dim: usize, degree: u32, terms: usize) -> impl Strategy<Value = Polynomial> {
    poly(dim, degree, terms).prop_filter("non-zero", |p| !p.is_zero())
}

pub fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

pub fn zero() -> Rational {
    int(0)
}
