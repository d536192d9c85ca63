//! Exact sign-condition representations of semi-algebraic sets.
//!
//! A semi-algebraic set is written as a boolean formula over atoms
//! `sign p_i(x) ∈ E_i` with polynomials `p_i` carrying exact rational
//! coefficients. On top of that model the crate provides the factor
//! bookkeeping (exact division, multiplicities, gcd, squarefree parts) and a
//! set of lints that check necessary conditions a representation has to
//! satisfy when the set is locally described by an irreducible polynomial
//! `f` near a boundary point.
//!
//! Everything here is `no_std` + `alloc`: the IO, the CLI and the file
//! formats live in the companion `polyrep` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod corpus;
pub mod factor;
pub mod formula;
pub mod geom;
pub mod irreducible;
pub mod linalg;
pub mod lint;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod polytope;
pub mod rational;
pub mod sign;

pub use factor::{
    gcd, multiplicity, product_factorization, squarefree_part, try_divide, FactorError,
    FactorMultiplicity, Parity, ProductFactorization,
};
pub use formula::{Formula, Kind, Representation};
pub use geom::{Ball, GridSpec, LocalShape, SampleReport};
pub use lint::{Certificate, LintVerdict, Rule, Status, Witness};
pub use monomial::Monomial;
pub use parse::{parse_formula, ParseError};
pub use poly::{PolyError, Polynomial};
pub use polytope::PolytopeH;
pub use rational::Rational;
pub use sign::{Sign, SignSet};
