use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

/// Exponent vector of a monomial `x1^e1 ⋯ xd^ed`.
///
/// Ordered graded-lexicographically: total degree first, then exponents
/// compared from `x1` onwards, so `x1` is the most significant variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(dim: usize) -> Monomial {
        Monomial(vec![0; dim])
    }

    pub fn var(dim: usize, axis: usize) -> Monomial {
        let mut e = vec![0; dim];
        e[axis] = 1;
        Monomial(e)
    }

    pub fn from_exponents(exponents: Vec<u32>) -> Monomial {
        Monomial(exponents)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Componentwise minimum (the monomial gcd).
    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub(crate) fn exponents_mut(&mut self) -> &mut [u32] {
        &mut self.0
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub(crate) fn write_var(f: &mut impl fmt::Write, axis: usize) -> fmt::Result {
    let k = axis + 1;
    if k < 10 {
        write!(f, "x{}", k)
    } else {
        write!(f, "x{{{}}}", k)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (axis, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            write_var(f, axis)?;
            if e > 1 {
                write!(f, "^{}", e)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_lex_order() {
        let m = |e: &[u32]| Monomial::from_exponents(e.to_vec());
        assert!(m(&[0, 0]) < m(&[0, 1]));
        assert!(m(&[0, 1]) < m(&[1, 0]));
        assert!(m(&[1, 0]) < m(&[0, 2]));
        assert!(m(&[0, 2]) < m(&[1, 1]));
        assert!(m(&[1, 1]) < m(&[2, 0]));
    }

    #[test]
    fn display() {
        let m = Monomial::from_exponents(alloc::vec![2, 0, 1]);
        assert_eq!(alloc::format!("{}", m), "x1^2*x3");
        let mut e = alloc::vec![0; 12];
        e[11] = 3;
        assert_eq!(alloc::format!("{}", Monomial::from_exponents(e)), "x{12}^3");
    }
}
