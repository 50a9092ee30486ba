use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::monomial::Monomial;
use super::{HomogPoly, PolyError};

/// Nonzero linear form with coprime integer coefficients and positive first
/// nonzero coefficient.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearForm(Vec<BigInt>);

impl LinearForm {
    pub fn new(coeffs: Vec<BigInt>) -> Result<Self, PolyError> {
        let g = coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if g.is_zero() {
            return Err(PolyError::ZeroForm);
        }
        let first_neg = coeffs.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative());
        let g = if first_neg { -g } else { g };
        Ok(Self(coeffs.into_iter().map(|c| c / &g).collect()))
    }

    pub fn from_i64(coeffs: &[i64]) -> Result<Self, PolyError> {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Clears denominators of rational coefficients.
    pub fn from_rationals(coeffs: &[BigRational]) -> Result<Self, PolyError> {
        let den = coeffs.iter().fold(BigInt::from(1), |acc, q| acc.lcm(q.denom()));
        Self::new(coeffs.iter().map(|q| q.numer() * (&den / q.denom())).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn to_poly(&self) -> HomogPoly {
        let n = self.0.len();
        let terms = self
            .0
            .iter()
            .enumerate()
            .map(|(i, c)| (Monomial::var(i), c.clone()));
        HomogPoly::from_terms(n, terms).expect("linear terms are homogeneous")
    }

    pub fn from_poly(p: &HomogPoly) -> Result<Self, PolyError> {
        if p.degree() != Some(1) {
            return Err(PolyError::NotLinear);
        }
        let n = p.nvars();
        Self::new((0..n).map(|i| p.coeff(&Monomial::var(i))).collect())
    }

    pub fn eval(&self, point: &[BigInt]) -> BigInt {
        self.0.iter().zip(point).map(|(a, x)| a * x).sum()
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}

impl fmt::Debug for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearForm({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalisation() {
        let l = LinearForm::from_i64(&[0, -4, 6, 2]).unwrap();
        assert_eq!(l.coeffs(), &[0, 2, -3, -1].map(BigInt::from));
        assert!(LinearForm::from_i64(&[0, 0, 0, 0]).is_err());
        assert_eq!(LinearForm::from_poly(&l.to_poly()).unwrap(), l);
    }
}
