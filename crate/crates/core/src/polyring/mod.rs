//! Homogeneous integer polynomials: arithmetic, exact division, gcd and text I/O.

mod gcd;
mod linear;
mod monomial;
mod parse;
mod poly;

pub use gcd::{gcd, gcd_many, gcd_prs};
pub use linear::LinearForm;
pub use monomial::{Monomial, MAX_VARS};
pub use parse::{parse_fraction, parse_poly, Fraction};
pub use poly::HomogPoly;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(u32, u32),
    #[error("variable count mismatch: {0} vs {1}")]
    VarCountMismatch(usize, usize),
    #[error("polynomial is not divisible")]
    NotDivisible,
    #[error("division by zero")]
    DivisionByZero,
    #[error("the zero vector is not a linear form")]
    ZeroForm,
    #[error("polynomial is not linear")]
    NotLinear,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> HomogPoly {
        parse_poly(s, 4).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let a = p("x1*x2 + x3*x4");
        let b = p("x1*x2 - x3*x4");
        assert_eq!(&a * &b, p("x1^2*x2^2 - x3^2*x4^2"));
    }

    #[test]
    fn degree_mismatch_is_an_error() {
        assert_eq!(p("x1").try_add(&p("x1^2")), Err(PolyError::DegreeMismatch(1, 2)));
        assert_eq!(p("x1").try_sub(&HomogPoly::zero(4)).unwrap(), p("x1"));
    }

    #[test]
    fn exact_division() {
        assert_eq!(p("x1^2+x2^2").divide_exact(&p("x1+x2")), Err(PolyError::NotDivisible));
        let q = p("x1^3 - x2^3").divide_exact(&p("x1 - x2")).unwrap();
        assert_eq!(q, p("x1^2 + x1*x2 + x2^2"));
    }

    #[test]
    fn substitution() {
        let f = p("x1*x2 + x3*x4");
        let c3 = ["x2*x3*x4", "x1*x3*x4", "x1*x2*x4", "x1*x2*x3"].map(p);
        assert_eq!(f.substitute(&c3), &p("x1*x2*x3*x4") * &f);
    }

    #[test]
    fn square_roots() {
        let s = p("x1*x2 - 3*x3^2 + x1*x4");
        assert_eq!((&s * &s).sqrt_exact(), Some(s.normalize()));
        assert_eq!(p("x1^2 + x2^2").sqrt_exact(), None);
    }

    #[test]
    fn evaluation() {
        let f = p("x1^2 - 2*x2*x3 + x4^2");
        let v = f.eval(&[1, 2, 3, 4].map(BigInt::from));
        assert_eq!(v, BigInt::from(1 - 12 + 16));
    }

    use num_bigint::BigInt;
}
