//! Linear recurrences, generating functions and entropy estimates from integer sequences.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::algebraic::{self, Entropy, QPoly, ZPoly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeqfitError {
    #[error("sequence has {0} terms, at least 4 are needed")]
    TooShort(usize),
    #[error("no linear recurrence of order at most {0} fits the sequence")]
    NoRecurrenceFound(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Recurrence {
    pub order: usize,
    /// `c_1..c_order` with `d_n = Σ c_i d_{n−i}`.
    pub coefficients: Vec<BigRational>,
    /// First index at which the recurrence is required to hold.
    pub valid_from: usize,
    /// At least two terms beyond the `2L` needed to determine the recurrence.
    pub confirmed: bool,
}

impl Recurrence {
    /// `1 − c_1 s − … − c_r s^r`, constant term first.
    pub fn connection_polynomial(&self) -> QPoly {
        let mut p = vec![BigRational::one()];
        p.extend(self.coefficients.iter().map(|c| -c.clone()));
        p
    }

    /// `z^r − c_1 z^{r−1} − … − c_r` as a primitive integer polynomial, constant term first.
    pub fn characteristic_polynomial(&self) -> ZPoly {
        let mut p = self.connection_polynomial();
        p.reverse();
        algebraic::to_primitive_z(&p)
    }

    /// Whether the recurrence reproduces `seq` from `valid_from` on.
    pub fn fits(&self, seq: &[BigInt]) -> bool {
        (self.valid_from.max(self.order)..seq.len()).all(|n| {
            let pred: BigRational = self
                .coefficients
                .iter()
                .enumerate()
                .map(|(i, c)| c * BigRational::from_integer(seq[n - 1 - i].clone()))
                .sum();
            pred == BigRational::from_integer(seq[n].clone())
        })
    }
}

impl Serialize for Recurrence {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let c: Vec<String> = self.coefficients.iter().map(ToString::to_string).collect();
        let mut st = s.serialize_struct("Recurrence", 4)?;
        st.serialize_field("order", &self.order)?;
        st.serialize_field("coefficients", &c)?;
        st.serialize_field("valid_from", &self.valid_from)?;
        st.serialize_field("confirmed", &self.confirmed)?;
        st.end()
    }
}

fn to_rationals(seq: &[BigInt]) -> Vec<BigRational> {
    seq.iter().map(|x| BigRational::from_integer(x.clone())).collect()
}

/// Berlekamp–Massey over the rationals; returns the connection polynomial and the linear complexity.
fn berlekamp_massey(s: &[BigRational]) -> (QPoly, usize) {
    let mut c: QPoly = vec![BigRational::one()];
    let mut b: QPoly = vec![BigRational::one()];
    let mut l = 0usize;
    let mut m = 1usize;
    let mut bd = BigRational::one();
    for n in 0..s.len() {
        let d: BigRational = (0..=l).filter(|&i| i < c.len()).map(|i| &c[i] * &s[n - i]).sum();
        if d.is_zero() {
            m += 1;
            continue;
        }
        let coef = &d / &bd;
        let mut next = c.clone();
        if next.len() < b.len() + m {
            next.resize(b.len() + m, BigRational::zero());
        }
        for (i, bi) in b.iter().enumerate() {
            next[i + m] -= &coef * bi;
        }
        if 2 * l <= n {
            b = c;
            l = n + 1 - l;
            bd = d;
            m = 1;
        } else {
            m += 1;
        }
        c = next;
    }
    while c.len() > 1 && c.last().is_some_and(Zero::is_zero) {
        c.pop();
    }
    (c, l)
}

/// Minimal linear recurrence with constant rational coefficients.
pub fn min_recurrence(seq: &[BigInt]) -> Result<Recurrence, SeqfitError> {
    if seq.len() < 4 {
        return Err(SeqfitError::TooShort(seq.len()));
    }
    let (c, l) = berlekamp_massey(&to_rationals(seq));
    if 2 * l > seq.len() {
        return Err(SeqfitError::NoRecurrenceFound(seq.len() / 2));
    }
    let coefficients: Vec<BigRational> = c[1..].iter().map(|x| -x.clone()).collect();
    Ok(Recurrence { order: coefficients.len(), coefficients, valid_from: l, confirmed: seq.len() >= 2 * l + 2 })
}

/// `numerator / denominator` with coprime integer polynomials, denominator constant term positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratingFunction {
    pub numerator: ZPoly,
    pub denominator: ZPoly,
}

impl GeneratingFunction {
    /// First `n` power-series coefficients.
    pub fn expand(&self, n: usize) -> Vec<BigRational> {
        let num = algebraic::to_q(&self.numerator);
        let den = algebraic::to_q(&self.denominator);
        let mut out: Vec<BigRational> = Vec::with_capacity(n);
        for k in 0..n {
            let mut v = num.get(k).cloned().unwrap_or_else(BigRational::zero);
            for j in 1..=k.min(den.len().saturating_sub(1)) {
                v -= &den[j] * &out[k - j];
            }
            out.push(v / &den[0]);
        }
        out
    }

    pub fn format(&self, var: &str) -> String {
        format!("({}) / ({})", algebraic::format_zpoly(&self.numerator, var), algebraic::format_zpoly(&self.denominator, var))
    }
}

impl Serialize for GeneratingFunction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let f = |p: &ZPoly| p.iter().map(ToString::to_string).collect::<Vec<_>>();
        let mut st = s.serialize_struct("GeneratingFunction", 3)?;
        st.serialize_field("numerator", &f(&self.numerator))?;
        st.serialize_field("denominator", &f(&self.denominator))?;
        st.serialize_field("text", &self.format("s"))?;
        st.end()
    }
}

pub fn generating_function(seq: &[BigInt]) -> Result<GeneratingFunction, SeqfitError> {
    let rec = min_recurrence(seq)?;
    let den = rec.connection_polynomial();
    let s = to_rationals(seq);
    let len = rec.valid_from.max(den.len() - 1).max(1);
    let mut num: QPoly = (0..len)
        .map(|k| (0..=k).filter(|&j| j < den.len()).map(|j| &den[j] * &s[k - j]).sum())
        .collect();
    while num.last().is_some_and(Zero::is_zero) {
        num.pop();
    }
    let g = algebraic::gcd_q(&num, &den);
    let (num, _) = algebraic::divmod_q(&num, &g);
    let (den, _) = algebraic::divmod_q(&den, &g);
    let scale = den[0].clone();
    let num: QPoly = num.iter().map(|c| c / &scale).collect();
    let den: QPoly = den.iter().map(|c| c / &scale).collect();
    let lcm = num.iter().chain(den.iter()).fold(BigInt::one(), |acc, c| num_integer::lcm(acc, c.denom().clone()));
    let lift = |p: &QPoly| -> ZPoly { p.iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect() };
    Ok(GeneratingFunction { numerator: lift(&num), denominator: lift(&den) })
}

/// Entropy from the dominant root of the recurrence's characteristic polynomial.
pub fn entropy_estimate(seq: &[BigInt]) -> Result<Entropy, SeqfitError> {
    let rec = min_recurrence(seq)?;
    Ok(algebraic::entropy_from_charpoly(&rec.characteristic_polynomial()))
}

pub fn to_bigints(seq: &[u64]) -> Vec<BigInt> {
    seq.iter().map(|&x| BigInt::from(x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebraic::zpoly;

    fn seq(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn quadratic_growth() {
        let s = seq(&[1, 3, 9, 19, 33, 51, 73, 99, 129]);
        let r = min_recurrence(&s).unwrap();
        assert_eq!(r.coefficients, vec![q(3), q(-3), q(1)]);
        assert!(r.confirmed);
        assert!(r.fits(&s));
        let g = generating_function(&s).unwrap();
        assert_eq!(g.numerator, zpoly(&[1, 0, 3]));
        assert_eq!(g.denominator, zpoly(&[1, -3, 3, -1]));
        assert!(entropy_estimate(&s).unwrap().zero);
    }

    #[test]
    fn constant_and_periodic() {
        let r = min_recurrence(&seq(&[1, 1, 1, 1])).unwrap();
        assert_eq!(r.coefficients, vec![q(1)]);
        let g = generating_function(&seq(&[1, 1, 1, 1, 1])).unwrap();
        assert_eq!((g.numerator, g.denominator), (zpoly(&[1]), zpoly(&[1, -1])));
        assert!(entropy_estimate(&seq(&[1, 3, 1, 3, 1, 3])).unwrap().zero);
    }

    #[test]
    fn too_short_and_no_recurrence() {
        assert_eq!(min_recurrence(&seq(&[1, 1, 1])), Err(SeqfitError::TooShort(3)));
        assert!(matches!(min_recurrence(&seq(&[1, 2, 5, 3, 17])), Err(SeqfitError::NoRecurrenceFound(_))));
    }

    #[test]
    fn golden_growth() {
        let s: Vec<BigInt> = crate::picard::type_c_recurrence(19).into_iter().map(|v| v[0].clone()).collect();
        let r = min_recurrence(&s).unwrap();
        assert_eq!(r.order, 4);
        let cp = r.characteristic_polynomial();
        assert_eq!(cp, algebraic::mul_z(&zpoly(&[1, -3, 1]), &zpoly(&[-1, 0, 1])));
        let e = entropy_estimate(&s).unwrap();
        assert!((e.value - 0.962_423_650_1).abs() < 1e-6);
        assert_eq!(e.dominant_root.unwrap().min_poly, vec!["1", "-3", "1"]);
    }

    #[test]
    fn theta_generating_function() {
        let s = seq(&[1, 2, 4, 7, 12, 18, 25, 34, 44, 55, 68, 82, 97, 114, 132, 151]);
        let g = generating_function(&s).unwrap();
        assert_eq!(g.numerator, zpoly(&[1, 0, 1, 0, 2]));
        let den = algebraic::mul_z(&algebraic::mul_z(&zpoly(&[1, -1]), &zpoly(&[1, -2, 1])), &zpoly(&[1, 1, 1]));
        assert_eq!(g.denominator, den);
        assert_eq!(g.expand(16), s.iter().map(|x| BigRational::from_integer(x.clone())).collect::<Vec<_>>());
        assert!(entropy_estimate(&s).unwrap().zero);
    }
}
