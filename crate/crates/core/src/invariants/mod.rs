//! Rational functions of degree zero, invariance under maps, and covariant linear systems.

mod catalog;

pub use catalog::*;

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::birmap::{MapError, ProjMap};
use crate::cubes::{ElementType, GroupElement};
use crate::linalg::{self, QMat};
use crate::polyring::{gcd, parse_fraction, HomogPoly, Monomial, PolyError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvariantsError {
    #[error("denominator is zero")]
    ZeroDenominator,
    #[error("numerator has degree {num} but denominator has degree {den}")]
    DegreeMismatch { num: u32, den: u32 },
    #[error("numerator and denominator both vanish after substitution")]
    Indeterminate,
    #[error("conjugating element must be a signed permutation")]
    TypeMismatch,
    #[error("pullback of basis element {0} is not divisible by the divisor")]
    NotDivisibleByD(usize),
    #[error("image of basis element {0} is not in the span of the system")]
    NotInSpan(usize),
    #[error("induced automorphism is singular")]
    SingularAutomorphism,
    #[error("degree bookkeeping fails: {system} * {map} != {system} + {divisor}")]
    DegreeBookkeeping { system: u32, map: u32, divisor: u32 },
    #[error("basis of the linear system is linearly dependent")]
    DependentBasis,
    #[error("map has no declared inverse")]
    NoInverse,
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Map(#[from] MapError),
}

/// `num / den` with coprime numerator and denominator of equal degree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: HomogPoly,
    den: HomogPoly,
}

impl RationalFunction {
    /// Reduces by the gcd and the common content; the denominator gets a positive leading coefficient.
    pub fn new(num: HomogPoly, den: HomogPoly) -> Result<Self, InvariantsError> {
        if den.is_zero() {
            return Err(InvariantsError::ZeroDenominator);
        }
        let n = den.nvars();
        if num.is_zero() {
            return Ok(Self { num, den: HomogPoly::one(n) });
        }
        let (dn, dd) = (num.degree().unwrap_or(0), den.degree().unwrap_or(0));
        if dn != dd {
            return Err(InvariantsError::DegreeMismatch { num: dn, den: dd });
        }
        let g = gcd(&num, &den);
        let (mut num, mut den) = if g.is_constant() { (num, den) } else { (num.divide_exact(&g)?, den.divide_exact(&g)?) };
        let mut c = num.content().gcd(&den.content());
        if den.leading_coeff().is_some_and(|x| x.is_negative()) {
            c = -c;
        }
        if !c.is_one() {
            num = num.div_scalar_exact(&c)?;
            den = den.div_scalar_exact(&c)?;
        }
        Ok(Self { num, den })
    }

    pub fn parse(text: &str) -> Result<Self, InvariantsError> {
        let f = parse_fraction(text, 4)?;
        Self::new(f.num, f.den)
    }

    pub fn constant(nvars: usize, c: i64) -> Self {
        Self::new(HomogPoly::constant(nvars, c), HomogPoly::one(nvars)).expect("constant")
    }

    pub fn numerator(&self) -> &HomogPoly {
        &self.num
    }

    pub fn denominator(&self) -> &HomogPoly {
        &self.den
    }

    pub fn nvars(&self) -> usize {
        self.den.nvars()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn neg(&self) -> Self {
        Self { num: -&self.num, den: self.den.clone() }
    }

    pub fn add(&self, other: &Self) -> Result<Self, InvariantsError> {
        let a = &self.num * &other.den;
        let b = &other.num * &self.den;
        let num = if a.is_zero() { b } else if b.is_zero() { a } else { a.try_add(&b)? };
        Self::new(num, &self.den * &other.den)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, InvariantsError> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, InvariantsError> {
        Self::new(&self.num * &other.num, &self.den * &other.den)
    }

    pub fn pow(&self, e: u32) -> Self {
        Self { num: self.num.pow(e), den: self.den.pow(e) }.renormalized()
    }

    fn renormalized(self) -> Self {
        Self::new(self.num, self.den).expect("already valid")
    }

    /// `R ∘ Φ`, reduced.
    pub fn pullback(&self, phi: &ProjMap) -> Result<Self, InvariantsError> {
        let num = self.num.substitute(phi.components());
        let den = self.den.substitute(phi.components());
        if den.is_zero() {
            return Err(if num.is_zero() { InvariantsError::Indeterminate } else { InvariantsError::ZeroDenominator });
        }
        Self::new(num, den)
    }

    /// Value at an integer point, `None` on the polar locus.
    pub fn eval(&self, point: &[BigInt]) -> Option<BigRational> {
        let d = self.den.eval(point);
        (!d.is_zero()).then(|| BigRational::new(self.num.eval(point), d))
    }

    /// `Some(c)` with `self = c · other` for `c = ±1`.
    pub fn sign_relative_to(&self, other: &Self) -> Option<i8> {
        let lhs = &self.num * &other.den;
        let rhs = &other.num * &self.den;
        if lhs == rhs {
            Some(1)
        } else if lhs == -&rhs {
            Some(-1)
        } else {
            None
        }
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for RationalFunction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

pub fn pullback_rational(phi: &ProjMap, r: &RationalFunction) -> Result<RationalFunction, InvariantsError> {
    r.pullback(phi)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InvarianceClass {
    Invariant,
    AntiInvariant,
    KInvariant(u32),
    None,
}

impl fmt::Display for InvarianceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InvarianceClass::Invariant => write!(f, "invariant"),
            InvarianceClass::AntiInvariant => write!(f, "anti"),
            InvarianceClass::KInvariant(k) => write!(f, "k:{k}"),
            InvarianceClass::None => write!(f, "none"),
        }
    }
}

impl Serialize for InvarianceClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

pub const DEFAULT_K_MAX: u32 = 6;

/// Tests `R ∘ Φ = ±R`, then `R ∘ Φ^k = R` for `k ≤ k_max`.
pub fn invariance_class(phi: &ProjMap, r: &RationalFunction, k_max: u32) -> Result<InvarianceClass, InvariantsError> {
    if r.is_constant() {
        return Ok(InvarianceClass::Invariant);
    }
    let mut cur = r.pullback(phi)?;
    match cur.sign_relative_to(r) {
        Some(1) => return Ok(InvarianceClass::Invariant),
        Some(_) => return Ok(InvarianceClass::AntiInvariant),
        None => {}
    }
    for k in 2..=k_max {
        cur = cur.pullback(phi)?;
        if cur.sign_relative_to(r) == Some(1) {
            return Ok(InvarianceClass::KInvariant(k));
        }
    }
    Ok(InvarianceClass::None)
}

/// For each function, the index of the function equal to its pullback, if any.
pub fn pullback_permutation(phi: &ProjMap, fs: &[RationalFunction]) -> Result<Vec<Option<usize>>, InvariantsError> {
    fs.iter()
        .map(|f| {
            let p = f.pullback(phi)?;
            Ok(fs.iter().position(|g| p.sign_relative_to(g) == Some(1)))
        })
        .collect()
}

/// `R ∘ C3 + R`.
pub fn k_invariant_lift(r: &RationalFunction) -> Result<RationalFunction, InvariantsError> {
    r.pullback(&ProjMap::cremona(r.nvars()))?.add(r)
}

/// `R ∘ h⁻¹` for a signed permutation `h`.
pub fn conjugate_invariant(r: &RationalFunction, h: &GroupElement) -> Result<RationalFunction, InvariantsError> {
    if h.classify().ok() != Some(ElementType::B) {
        return Err(InvariantsError::TypeMismatch);
    }
    r.pullback(&h.inverse().to_map())
}

/// Rank of the gradients of `fs` at a rational point.
pub fn jacobian_rank(fs: &[RationalFunction], point: &[BigInt]) -> usize {
    let rows: QMat = fs
        .iter()
        .map(|f| {
            let d = f.den.eval(point);
            let n = f.num.eval(point);
            (0..f.nvars())
                .map(|i| {
                    let dn = f.num.partial_derivative(i).eval(point);
                    let dd = f.den.partial_derivative(i).eval(point);
                    BigRational::from_integer(&dn * &d - &n * &dd)
                })
                .collect()
        })
        .collect();
    linalg::rank(&rows)
}

/// Linearly independent forms of a common degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinearSystem {
    pub degree: u32,
    pub basis: Vec<HomogPoly>,
    pub label: String,
}

fn monomial_support<'a>(polys: impl IntoIterator<Item = &'a HomogPoly>) -> Vec<Monomial> {
    let set: BTreeSet<Monomial> = polys.into_iter().flat_map(|p| p.terms().iter().map(|(m, _)| *m)).collect();
    set.into_iter().collect()
}

fn coefficient_rows(polys: &[HomogPoly], support: &[Monomial]) -> QMat {
    polys.iter().map(|p| support.iter().map(|m| BigRational::from_integer(p.coeff(m))).collect()).collect()
}

impl LinearSystem {
    pub fn new(basis: Vec<HomogPoly>, label: impl Into<String>) -> Result<Self, InvariantsError> {
        let degree = basis.first().and_then(HomogPoly::degree).ok_or(InvariantsError::DependentBasis)?;
        if basis.iter().any(|b| b.degree() != Some(degree)) {
            let bad = basis.iter().find_map(|b| b.degree().filter(|&d| d != degree)).unwrap_or(0);
            return Err(InvariantsError::DegreeMismatch { num: degree, den: bad });
        }
        if !independent(&basis) {
            return Err(InvariantsError::DependentBasis);
        }
        Ok(Self { degree, basis, label: label.into() })
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of `f` in the basis, if it lies in the span.
    pub fn coordinates(&self, f: &HomogPoly) -> Option<Vec<BigRational>> {
        let support = monomial_support(self.basis.iter().chain(std::iter::once(f)));
        let rows = coefficient_rows(&self.basis, &support);
        let a: QMat = (0..support.len()).map(|i| rows.iter().map(|r| r[i].clone()).collect()).collect();
        let b: Vec<BigRational> = support.iter().map(|m| BigRational::from_integer(f.coeff(m))).collect();
        linalg::solve(&a, &b)
    }
}

pub fn independent(polys: &[HomogPoly]) -> bool {
    let support = monomial_support(polys);
    linalg::rank(&coefficient_rows(polys, &support)) == polys.len()
}

/// Rank of a family of forms.
pub fn span_rank(polys: &[HomogPoly]) -> usize {
    let support = monomial_support(polys);
    linalg::rank(&coefficient_rows(polys, &support))
}

/// The divisor `Σ n_i H_i` with `H_i = {x_i = 0}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivisorSpec(pub Vec<u32>);

impl DivisorSpec {
    pub fn hbar(nvars: usize) -> Self {
        Self(vec![1; nvars])
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn to_poly(&self) -> HomogPoly {
        let exps: Vec<u32> = self.0.clone();
        HomogPoly::monomial(exps.len(), Monomial::from_exps(&exps), 1)
    }

    pub fn parse(text: &str) -> Option<Self> {
        text.split(',').map(|t| t.trim().parse().ok()).collect::<Option<Vec<u32>>>().map(Self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Covariance {
    /// Column `j` holds the coordinates of the image of basis element `j`.
    pub matrix: QMat,
    /// Common factor removed from the pullbacks.
    pub factor: HomogPoly,
}

impl Serialize for Covariance {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let m: Vec<Vec<String>> = self.matrix.iter().map(|r| r.iter().map(ToString::to_string).collect()).collect();
        let mut st = s.serialize_struct("Covariance", 2)?;
        st.serialize_field("matrix", &m)?;
        st.serialize_field("factor", &self.factor.to_string())?;
        st.end()
    }
}

/// Covariance under the declared inverse `Ψ`: each `F ∘ Ψ` equals the divisor times a member of the system.
pub fn check_covariance(phi: &ProjMap, system: &LinearSystem, divisor: &DivisorSpec) -> Result<Covariance, InvariantsError> {
    let psi = phi.inverse().ok_or(InvariantsError::NoInverse)?;
    check_covariance_under(psi, system, divisor)
}

/// Covariance of the system under pullback by `map`.
///
/// The divisor polynomial is tried first; otherwise the gcd of the pullbacks is
/// accepted when its degree equals the divisor degree.
pub fn check_covariance_under(map: &ProjMap, system: &LinearSystem, divisor: &DivisorSpec) -> Result<Covariance, InvariantsError> {
    let dm = map.degree();
    if system.degree * dm != system.degree + divisor.total() {
        return Err(InvariantsError::DegreeBookkeeping { system: system.degree, map: dm, divisor: divisor.total() });
    }
    let pulled: Vec<HomogPoly> = system.basis.iter().map(|f| f.substitute(map.components())).collect();
    let d = divisor.to_poly();
    let quotients: Result<Vec<HomogPoly>, _> = pulled.iter().map(|p| p.divide_exact(&d)).collect();
    let (quotients, factor) = match quotients {
        Ok(q) => (q, d),
        Err(_) => {
            let g = crate::polyring::gcd_many(pulled.iter()).expect("nonempty system");
            if g.degree() != Some(divisor.total()) {
                let bad = pulled.iter().position(|p| p.divide_exact(&d).is_err()).unwrap_or(0);
                return Err(InvariantsError::NotDivisibleByD(bad));
            }
            let q = pulled.iter().map(|p| p.divide_exact(&g)).collect::<Result<Vec<_>, _>>()?;
            (q, g)
        }
    };
    let n = system.dimension();
    let mut matrix = vec![vec![BigRational::zero(); n]; n];
    for (j, q) in quotients.iter().enumerate() {
        let c = system.coordinates(q).ok_or(InvariantsError::NotInSpan(j))?;
        for i in 0..n {
            matrix[i][j] = c[i].clone();
        }
    }
    if linalg::determinant(&matrix).is_zero() {
        return Err(InvariantsError::SingularAutomorphism);
    }
    Ok(Covariance { matrix, factor })
}

/// Basis of the forms of `degree` vanishing at every point.
pub fn forms_through(points: &[crate::birmap::ProjPoint], nvars: usize, degree: u32) -> Vec<HomogPoly> {
    let monos = all_monomials(nvars, degree);
    let rows: QMat = points
        .iter()
        .map(|p| {
            monos
                .iter()
                .map(|m| BigRational::from_integer(HomogPoly::monomial(nvars, *m, 1).eval(p.coords())))
                .collect()
        })
        .collect();
    let rows = if rows.is_empty() { vec![vec![BigRational::zero(); monos.len()]] } else { rows };
    linalg::nullspace(&rows, monos.len())
        .into_iter()
        .map(|v| {
            let den = v.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
            let terms = monos.iter().zip(&v).map(|(m, c)| (*m, (c * BigRational::from_integer(den.clone())).to_integer()));
            HomogPoly::from_terms(nvars, terms).expect("homogeneous").normalize()
        })
        .collect()
}

pub fn all_monomials(nvars: usize, degree: u32) -> Vec<Monomial> {
    fn rec(nvars: usize, i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == nvars - 1 {
            cur.push(left);
            out.push(Monomial::from_exps(cur));
            cur.pop();
            return;
        }
        for e in (0..=left).rev() {
            cur.push(e);
            rec(nvars, i + 1, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(nvars, 0, degree, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests;
