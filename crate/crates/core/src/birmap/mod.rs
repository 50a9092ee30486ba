//! Projective points and rational self-maps of projective space.

mod degrees;
mod spec;

pub use degrees::{degree_sequence, degree_sequence_symbolic, DegreeSequence, DEFAULT_DEGREE_CAP};
pub use spec::MapSpec;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::linalg;
use crate::polyring::{gcd_many, HomogPoly, Monomial, PolyError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MapError {
    #[error("point lies in the base locus")]
    BaseLocus,
    #[error("the zero vector is not a projective point")]
    ZeroPoint,
    #[error("all components vanish identically")]
    DegenerateComposition,
    #[error("components must share a degree and a variable count")]
    InconsistentComponents,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("no inverse declared")]
    NoInverse,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid map spec: {0}")]
    Spec(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A point of projective space with coprime integer coordinates, first nonzero one positive.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint(Vec<BigInt>);

impl ProjPoint {
    pub fn new(coords: Vec<BigInt>) -> Result<Self, MapError> {
        let g = coords.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if g.is_zero() {
            return Err(MapError::ZeroPoint);
        }
        let sign_neg = coords.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative());
        let g = if sign_neg { -g } else { g };
        Ok(Self(coords.into_iter().map(|c| c / &g).collect()))
    }

    pub fn from_i64(coords: &[i64]) -> Result<Self, MapError> {
        Self::new(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn from_rationals(coords: &[BigRational]) -> Result<Self, MapError> {
        let den = coords.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        Self::new(coords.iter().map(|q| q.numer() * (&den / q.denom())).collect())
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Image under a matrix acting on column vectors.
    pub fn transform(&self, m: &[Vec<BigInt>]) -> Result<Self, MapError> {
        Self::new(linalg::mat_vec_i(m, &self.0))
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(":"))
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for ProjPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        v.serialize(s)
    }
}

/// A rational map given by coprime components of equal degree.
#[derive(Clone)]
pub struct ProjMap {
    components: Vec<HomogPoly>,
    inverse: Option<Arc<ProjMap>>,
    label: String,
}

/// Result of a composition: the reduced map and the factor removed from every component.
#[derive(Clone, Debug)]
pub struct Composition {
    pub map: ProjMap,
    pub removed: HomogPoly,
}

impl PartialEq for ProjMap {
    fn eq(&self, other: &Self) -> bool {
        self.components == other.components
    }
}

impl Eq for ProjMap {}

impl ProjMap {
    /// Reduces the components by their gcd and fixes the overall sign.
    pub fn new(components: Vec<HomogPoly>) -> Result<Self, MapError> {
        Ok(Self::reduce(components)?.map)
    }

    fn reduce(components: Vec<HomogPoly>) -> Result<Composition, MapError> {
        let n = components.len();
        if n == 0 || components.iter().any(|c| c.nvars() != n) {
            return Err(MapError::InconsistentComponents);
        }
        let degs: Vec<u32> = components.iter().filter_map(HomogPoly::degree).collect();
        if degs.is_empty() {
            return Err(MapError::DegenerateComposition);
        }
        if degs.iter().any(|&d| d != degs[0]) {
            return Err(MapError::InconsistentComponents);
        }
        let g = gcd_many(components.iter().filter(|c| !c.is_zero())).expect("nonzero component");
        let mut comps: Vec<HomogPoly> = if g.is_one_poly() {
            components
        } else {
            components.iter().map(|c| c.divide_exact(&g)).collect::<Result<_, _>>()?
        };
        let mut content = comps.iter().fold(BigInt::zero(), |acc, c| acc.gcd(&c.content()));
        if comps.iter().find(|c| !c.is_zero()).and_then(HomogPoly::leading_coeff).is_some_and(|c| c.is_negative()) {
            content = -content;
        }
        if !content.is_one() {
            comps = comps.iter().map(|c| c.div_scalar_exact(&content)).collect::<Result<_, _>>()?;
        }
        let removed = g.scale(&content);
        Ok(Composition { map: Self { components: comps, inverse: None, label: String::new() }, removed })
    }

    pub fn identity(nvars: usize) -> Self {
        let comps = (0..nvars).map(|i| HomogPoly::var(nvars, i)).collect();
        let mut m = Self { components: comps, inverse: None, label: "identity".into() };
        m.inverse = Some(Arc::new(m.clone()));
        m
    }

    /// The standard Cremona involution in `nvars` variables.
    pub fn cremona(nvars: usize) -> Self {
        let comps = (0..nvars)
            .map(|i| {
                let exps: Vec<u32> = (0..nvars).map(|j| u32::from(j != i)).collect();
                HomogPoly::monomial(nvars, Monomial::from_exps(&exps), 1)
            })
            .collect();
        let mut m = Self { components: comps, inverse: None, label: "C3".into() };
        m.inverse = Some(Arc::new(m.clone()));
        m
    }

    /// Linear map acting on column vectors, with its exact inverse declared.
    pub fn from_matrix(m: &[Vec<BigInt>]) -> Result<Self, MapError> {
        let n = m.len();
        if m.iter().any(|r| r.len() != n) {
            return Err(MapError::InconsistentComponents);
        }
        let inv = linalg::inverse(&linalg::to_qmat(m)).ok_or(MapError::SingularMatrix)?;
        let den = inv.iter().flatten().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let inv_int: Vec<Vec<BigInt>> =
            inv.iter().map(|r| r.iter().map(|q| q.numer() * (&den / q.denom())).collect()).collect();
        let mut inverse = Self::linear_unchecked(&inv_int)?;
        let mut forward = Self::linear_unchecked(m)?;
        inverse.inverse = Some(Arc::new(forward.clone()));
        forward.inverse = Some(Arc::new(inverse));
        Ok(forward)
    }

    fn linear_unchecked(m: &[Vec<BigInt>]) -> Result<Self, MapError> {
        let n = m.len();
        let comps = m
            .iter()
            .map(|row| {
                HomogPoly::from_terms(n, row.iter().enumerate().map(|(j, c)| (Monomial::var(j), c.clone())))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(comps)
    }

    pub fn with_inverse(mut self, inverse: ProjMap) -> Self {
        self.inverse = Some(Arc::new(inverse));
        self
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn without_inverse(mut self) -> Self {
        self.inverse = None;
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn components(&self) -> &[HomogPoly] {
        &self.components
    }

    pub fn nvars(&self) -> usize {
        self.components.len()
    }

    pub fn degree(&self) -> u32 {
        self.components.iter().find_map(HomogPoly::degree).unwrap_or(0)
    }

    pub fn inverse(&self) -> Option<&ProjMap> {
        self.inverse.as_deref()
    }

    pub fn is_identity(&self) -> bool {
        self.degree() == 1 && *self == Self::identity(self.nvars())
    }

    pub fn apply_point(&self, p: &ProjPoint) -> Result<ProjPoint, MapError> {
        if p.dim() != self.nvars() {
            return Err(MapError::InconsistentComponents);
        }
        let img: Vec<BigInt> = self.components.iter().map(|c| c.eval(p.coords())).collect();
        if img.iter().all(Zero::is_zero) {
            return Err(MapError::BaseLocus);
        }
        ProjPoint::new(img)
    }

    /// Whether every component vanishes at `p`.
    pub fn in_base_locus(&self, p: &ProjPoint) -> bool {
        self.components.iter().all(|c| c.eval(p.coords()).is_zero())
    }

    /// Substitutes the components into `f`, without any reduction.
    pub fn pullback_poly(&self, f: &HomogPoly) -> Result<HomogPoly, MapError> {
        match f.degree() {
            Some(d) if d >= 1 => Ok(f.substitute(&self.components)),
            _ if f.is_zero() => Ok(HomogPoly::zero(self.nvars())),
            _ => Err(MapError::Precondition("pullback needs a form of positive degree".into())),
        }
    }

    /// Composition `outer ∘ inner` with the common factor removed.
    ///
    /// When both maps carry inverses the inverse of the composite is composed as well.
    pub fn compose(outer: &ProjMap, inner: &ProjMap) -> Result<Composition, MapError> {
        let mut c = Self::compose_raw(outer, inner)?;
        if let (Some(oi), Some(ii)) = (outer.inverse(), inner.inverse()) {
            let inv = Self::compose_raw(ii, oi)?.map;
            c.map.inverse = Some(Arc::new(inv));
        }
        Ok(c)
    }

    fn compose_raw(outer: &ProjMap, inner: &ProjMap) -> Result<Composition, MapError> {
        if outer.nvars() != inner.nvars() {
            return Err(MapError::InconsistentComponents);
        }
        let comps: Vec<HomogPoly> = outer.components.iter().map(|c| c.substitute(&inner.components)).collect();
        if comps.iter().all(HomogPoly::is_zero) {
            return Err(MapError::DegenerateComposition);
        }
        Self::reduce(comps)
    }

    /// Composition of a list applied right to left.
    pub fn compose_all(maps: &[ProjMap]) -> Result<ProjMap, MapError> {
        let (last, rest) = maps.split_last().ok_or_else(|| MapError::Spec("empty composition".into()))?;
        let mut acc = last.clone();
        for m in rest.iter().rev() {
            acc = Self::compose(m, &acc)?.map;
        }
        Ok(acc)
    }

    /// The n-th iterate, reduced at every step.
    pub fn iterate(&self, n: u32) -> Result<ProjMap, MapError> {
        let mut acc = Self::identity(self.nvars());
        for _ in 0..n {
            acc = Self::compose(self, &acc)?.map;
        }
        Ok(acc)
    }

    /// Whether two maps agree as projective maps, comparing components up to a common scalar.
    pub fn projectively_equal(&self, other: &ProjMap) -> bool {
        self.components == other.components
    }

    /// Builds the map from raw components, also returning the removed factor.
    pub fn from_components_reduced(components: Vec<HomogPoly>) -> Result<Composition, MapError> {
        Self::reduce(components)
    }
}

impl fmt::Debug for ProjMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.components.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(" : "))
    }
}

impl fmt::Display for ProjMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

trait IsOnePoly {
    fn is_one_poly(&self) -> bool;
}

impl IsOnePoly for HomogPoly {
    fn is_one_poly(&self) -> bool {
        self.is_constant() && self.leading_coeff().is_some_and(One::is_one)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::imat;
    use crate::polyring::parse_poly;

    fn p(s: &str) -> HomogPoly {
        parse_poly(s, 4).unwrap()
    }

    fn g0() -> ProjMap {
        ProjMap::from_matrix(&imat(&[&[1, -1, -1, -1], &[-1, 1, -1, -1], &[-1, -1, 1, -1], &[-1, -1, -1, 1]])).unwrap()
    }

    #[test]
    fn cremona_basics() {
        let c = ProjMap::cremona(4);
        assert_eq!(c.degree(), 3);
        let one = ProjPoint::from_i64(&[1, 1, 1, 1]).unwrap();
        assert_eq!(c.apply_point(&one).unwrap(), one);
        let q = ProjPoint::from_i64(&[1, 2, 3, 6]).unwrap();
        assert_eq!(c.apply_point(&q).unwrap(), ProjPoint::from_i64(&[6, 3, 2, 1]).unwrap());
        let e1 = ProjPoint::from_i64(&[1, 0, 0, 0]).unwrap();
        assert_eq!(c.apply_point(&e1), Err(MapError::BaseLocus));
    }

    #[test]
    fn point_normalisation() {
        let a = ProjPoint::from_i64(&[-2, 4, 0, 6]).unwrap();
        assert_eq!(a.coords(), ProjPoint::from_i64(&[1, -2, 0, -3]).unwrap().coords());
        assert_eq!(ProjPoint::new(a.coords().to_vec()).unwrap(), a);
        assert_eq!(ProjPoint::from_i64(&[0, 0, 0, 0]), Err(MapError::ZeroPoint));
    }

    #[test]
    fn cremona_squared_is_identity() {
        let c = ProjMap::cremona(4);
        let comp = ProjMap::compose(&c, &c).unwrap();
        assert!(comp.map.is_identity());
        assert_eq!(comp.removed, p("x1^2*x2^2*x3^2*x4^2"));
        let id = ProjMap::identity(4);
        let comp = ProjMap::compose(&id, &c).unwrap();
        assert_eq!(comp.map, c);
        assert_eq!(comp.removed, HomogPoly::one(4));
    }

    #[test]
    fn g0_after_cremona() {
        let phi = ProjMap::compose(&g0(), &ProjMap::cremona(4)).unwrap().map;
        assert_eq!(phi.degree(), 3);
        let p1 = ProjPoint::from_i64(&[1, -1, -1, -1]).unwrap();
        assert_eq!(phi.apply_point(&p1).unwrap(), ProjPoint::from_i64(&[1, 0, 0, 0]).unwrap());
        let back = ProjMap::compose(phi.inverse().unwrap(), &phi).unwrap();
        assert!(back.map.is_identity());
    }

    #[test]
    fn pullbacks() {
        let c = ProjMap::cremona(4);
        assert_eq!(c.pullback_poly(&p("x1")).unwrap(), p("x2*x3*x4"));
        assert_eq!(
            c.pullback_poly(&p("x1*x2 - x3*x4")).unwrap(),
            p("x1*x2*x3^2*x4^2 - x1^2*x2^2*x3*x4")
        );
        assert!(matches!(c.pullback_poly(&HomogPoly::one(4)), Err(MapError::Precondition(_))));
    }

    #[test]
    fn matrix_inverse_declared() {
        let m = g0();
        let inv = m.inverse().unwrap();
        assert!(ProjMap::compose(inv, &m).unwrap().map.is_identity());
        assert!(ProjMap::from_matrix(&imat(&[&[1, 1, 0, 0], &[1, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]])).is_err());
    }
}
