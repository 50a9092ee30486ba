//! Composition factors, their linear factors, and orbits of contracted planes.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::birmap::{MapError, ProjMap, ProjPoint};
use crate::khk::EulerParams;
use crate::linalg;
use crate::polyring::{HomogPoly, LinearForm, PolyError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SingularError {
    #[error("map has no declared inverse")]
    NoInverse,
    #[error("composition with the inverse is not a multiple of the identity")]
    NotProportionalToIdentity,
    #[error("factorization incomplete, residual {0}")]
    IncompleteFactorization(String),
    #[error("probe point {0} lies in the base locus")]
    ProbeInBaseLocus(String),
    #[error("probe point {0} is not on the plane")]
    ProbeOffPlane(String),
    #[error("could not find three independent probe points off the base locus")]
    NoProbePoints,
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// The factor `κ` with `outer ∘ inner = κ · Id`, computed without reduction.
pub fn composition_factor(outer: &ProjMap, inner: &ProjMap) -> Result<HomogPoly, SingularError> {
    let n = inner.nvars();
    let mut kappa: Option<HomogPoly> = None;
    for (i, c) in outer.components().iter().enumerate() {
        let comp = c.substitute(inner.components());
        let q = comp.divide_exact(&HomogPoly::var(n, i)).map_err(|_| SingularError::NotProportionalToIdentity)?;
        match &kappa {
            None => kappa = Some(q),
            Some(k) if *k == q => {}
            Some(_) => return Err(SingularError::NotProportionalToIdentity),
        }
    }
    let k = kappa.ok_or(SingularError::NotProportionalToIdentity)?;
    if k.is_zero() {
        return Err(SingularError::NotProportionalToIdentity);
    }
    Ok(k.normalize())
}

/// `κ` from `Ψ ∘ Φ = κ · Id` and `λ` from `Φ ∘ Ψ = λ · Id`.
pub fn kappa_lambda(phi: &ProjMap) -> Result<(HomogPoly, HomogPoly), SingularError> {
    let psi = phi.inverse().ok_or(SingularError::NoInverse)?;
    Ok((composition_factor(psi, phi)?, composition_factor(phi, psi)?))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KappaFactorization {
    pub factors: Vec<(LinearForm, u32)>,
    pub total_degree: u32,
    pub residual: HomogPoly,
}

impl Serialize for KappaFactorization {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let f: Vec<(String, u32)> = self.factors.iter().map(|(l, m)| (l.to_string(), *m)).collect();
        let mut st = s.serialize_struct("KappaFactorization", 3)?;
        st.serialize_field("factors", &f)?;
        st.serialize_field("total_degree", &self.total_degree)?;
        st.serialize_field("residual", &self.residual.to_string())?;
        st.end()
    }
}

/// Trial division by the coordinate forms and then by each candidate.
pub fn factor_linear_forms(kappa: &HomogPoly, candidates: &[LinearForm]) -> Result<KappaFactorization, SingularError> {
    let n = kappa.nvars();
    let coords = (0..n).map(|i| {
        let mut c = vec![BigInt::zero(); n];
        c[i] = BigInt::one();
        LinearForm::new(c).expect("coordinate form")
    });
    let mut seen = BTreeSet::new();
    let mut rest = kappa.clone();
    let mut factors = Vec::new();
    let mut total_degree = 0;
    for form in coords.chain(candidates.iter().cloned()) {
        if !seen.insert(form.clone()) {
            continue;
        }
        let p = form.to_poly();
        let mut mult = 0;
        while rest.degree().is_some_and(|d| d > 0) {
            match rest.divide_exact(&p) {
                Ok(q) => {
                    rest = q;
                    mult += 1;
                }
                Err(_) => break,
            }
        }
        if mult > 0 {
            total_degree += mult;
            factors.push((form, mult));
        }
    }
    if !rest.is_constant() {
        return Err(SingularError::IncompleteFactorization(rest.to_string()));
    }
    Ok(KappaFactorization { factors, total_degree, residual: rest })
}

/// Forms `±α2α3h x1 ± α1α3h x2 ± α1α2h x3 ± 2 x4` for every sign choice.
pub fn euler_candidates(p: &EulerParams) -> Vec<LinearForm> {
    let [a1, a2, a3] = &p.alpha;
    let h = &p.h;
    let base = [a2 * a3 * h, a1 * a3 * h, a1 * a2 * h, BigRational::from_integer(BigInt::from(2))];
    (0..16u32)
        .map(|mask| {
            let c: Vec<BigRational> =
                base.iter().enumerate().map(|(i, v)| if mask >> i & 1 == 1 { -v.clone() } else { v.clone() }).collect();
            LinearForm::from_rationals(&c).expect("nonzero form")
        })
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OrbitOutcome {
    ConfinedIntoBaseLocus,
    Periodic,
    OpenAfterCap,
    NotContractedToPoint,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SingularOrbit {
    #[serde(serialize_with = "ser_form")]
    pub source_plane: LinearForm,
    pub chain: Vec<ProjPoint>,
    pub outcome: OrbitOutcome,
    pub length: usize,
    /// Images of the probe points when the plane is not contracted to a point.
    pub probe_images: Vec<ProjPoint>,
}

fn ser_form<S: serde::Serializer>(l: &LinearForm, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&l.to_string())
}

/// Three non-collinear points on the plane off the base locus, free coordinates drawn from `{1, 2, 3} + offset`.
pub fn probe_points(phi: &ProjMap, plane: &LinearForm, offset: u64) -> Result<Vec<ProjPoint>, SingularError> {
    let n = plane.nvars();
    let pivot = (0..n).rev().find(|&i| !plane.coeffs()[i].is_zero()).expect("nonzero form");
    let free: Vec<usize> = (0..n).filter(|&i| i != pivot).collect();
    let values: Vec<BigInt> = (1..=3u64).map(|v| BigInt::from(v + offset)).collect();
    let mut chosen: Vec<ProjPoint> = Vec::new();
    let total = 3usize.pow(free.len() as u32);
    for t in 0..total {
        let mut coords = vec![BigRational::zero(); n];
        let mut rem = t;
        for &j in free.iter().rev() {
            coords[j] = BigRational::from_integer(values[rem % 3].clone());
            rem /= 3;
        }
        let s: BigRational = free.iter().map(|&j| BigRational::from_integer(plane.coeffs()[j].clone()) * &coords[j]).sum();
        coords[pivot] = -s / BigRational::from_integer(plane.coeffs()[pivot].clone());
        let Ok(p) = ProjPoint::from_rationals(&coords) else { continue };
        if phi.in_base_locus(&p) || chosen.contains(&p) {
            continue;
        }
        let mut trial: Vec<Vec<BigInt>> = chosen.iter().map(|q| q.coords().to_vec()).collect();
        trial.push(p.coords().to_vec());
        if linalg::rank(&linalg::to_qmat(&trial)) == trial.len() {
            chosen.push(p);
            if chosen.len() == 3 {
                return Ok(chosen);
            }
        }
    }
    Err(SingularError::NoProbePoints)
}

/// Follows the image of a contracted plane until it enters the base locus, repeats, or exceeds `max_steps`.
pub fn trace_singular_orbit(
    phi: &ProjMap,
    plane: &LinearForm,
    probes: &[ProjPoint],
    max_steps: usize,
) -> Result<SingularOrbit, SingularError> {
    for p in probes {
        if !plane.eval(p.coords()).is_zero() {
            return Err(SingularError::ProbeOffPlane(p.to_string()));
        }
        if phi.in_base_locus(p) {
            return Err(SingularError::ProbeInBaseLocus(p.to_string()));
        }
    }
    let images = probes.iter().map(|p| phi.apply_point(p)).collect::<Result<Vec<_>, _>>()?;
    let distinct: BTreeSet<&ProjPoint> = images.iter().collect();
    if distinct.len() != 1 {
        return Ok(SingularOrbit {
            source_plane: plane.clone(),
            chain: Vec::new(),
            outcome: OrbitOutcome::NotContractedToPoint,
            length: 0,
            probe_images: images,
        });
    }
    let mut chain = vec![images[0].clone()];
    let outcome = loop {
        let cur = chain.last().expect("nonempty chain");
        if phi.in_base_locus(cur) {
            break OrbitOutcome::ConfinedIntoBaseLocus;
        }
        if chain.len() > max_steps {
            break OrbitOutcome::OpenAfterCap;
        }
        let next = phi.apply_point(cur)?;
        if chain.contains(&next) {
            break OrbitOutcome::Periodic;
        }
        chain.push(next);
    };
    let length = chain.len();
    Ok(SingularOrbit { source_plane: plane.clone(), chain, outcome, length, probe_images: Vec::new() })
}

/// Traces each coordinate plane `x_i = 0` with deterministic probes.
pub fn coordinate_plane_orbits(phi: &ProjMap, max_steps: usize, offset: u64) -> Result<Vec<SingularOrbit>, SingularError> {
    let n = phi.nvars();
    (0..n)
        .map(|i| {
            let mut c = vec![BigInt::zero(); n];
            c[i] = BigInt::one();
            let plane = LinearForm::new(c)?;
            let probes = probe_points(phi, &plane, offset)?;
            trace_singular_orbit(phi, &plane, &probes, max_steps)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::birmap::MapSpec;
    use crate::khk::build_euler;
    use crate::linalg::imat;

    fn map(name: &str) -> ProjMap {
        MapSpec::named(name).unwrap().resolve().unwrap()
    }

    fn monomial_square() -> HomogPoly {
        let x: Vec<HomogPoly> = (0..4).map(|i| HomogPoly::var(4, i)).collect();
        let m = &(&x[0] * &x[1]) * &(&x[2] * &x[3]);
        &m * &m
    }

    #[test]
    fn cremona_kappa() {
        let (k, l) = kappa_lambda(&ProjMap::cremona(4)).unwrap();
        assert_eq!(k, monomial_square());
        assert_eq!(l, monomial_square());
        let f = factor_linear_forms(&k, &[]).unwrap();
        assert_eq!(f.factors.iter().map(|(_, m)| *m).collect::<Vec<_>>(), vec![2, 2, 2, 2]);
        assert!(f.residual.is_constant());
    }

    #[test]
    fn linear_kappa_is_one() {
        let m = ProjMap::from_matrix(&imat(&[&[0, 1, 0, 0], &[-1, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, 1, 0]])).unwrap();
        let (k, _) = kappa_lambda(&m).unwrap();
        assert!(k.is_constant());
    }

    #[test]
    fn wrong_inverse_detected() {
        let m = ProjMap::cremona(4).with_inverse(ProjMap::identity(4));
        assert_eq!(kappa_lambda(&m), Err(SingularError::NotProportionalToIdentity));
    }

    #[test]
    fn irreducible_residual() {
        let x1 = HomogPoly::var(4, 0);
        let x2 = HomogPoly::var(4, 1);
        let p = (&x1 * &x1).try_add(&(&x2 * &x2)).unwrap();
        assert!(matches!(factor_linear_forms(&p, &[]), Err(SingularError::IncompleteFactorization(_))));
    }

    #[test]
    fn group_composite_kappa_and_orbits() {
        let phi = map("g0c3");
        let (k, _) = kappa_lambda(&phi).unwrap();
        assert_eq!(k, monomial_square());
        let psi = phi.inverse().unwrap();
        assert_eq!(k.degree().unwrap(), phi.degree() * psi.degree() - 1);
        let orbits = coordinate_plane_orbits(&phi, 10, 0).unwrap();
        let p1 = ProjPoint::from_i64(&[1, -1, -1, -1]).unwrap();
        let e1 = ProjPoint::from_i64(&[1, 0, 0, 0]).unwrap();
        assert_eq!(orbits[0].chain, vec![p1, e1]);
        for o in &orbits {
            assert_eq!(o.outcome, OrbitOutcome::ConfinedIntoBaseLocus);
            assert_eq!(o.length, 2);
        }
        for o in coordinate_plane_orbits(&map("typeC"), 10, 0).unwrap() {
            assert_eq!(o.outcome, OrbitOutcome::ConfinedIntoBaseLocus);
            assert_eq!(o.length, 3);
        }
    }

    #[test]
    fn euler_kappa_and_orbits() {
        let p = EulerParams::from_i64([1, 4, 9], 1).unwrap();
        let phi = build_euler(&p).unwrap();
        let (k, l) = kappa_lambda(&phi).unwrap();
        assert_eq!(k.degree(), Some(8));
        let fk = factor_linear_forms(&k, &euler_candidates(&p)).unwrap();
        let expected: BTreeSet<LinearForm> = crate::khk::euler_kappa_forms(&p).into_iter().collect();
        assert_eq!(fk.factors.iter().map(|(f, _)| f.clone()).collect::<BTreeSet<_>>(), expected);
        assert!(fk.factors.iter().all(|(_, m)| *m == 2));
        let fl = factor_linear_forms(&l, &euler_candidates(&p)).unwrap();
        let expected_l: BTreeSet<LinearForm> = crate::khk::euler_lambda_forms(&p).into_iter().collect();
        assert_eq!(fl.factors.iter().map(|(f, _)| f.clone()).collect::<BTreeSet<_>>(), expected_l);
        let pairs = crate::khk::euler_singular_points(&p);
        for kf in crate::khk::euler_kappa_forms(&p) {
            let probes = probe_points(&phi, &kf, 0).unwrap();
            let o = trace_singular_orbit(&phi, &kf, &probes, 10).unwrap();
            assert_eq!(o.outcome, OrbitOutcome::ConfinedIntoBaseLocus);
            assert_eq!(o.length, 2);
            assert!(pairs.iter().any(|(s, sp)| o.chain == vec![s.clone(), sp.clone()]));
        }
    }

    #[test]
    fn theta_contracts_to_lines() {
        let phi = map("theta");
        let orbits = coordinate_plane_orbits(&phi, 10, 0).unwrap();
        assert_eq!(orbits[0].outcome, OrbitOutcome::NotContractedToPoint);
        assert_eq!(orbits[1].outcome, OrbitOutcome::NotContractedToPoint);
    }
}
