//! Kahan–Hirota–Kimura discretisations: the Euler top, quadratic Nambu systems,
//! and the degree-two map θ.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::birmap::{MapError, ProjMap, ProjPoint};
use crate::cubes;
use crate::linalg::{self, IMat, QMat};
use crate::polyring::{parse_fraction, Fraction, HomogPoly, LinearForm, Monomial, PolyError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KhkError {
    #[error("parameter {0} is not the square of a rational")]
    NonSquareParameter(String),
    #[error("parameter must be positive: {0}")]
    NonPositiveParameter(String),
    #[error("step size must be nonzero")]
    ZeroStep,
    #[error("degenerate parameters: the components share a factor of degree {0}")]
    DegenerateParameters(u32),
    #[error("bad rational literal: {0}")]
    BadRational(String),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

pub fn parse_rational(s: &str) -> Result<BigRational, KhkError> {
    let t = s.trim();
    let bad = || KhkError::BadRational(s.to_string());
    match t.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(t.parse().map_err(|_| bad())?)),
    }
}

/// Rational square root when it exists, taking the non-negative branch.
pub fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    (&n * &n == *q.numer() && &d * &d == *q.denom()).then(|| BigRational::new(n, d))
}

/// Formats a rational as a parenthesised literal for the expression parser.
pub(crate) fn lit(q: &BigRational) -> String {
    if q.denom().is_one() {
        format!("({})", q.numer())
    } else {
        format!("({}/{})", q.numer(), q.denom())
    }
}

/// Scales fractions with constant denominators by a common factor.
pub(crate) fn clear_common_denominator(parts: Vec<Fraction>) -> Result<Vec<HomogPoly>, PolyError> {
    let dens: Vec<BigInt> = parts
        .iter()
        .map(|f| {
            if f.den.is_constant() {
                Ok(f.den.leading_coeff().cloned().unwrap_or_else(BigInt::one))
            } else {
                Err(PolyError::NotDivisible)
            }
        })
        .collect::<Result<_, _>>()?;
    let l = dens.iter().fold(BigInt::one(), |acc, d| acc.lcm(d));
    Ok(parts.iter().zip(&dens).map(|(f, d)| f.num.scale(&(&l / d))).collect())
}

/// Integer representative of a rational matrix up to scale.
pub fn integer_matrix(m: &QMat) -> IMat {
    let den = m.iter().flatten().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: IMat = m.iter().map(|r| r.iter().map(|q| q.numer() * (&den / q.denom())).collect()).collect();
    canonical_scale(&ints)
}

/// Divides a matrix by the gcd of its entries and makes the first nonzero entry positive.
pub fn canonical_scale(m: &IMat) -> IMat {
    let mut g = m.iter().flatten().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        return m.clone();
    }
    if m.iter().flatten().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative()) {
        g = -g;
    }
    m.iter().map(|r| r.iter().map(|c| c / &g).collect()).collect()
}

/// Parameters of the Euler top with rational square roots of the `a_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerParams {
    pub a: [BigRational; 3],
    pub h: BigRational,
    pub alpha: [BigRational; 3],
}

impl EulerParams {
    pub fn new(a: [BigRational; 3], h: BigRational) -> Result<Self, KhkError> {
        if h.is_zero() {
            return Err(KhkError::ZeroStep);
        }
        let mut alpha: [BigRational; 3] = Default::default();
        for (i, ai) in a.iter().enumerate() {
            if !ai.is_positive() {
                return Err(KhkError::NonPositiveParameter(format!("a{}", i + 1)));
            }
            alpha[i] = rational_sqrt(ai).ok_or_else(|| KhkError::NonSquareParameter(format!("a{} = {ai}", i + 1)))?;
        }
        Ok(Self { a, h, alpha })
    }

    pub fn from_i64(a: [i64; 3], h: i64) -> Result<Self, KhkError> {
        let q = |v: i64| BigRational::from_integer(BigInt::from(v));
        Self::new([q(a[0]), q(a[1]), q(a[2])], q(h))
    }

    pub fn parse(a: &[String], h: &str) -> Result<Self, KhkError> {
        if a.len() != 3 {
            return Err(KhkError::BadRational(format!("expected three values, got {}", a.len())));
        }
        let parsed: Vec<BigRational> = a.iter().map(|s| parse_rational(s)).collect::<Result<_, _>>()?;
        Self::new([parsed[0].clone(), parsed[1].clone(), parsed[2].clone()], parse_rational(h)?)
    }

    /// The same parameters with `h` replaced by `-h`.
    pub fn reversed(&self) -> Self {
        Self { a: self.a.clone(), h: -self.h.clone(), alpha: self.alpha.clone() }
    }
}

/// Components of the Euler map for arbitrary rational `a` and `h`.
pub fn euler_components(a: &[BigRational; 3], h: &BigRational) -> Vec<HomogPoly> {
    let [a1, a2, a3] = a;
    let (a12, a13, a23) = (lit(&(a1 * a2)), lit(&(a1 * a3)), lit(&(a2 * a3)));
    let h2 = lit(&(h * h));
    let texts = [
        format!("-({a12}*x3^2 + {a13}*x2^2 - {a23}*x1^2)*{h2}*x1 - 4*{}*x2*x3*x4 - 4*x1*x4^2", lit(&(a1 * h))),
        format!("-({a12}*x3^2 - {a13}*x2^2 + {a23}*x1^2)*{h2}*x2 - 4*{}*x1*x3*x4 - 4*x2*x4^2", lit(&(a2 * h))),
        format!("({a12}*x3^2 - {a13}*x2^2 - {a23}*x1^2)*{h2}*x3 - 4*{}*x1*x2*x4 - 4*x3*x4^2", lit(&(a3 * h))),
        format!(
            "{}*x1*x2*x3 + ({a12}*x3^2 + {a13}*x2^2 + {a23}*x1^2)*{h2}*x4 - 4*x4^3",
            lit(&(a1 * a2 * a3 * h * h * h))
        ),
    ];
    let parts = texts.iter().map(|t| parse_fraction(t, 4).expect("well-formed template")).collect();
    clear_common_denominator(parts).expect("constant denominators")
}

/// The KHK Euler map with its inverse at `-h` declared.
pub fn build_euler(p: &EulerParams) -> Result<ProjMap, KhkError> {
    let fwd = ProjMap::new(euler_components(&p.a, &p.h))?;
    let bwd = ProjMap::new(euler_components(&p.a, &(-p.h.clone())))?;
    let label = format!("euler(a={},{},{};h={})", p.a[0], p.a[1], p.a[2], p.h);
    let bwd = bwd.with_inverse(fwd.clone());
    Ok(fwd.with_inverse(bwd).with_label(label))
}

fn linear_form(c: [BigRational; 4]) -> LinearForm {
    LinearForm::from_rationals(&c).expect("nonzero form")
}

/// The four linear forms whose squares multiply to the composition factor of the inverse after the map.
pub fn euler_kappa_forms(p: &EulerParams) -> Vec<LinearForm> {
    let [al1, al2, al3] = &p.alpha;
    let h = &p.h;
    let (c3, c2, c1) = (al1 * al2 * h, al1 * al3 * h, al2 * al3 * h);
    let two = BigRational::from_integer(BigInt::from(2));
    let signs: [[i8; 4]; 4] = [[-1, -1, 1, -1], [-1, 1, 1, 1], [1, -1, 1, 1], [1, 1, 1, -1]];
    signs
        .iter()
        .map(|s| {
            let f = |k: i8, v: &BigRational| if k > 0 { v.clone() } else { -v.clone() };
            linear_form([f(s[0], &c1), f(s[1], &c2), f(s[2], &c3), f(s[3], &two)])
        })
        .collect()
}

/// Forms for the opposite composition; they differ from the κ forms in the sign of `x4`.
pub fn euler_lambda_forms(p: &EulerParams) -> Vec<LinearForm> {
    euler_kappa_forms(p)
        .into_iter()
        .map(|k| {
            let mut c = k.coeffs().to_vec();
            c[3] = -c[3].clone();
            LinearForm::new(c).expect("nonzero form")
        })
        .collect()
}

/// The pairs `(s_i, s_i')` of the singularity pattern.
pub fn euler_singular_points(p: &EulerParams) -> Vec<(ProjPoint, ProjPoint)> {
    let [al1, al2, al3] = &p.alpha;
    let two = BigRational::from_integer(BigInt::from(2));
    let big = al1 * al2 * al3 * &p.h;
    let signs: [[i8; 4]; 4] = [[1, 1, -1, -1], [1, -1, -1, 1], [1, -1, 1, -1], [1, 1, 1, 1]];
    signs
        .iter()
        .map(|s| {
            let f = |k: i8, v: BigRational| if k > 0 { v } else { -v };
            let base = [f(s[0], &two * al1), f(s[1], &two * al2), f(s[2], &two * al3)];
            let mk = |last: BigRational| {
                let v = [base[0].clone(), base[1].clone(), base[2].clone(), last];
                ProjPoint::from_rationals(&v).expect("nonzero point")
            };
            (mk(f(s[3], big.clone())), mk(f(-s[3], big.clone())))
        })
        .collect()
}

/// The projectivity matrices of the decomposition, uncorrected, at step `h`.
pub fn ell_matrices(p: &EulerParams, h: &BigRational) -> (IMat, IMat) {
    let [al1, al2, al3] = &p.alpha;
    let two = BigRational::from_integer(BigInt::from(2));
    let (u, v, w) = (al2 * al3 * h, al1 * al3 * h, al1 * al2 * h);
    let n = |x: &BigRational| -x.clone();
    let l1: QMat = vec![
        vec![u.clone(), v.clone(), n(&w), n(&two)],
        vec![u.clone(), n(&v), n(&w), two.clone()],
        vec![u.clone(), n(&v), w.clone(), n(&two)],
        vec![u, v, w, two.clone()],
    ];
    let big = al1 * al2 * al3 * h;
    let (b1, b2, b3) = (&two * al1, &two * al2, &two * al3);
    let l2: QMat = vec![
        vec![b1.clone(), b1.clone(), b1.clone(), b1],
        vec![b2.clone(), n(&b2), n(&b2), b2],
        vec![n(&b3), n(&b3), b3.clone(), b3],
        vec![big.clone(), n(&big), big.clone(), n(&big)],
    ];
    (integer_matrix(&l1), integer_matrix(&l2))
}

/// Sign change `diag(1,-1,1,-1)` relating the uncorrected matrices to the corrected ones.
pub fn sign_twist() -> IMat {
    linalg::imat(&[&[1, 0, 0, 0], &[0, -1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, -1]])
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct DecompositionReport {
    /// `ℓ2 ∘ C3 ∘ ℓ1` with the uncorrected matrices equals the map.
    pub uncorrected_equals_map: bool,
    /// `ℓ2 ∘ C3 ∘ ℓ1` with the uncorrected matrices equals the inverse map.
    pub uncorrected_equals_inverse: bool,
    /// `ℓ1 ℓ2` with the uncorrected matrices is a multiple of `g0`.
    pub uncorrected_product_is_g0: bool,
    /// `L2 ∘ C3 ∘ L1` equals the map, with `L1 = s ℓ1(-h)`, `L2 = ℓ2(-h) s`.
    pub corrected_equals_map: bool,
    /// `L1 L2` is a multiple of `g0`.
    pub corrected_product_is_g0: bool,
    /// `L1 ∘ Φ ∘ L1⁻¹ = g0 ∘ C3`.
    pub conjugate_is_g0_c3: bool,
}

impl DecompositionReport {
    pub fn corrected_ok(&self) -> bool {
        self.corrected_equals_map && self.corrected_product_is_g0 && self.conjugate_is_g0_c3
    }
}

pub fn verify_euler_decomposition(p: &EulerParams) -> Result<DecompositionReport, KhkError> {
    let phi = build_euler(p)?;
    let phi_inv = phi.inverse().expect("declared").clone();
    let c3 = ProjMap::cremona(4);
    let chain = |l1: &IMat, l2: &IMat| -> Result<ProjMap, KhkError> {
        let m1 = ProjMap::from_matrix(l1)?;
        let m2 = ProjMap::from_matrix(l2)?;
        Ok(ProjMap::compose_all(&[m2, c3.clone(), m1])?)
    };
    let g0 = canonical_scale(&cubes::g0_matrix());
    let (l1, l2) = ell_matrices(p, &p.h);
    let uncorrected = chain(&l1, &l2)?;
    let uncorrected_product_is_g0 = canonical_scale(&linalg::mat_mul_i(&l1, &l2)) == g0;

    let s = sign_twist();
    let (m1, m2) = ell_matrices(p, &(-p.h.clone()));
    let big_l1 = linalg::mat_mul_i(&s, &m1);
    let big_l2 = linalg::mat_mul_i(&m2, &s);
    let corrected = chain(&big_l1, &big_l2)?;
    let corrected_product_is_g0 = canonical_scale(&linalg::mat_mul_i(&big_l1, &big_l2)) == g0;

    let l1_map = ProjMap::from_matrix(&big_l1)?;
    let l1_inv = l1_map.inverse().expect("declared").clone();
    let conj = ProjMap::compose_all(&[l1_map, phi.clone(), l1_inv])?;
    let g0c3 = ProjMap::compose_all(&[ProjMap::from_matrix(&cubes::g0_matrix())?, c3.clone()])?;

    Ok(DecompositionReport {
        uncorrected_equals_map: uncorrected == phi,
        uncorrected_equals_inverse: uncorrected == phi_inv,
        uncorrected_product_is_g0,
        corrected_equals_map: corrected == phi,
        corrected_product_is_g0,
        conjugate_is_g0_c3: conj == g0c3,
    })
}

/// The map `[x2x3 : x1x3 : x1x2 : x3x4]`, an involution up to the factor `x1x2x3`.
pub fn build_theta() -> ProjMap {
    let t = |e: [u32; 4]| HomogPoly::monomial(4, Monomial::from_exps(&e), 1);
    let comps = vec![t([0, 1, 1, 0]), t([1, 0, 1, 0]), t([1, 1, 0, 0]), t([0, 0, 1, 1])];
    let m = ProjMap::new(comps).expect("coprime monomials").with_label("theta");
    let inv = m.clone();
    m.with_inverse(inv)
}

/// Jacobian of a quadratic field in the first three variables.
fn jacobian(f: &[HomogPoly]) -> Vec<Vec<HomogPoly>> {
    f.iter().map(|fi| (0..3).map(|j| fi.partial_derivative(j)).collect()).collect()
}

fn det3(m: &[Vec<HomogPoly>]) -> HomogPoly {
    let t = |a: &HomogPoly, b: &HomogPoly, c: &HomogPoly| &(a * b) * c;
    let terms = [
        t(&m[0][0], &m[1][1], &m[2][2]),
        t(&m[0][1], &m[1][2], &m[2][0]),
        t(&m[0][2], &m[1][0], &m[2][1]),
        -&t(&m[0][2], &m[1][1], &m[2][0]),
        -&t(&m[0][0], &m[1][2], &m[2][1]),
        -&t(&m[0][1], &m[1][0], &m[2][2]),
    ];
    terms.iter().fold(HomogPoly::zero(4), |acc, x| acc.try_add(x).expect("cubic terms"))
}

fn adj3(m: &[Vec<HomogPoly>]) -> Vec<Vec<HomogPoly>> {
    let minor = |r: usize, c: usize| {
        let rows: Vec<usize> = (0..3).filter(|&i| i != r).collect();
        let cols: Vec<usize> = (0..3).filter(|&j| j != c).collect();
        (&m[rows[0]][cols[0]] * &m[rows[1]][cols[1]])
            .try_sub(&(&m[rows[0]][cols[1]] * &m[rows[1]][cols[0]]))
            .expect("quadratic minors")
    };
    (0..3)
        .map(|i| {
            (0..3)
                .map(|j| {
                    let c = minor(j, i);
                    if (i + j) % 2 == 1 {
                        -&c
                    } else {
                        c
                    }
                })
                .collect()
        })
        .collect()
}

/// Homogenised KHK map of the quadratic field `f / fd` with step `h`.
///
/// `f` holds integer quadratic forms in `x1, x2, x3` embedded in four variables.
/// With `M = 2 h_d f_d x4 I - h_n J(f)` the components are
/// `x_i det M + 2 h_n (adj M f)_i` and `x4 det M`, reduced by their gcd.
pub fn khk_map(f: &[HomogPoly], fd: &BigInt, h: &BigRational) -> Result<ProjMap, KhkError> {
    if h.is_zero() {
        return Err(KhkError::ZeroStep);
    }
    let (hn, hd) = (h.numer().clone(), h.denom().clone());
    let x4 = HomogPoly::var(4, 3);
    let diag = x4.scale(&(BigInt::from(2) * &hd * fd));
    let jac = jacobian(f);
    let m: Vec<Vec<HomogPoly>> = (0..3)
        .map(|i| {
            (0..3)
                .map(|j| {
                    let off = jac[i][j].scale(&(-hn.clone()));
                    if i == j {
                        diag.try_add(&off).expect("linear entries")
                    } else {
                        off
                    }
                })
                .collect()
        })
        .collect();
    let det = det3(&m);
    let adj = adj3(&m);
    let two_hn = BigInt::from(2) * &hn;
    let mut comps = Vec::with_capacity(4);
    for i in 0..3 {
        let af = (0..3).fold(HomogPoly::zero(4), |acc, k| acc.try_add(&(&adj[i][k] * &f[k])).expect("quartic"));
        let xi = HomogPoly::var(4, i);
        comps.push((&xi * &det).try_add(&af.scale(&two_hn))?);
    }
    comps.push(&x4 * &det);
    Ok(ProjMap::new(comps)?)
}

/// Euler map obtained from the generic KHK construction; an independent oracle for [`euler_components`].
pub fn euler_via_khk(a: &[BigRational; 3], h: &BigRational) -> Result<ProjMap, KhkError> {
    let fd = a.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ai: Vec<BigInt> = a.iter().map(|q| q.numer() * (&fd / q.denom())).collect();
    let mono = |e: [u32; 4], c: &BigInt| HomogPoly::monomial(4, Monomial::from_exps(&e), c.clone());
    let f = vec![mono([0, 1, 1, 0], &ai[0]), mono([1, 0, 1, 0], &ai[1]), mono([1, 1, 0, 0], &ai[2])];
    khk_map(&f, &fd, h)
}

/// Quadratic Nambu system with `A1 = I` and symmetric `A2` given by six entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NambuParams {
    /// `a1..a6` with `A2 = [[a1, a2/2, a3/2], [a2/2, a4, a5/2], [a3/2, a5/2, a6]]`.
    pub a: [BigRational; 6],
    pub h: BigRational,
}

impl NambuParams {
    pub fn a2(&self) -> QMat {
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let a = &self.a;
        vec![
            vec![a[0].clone(), &a[1] * &half, &a[2] * &half],
            vec![&a[1] * &half, a[3].clone(), &a[4] * &half],
            vec![&a[2] * &half, &a[4] * &half, a[5].clone()],
        ]
    }

    /// `H1 = |x|^2`, `H2 = xᵀ A2 x`, `H3 = xᵀ adj(A2) x`, as exact fractions.
    pub fn hamiltonians(&self) -> [Fraction; 3] {
        let quad = |m: &QMat| {
            let mut t = String::from("0*x1^2");
            for i in 0..3 {
                for j in 0..3 {
                    t.push_str(&format!(" + {}*x{}*x{}", lit(&m[i][j]), i + 1, j + 1));
                }
            }
            parse_fraction(&t, 4).expect("quadratic template")
        };
        let id: QMat = (0..3)
            .map(|i| (0..3).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
            .collect();
        let a2 = self.a2();
        [quad(&id), quad(&a2), quad(&adjugate_q(&a2))]
    }
}

fn adjugate_q(m: &QMat) -> QMat {
    let minor = |r: usize, c: usize| {
        let rows: Vec<usize> = (0..3).filter(|&i| i != r).collect();
        let cols: Vec<usize> = (0..3).filter(|&j| j != c).collect();
        &m[rows[0]][cols[0]] * &m[rows[1]][cols[1]] - &m[rows[0]][cols[1]] * &m[rows[1]][cols[0]]
    };
    (0..3)
        .map(|i| {
            (0..3)
                .map(|j| {
                    let c = minor(j, i);
                    if (i + j) % 2 == 1 {
                        -c
                    } else {
                        c
                    }
                })
                .collect()
        })
        .collect()
}

/// KHK map of `ẋ = ∇H1 × ∇H2`, inverse at `-h`.
pub fn build_nambu(p: &NambuParams) -> Result<ProjMap, KhkError> {
    if p.h.is_zero() {
        return Err(KhkError::ZeroStep);
    }
    // ∇H1 × ∇H2 = 4 x × (A2 x)
    let a2 = p.a2();
    let fd = a2.iter().flatten().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ai: Vec<Vec<BigInt>> = a2.iter().map(|r| r.iter().map(|q| q.numer() * (&fd / q.denom())).collect()).collect();
    let x: Vec<HomogPoly> = (0..3).map(|i| HomogPoly::var(4, i)).collect();
    let ax: Vec<HomogPoly> = (0..3)
        .map(|i| (0..3).fold(HomogPoly::zero(4), |acc, j| acc.try_add(&x[j].scale(&ai[i][j])).expect("linear")))
        .collect();
    let cross = |i: usize, j: usize| (&x[i] * &ax[j]).try_sub(&(&x[j] * &ax[i])).expect("quadratic");
    let four = BigInt::from(4);
    let f = vec![cross(1, 2).scale(&four), cross(2, 0).scale(&four), cross(0, 1).scale(&four)];
    let fwd = khk_map(&f, &fd, &p.h)?;
    if fwd.degree() != 3 {
        return Err(KhkError::DegenerateParameters(4 - fwd.degree()));
    }
    let bwd = khk_map(&f, &fd, &(-p.h.clone()))?;
    let bwd = bwd.with_inverse(fwd.clone());
    Ok(fwd.with_inverse(bwd).with_label("nambu"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::birmap::degree_sequence;
    use crate::polyring::parse_poly;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn sqrt_of_rationals() {
        assert_eq!(rational_sqrt(&BigRational::new(9.into(), 4.into())), Some(BigRational::new(3.into(), 2.into())));
        assert_eq!(rational_sqrt(&q(2)), None);
        assert!(matches!(EulerParams::from_i64([1, 2, 9], 1), Err(KhkError::NonSquareParameter(_))));
    }

    #[test]
    fn euler_matches_generic_khk() {
        let p = EulerParams::from_i64([1, 4, 9], 1).unwrap();
        let phi = build_euler(&p).unwrap();
        assert_eq!(phi.degree(), 3);
        assert_eq!(phi, euler_via_khk(&p.a, &p.h).unwrap());
        let odd = [BigRational::new(2.into(), 3.into()), q(5), BigRational::new((-7).into(), 2.into())];
        let h = BigRational::new(3.into(), 5.into());
        assert_eq!(ProjMap::new(euler_components(&odd, &h)).unwrap(), euler_via_khk(&odd, &h).unwrap());
    }

    #[test]
    fn euler_inverse_and_degrees() {
        let p = EulerParams::from_i64([1, 4, 9], 1).unwrap();
        let phi = build_euler(&p).unwrap();
        let c = ProjMap::compose(phi.inverse().unwrap(), &phi).unwrap();
        assert!(c.map.is_identity());
        assert_eq!(c.removed.degree(), Some(8));
        let s = degree_sequence(&phi, 6, 300);
        assert_eq!(s.values, vec![1, 3, 9, 19, 33, 51, 73]);
    }

    #[test]
    fn euler_singular_pairs() {
        let p = EulerParams::from_i64([1, 4, 9], 1).unwrap();
        let phi = build_euler(&p).unwrap();
        let pts = euler_singular_points(&p);
        assert_eq!(pts[0].0, ProjPoint::from_i64(&[2, 4, -6, -6]).unwrap());
        for (s, sp) in &pts {
            assert_eq!(&phi.apply_point(s).unwrap(), sp);
            assert!(phi.in_base_locus(sp));
        }
    }

    #[test]
    fn decomposition_identities() {
        for (a, h) in [([1, 4, 9], 1), ([1, 1, 1], 1), ([4, 9, 25], 3)] {
            let p = EulerParams::from_i64(a, h).unwrap();
            let r = verify_euler_decomposition(&p).unwrap();
            assert!(r.corrected_ok(), "{a:?}: {r:?}");
            assert!(r.uncorrected_equals_inverse);
            assert!(!r.uncorrected_equals_map);
        }
    }

    #[test]
    fn theta_map() {
        let t = build_theta();
        assert_eq!(t.degree(), 2);
        let c = ProjMap::compose(&t, &t).unwrap();
        assert!(c.map.is_identity());
        assert_eq!(c.removed, parse_poly("x1*x2*x3", 4).unwrap());
        let plane = ProjPoint::from_i64(&[3, 5, 0, 7]).unwrap();
        assert_eq!(t.apply_point(&plane).unwrap(), ProjPoint::from_i64(&[0, 0, 1, 0]).unwrap());
        let g0t = ProjMap::compose(&ProjMap::from_matrix(&cubes::g0_matrix()).unwrap(), &t).unwrap().map;
        assert_eq!(degree_sequence(&g0t, 7, 300).values, vec![1, 2, 4, 7, 12, 18, 25, 34]);
    }

    #[test]
    fn nambu_diagonal_is_euler() {
        let p = NambuParams { a: [q(1), q(0), q(0), q(2), q(0), q(5)], h: q(1) };
        let m = build_nambu(&p).unwrap();
        // 4 x × diag(1,2,5) x = (12 x2x3, -16 x1x3, 4 x1x2)
        let euler = ProjMap::new(euler_components(&[q(12), q(-16), q(4)], &q(1))).unwrap();
        assert_eq!(m, euler);
    }

    #[test]
    fn nambu_kappa_is_square() {
        let p = NambuParams { a: [q(1), q(1), q(0), q(2), q(1), q(3)], h: q(1) };
        let m = build_nambu(&p).unwrap();
        let c = ProjMap::compose(m.inverse().unwrap(), &m).unwrap();
        assert!(c.map.is_identity());
        assert_eq!(c.removed.degree(), Some(8));
        assert!(c.removed.normalize().sqrt_exact().is_some());
    }
}
