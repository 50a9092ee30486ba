//! Univariate integer polynomials, real root isolation and dominant roots.
//!
//! Polynomials are coefficient vectors from the constant term upwards.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

pub type ZPoly = Vec<BigInt>;
pub type QPoly = Vec<BigRational>;

pub fn zpoly(coeffs: &[i64]) -> ZPoly {
    coeffs.iter().map(|&c| BigInt::from(c)).collect()
}

pub fn trim_z(p: &mut ZPoly) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn trim_q(p: &mut QPoly) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

pub fn degree(p: &[BigInt]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub fn to_q(p: &[BigInt]) -> QPoly {
    p.iter().map(|c| BigRational::from_integer(c.clone())).collect()
}

/// Scales a rational polynomial to a primitive integer polynomial with positive leading coefficient.
pub fn to_primitive_z(p: &[BigRational]) -> ZPoly {
    let den = p.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let mut z: ZPoly = p.iter().map(|q| q.numer() * (&den / q.denom())).collect();
    trim_z(&mut z);
    primitive(&z)
}

pub fn primitive(p: &[BigInt]) -> ZPoly {
    let mut g = p.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        return Vec::new();
    }
    if p.iter().rev().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative()) {
        g = -g;
    }
    let mut out: ZPoly = p.iter().map(|c| c / &g).collect();
    trim_z(&mut out);
    out
}

pub fn mul_z(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim_z(&mut out);
    out
}

fn mul_q(a: &[BigRational], b: &[BigRational]) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim_q(&mut out);
    out
}

/// Quotient and remainder over the rationals.
pub fn divmod_q(a: &[BigRational], b: &[BigRational]) -> (QPoly, QPoly) {
    let mut b = b.to_vec();
    trim_q(&mut b);
    let db = b.len().checked_sub(1).expect("division by zero polynomial");
    let mut r = a.to_vec();
    trim_q(&mut r);
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    while r.len() > db && !r.is_empty() {
        let k = r.len() - 1 - db;
        let c = r.last().expect("nonempty") / &b[db];
        for (i, bc) in b.iter().enumerate() {
            r[k + i] -= &c * bc;
        }
        q[k] = c;
        trim_q(&mut r);
    }
    trim_q(&mut q);
    (q, r)
}

/// Exact quotient over the integers, `None` when `b` does not divide `a`.
pub fn div_exact_z(a: &[BigInt], b: &[BigInt]) -> Option<ZPoly> {
    let (q, r) = divmod_q(&to_q(a), &to_q(b));
    if !r.is_empty() || q.iter().any(|c| !c.denom().is_one()) {
        return None;
    }
    Some(q.into_iter().map(|c| c.to_integer()).collect())
}

pub fn gcd_q(a: &[BigRational], b: &[BigRational]) -> QPoly {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim_q(&mut x);
    trim_q(&mut y);
    while !y.is_empty() {
        let (_, r) = divmod_q(&x, &y);
        x = y;
        y = r;
    }
    if let Some(l) = x.last().cloned() {
        x.iter_mut().for_each(|c| *c = &*c / &l);
    }
    x
}

pub fn derivative_q(p: &[BigRational]) -> QPoly {
    let mut out: QPoly = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
        .collect();
    trim_q(&mut out);
    out
}

/// Product of the distinct irreducible factors, as a primitive integer polynomial.
pub fn squarefree(p: &[BigInt]) -> ZPoly {
    let q = to_q(p);
    let g = gcd_q(&q, &derivative_q(&q));
    let (sf, _) = divmod_q(&q, &g);
    to_primitive_z(&sf)
}

pub fn eval_q(p: &[BigRational], x: &BigRational) -> BigRational {
    p.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
}

pub fn eval_f64(p: &[BigInt], x: f64) -> f64 {
    p.iter()
        .rev()
        .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
}

/// The n-th cyclotomic polynomial.
pub fn cyclotomic(n: u32) -> ZPoly {
    assert!(n >= 1);
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = -BigInt::one();
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            num = div_exact_z(&num, &cyclotomic(d)).expect("cyclotomic factor divides");
        }
    }
    num
}

fn euler_phi(n: u32) -> u32 {
    (1..=n).filter(|k| k.gcd(&n) == 1).count() as u32
}

/// Removes every cyclotomic factor; returns the rest and the removed indices.
pub fn strip_cyclotomic(p: &[BigInt]) -> (ZPoly, Vec<u32>) {
    let mut rest = p.to_vec();
    trim_z(&mut rest);
    let mut removed = Vec::new();
    let deg = degree(&rest).unwrap_or(0) as u32;
    let mut n = 1;
    // phi(n) >= sqrt(n/2), so indices beyond 2 deg^2 cannot contribute.
    while n <= 2 * deg * deg + 2 {
        if euler_phi(n) <= deg {
            let c = cyclotomic(n);
            while degree(&rest).unwrap_or(0) >= degree(&c).unwrap_or(0) {
                match div_exact_z(&rest, &c) {
                    Some(q) => {
                        rest = q;
                        removed.push(n);
                    }
                    None => break,
                }
            }
        }
        n += 1;
    }
    (primitive(&rest), removed)
}

fn sturm_chain(p: &[BigRational]) -> Vec<QPoly> {
    let mut chain = vec![p.to_vec(), derivative_q(p)];
    loop {
        let n = chain.len();
        if chain[n - 1].is_empty() {
            chain.pop();
            break;
        }
        let (_, r) = divmod_q(&chain[n - 2], &chain[n - 1]);
        if r.is_empty() {
            break;
        }
        chain.push(r.into_iter().map(|c| -c).collect());
    }
    chain
}

fn sign_changes(chain: &[QPoly], x: &BigRational) -> usize {
    let signs: Vec<i8> = chain
        .iter()
        .map(|q| {
            let v = eval_q(q, x);
            if v.is_positive() {
                1
            } else if v.is_negative() {
                -1
            } else {
                0
            }
        })
        .filter(|&s| s != 0)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Number of distinct real roots in the half-open interval (lo, hi].
pub fn count_roots(p: &[BigInt], lo: &BigRational, hi: &BigRational) -> usize {
    let sf = to_q(&squarefree(p));
    let chain = sturm_chain(&sf);
    sign_changes(&chain, lo).saturating_sub(sign_changes(&chain, hi))
}

fn cauchy_bound(p: &[BigInt]) -> BigRational {
    let d = degree(p).expect("nonzero polynomial");
    let lead = p[d].abs();
    let m = p[..d].iter().map(|c| c.abs()).max().unwrap_or_else(BigInt::zero);
    BigRational::one() + BigRational::new(m, lead)
}

/// Real algebraic number given by a polynomial and an isolating interval.
#[derive(Clone, Debug, Serialize)]
pub struct AlgebraicReal {
    pub min_poly: Vec<String>,
    #[serde(skip)]
    pub poly: ZPoly,
    #[serde(serialize_with = "ser_rat")]
    pub lo: BigRational,
    #[serde(serialize_with = "ser_rat")]
    pub hi: BigRational,
}

fn ser_rat<S: serde::Serializer>(q: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

impl AlgebraicReal {
    pub fn approx(&self) -> f64 {
        let mid = (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2));
        rat_to_f64(&mid)
    }
}

pub fn rat_to_f64(q: &BigRational) -> f64 {
    // Scale to keep both parts in range.
    let n = q.numer();
    let d = q.denom();
    let shift = (n.bits().max(d.bits()) as i64 - 60).max(0) as usize;
    let nf = (n >> shift).to_f64().unwrap_or(f64::NAN);
    let df = (d >> shift).to_f64().unwrap_or(f64::NAN);
    nf / df
}

/// Largest real root of `p` above `floor`, isolated to the requested width.
pub fn largest_real_root(p: &[BigInt], floor: &BigRational, width: &BigRational) -> Option<(BigRational, BigRational)> {
    let mut hi = cauchy_bound(p);
    let mut lo = floor.clone();
    if count_roots(p, &lo, &hi) == 0 {
        return None;
    }
    let two = BigRational::from_integer(BigInt::from(2));
    while &(&hi - &lo) > width {
        let mid = (&lo + &hi) / &two;
        if count_roots(p, &mid, &hi) >= 1 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some((lo, hi))
}

/// Complex roots by the Aberth iteration.
pub fn complex_roots(p: &[BigInt]) -> Vec<Complex64> {
    let d = degree(p).unwrap_or(0);
    if d == 0 {
        return Vec::new();
    }
    let lead = p[d].to_f64().unwrap_or(1.0);
    let c: Vec<f64> = p[..=d].iter().map(|x| x.to_f64().unwrap_or(0.0) / lead).collect();
    let radius = 1.0 + c[..d].iter().map(|x| x.abs()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| Complex64::from_polar(radius * 0.5, 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / d as f64))
        .collect();
    let eval = |x: Complex64| -> (Complex64, Complex64) {
        let mut v = Complex64::new(0.0, 0.0);
        let mut dv = Complex64::new(0.0, 0.0);
        for coef in c.iter().rev() {
            dv = dv * x + v;
            v = v * x + coef;
        }
        (v, dv)
    };
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..d {
            let (v, dv) = eval(z[i]);
            if v.norm() == 0.0 {
                continue;
            }
            let ratio = v / dv;
            let s: Complex64 = (0..d).filter(|&j| j != i).map(|j| 1.0 / (z[i] - z[j])).sum();
            let w = ratio / (1.0 - ratio * s);
            z[i] -= w;
            moved = moved.max(w.norm());
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

/// Minimal polynomial of the root of `p` lying in `[lo, hi]`.
///
/// Candidate factors are products of numerical roots containing the isolated
/// root; the first candidate with integer coefficients that divides `p`
/// exactly and changes sign on the interval is returned.
pub fn minimal_polynomial(p: &[BigInt], lo: &BigRational, hi: &BigRational) -> ZPoly {
    let sf = squarefree(p);
    let d = degree(&sf).unwrap_or(0);
    if d <= 1 {
        return sf;
    }
    let roots = complex_roots(&sf);
    let target = (rat_to_f64(lo) + rat_to_f64(hi)) / 2.0;
    let (ti, _) = roots
        .iter()
        .enumerate()
        .map(|(i, r)| (i, (r - Complex64::new(target, 0.0)).norm()))
        .fold((0, f64::INFINITY), |a, b| if b.1 < a.1 { b } else { a });
    let others: Vec<usize> = (0..d).filter(|&i| i != ti).collect();
    if d > 16 {
        return sf;
    }
    let sign_change = |q: &[BigInt]| {
        let a = eval_q(&to_q(q), lo);
        let b = eval_q(&to_q(q), hi);
        a.is_zero() || b.is_zero() || (a.is_positive() != b.is_positive())
    };
    for size in 0..others.len() {
        for mask in 0u32..(1u32 << others.len()) {
            if mask.count_ones() as usize != size {
                continue;
            }
            let mut prod = vec![Complex64::new(1.0, 0.0)];
            let mut chosen = vec![roots[ti]];
            chosen.extend(others.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &i)| roots[i]));
            for r in &chosen {
                let mut next = vec![Complex64::new(0.0, 0.0); prod.len() + 1];
                for (k, c) in prod.iter().enumerate() {
                    next[k + 1] += c;
                    next[k] -= c * r;
                }
                prod = next;
            }
            if prod.iter().any(|c| c.im.abs() > 1e-6 || (c.re - c.re.round()).abs() > 1e-6) {
                continue;
            }
            let cand: ZPoly = prod.iter().map(|c| BigInt::from(c.re.round() as i64)).collect();
            if div_exact_z(&sf, &cand).is_some() && sign_change(&cand) {
                return primitive(&cand);
            }
        }
    }
    sf
}

/// Exponential growth rate read off a characteristic polynomial.
#[derive(Clone, Debug, Serialize)]
pub struct Entropy {
    /// Natural logarithm of the spectral radius.
    pub value: f64,
    pub zero: bool,
    pub dominant_root: Option<AlgebraicReal>,
    pub cyclotomic_factors: Vec<u32>,
}

/// Entropy from a characteristic polynomial whose spectral radius is a real
/// eigenvalue (the case for the linear actions considered here).
pub fn entropy_from_charpoly(p: &[BigInt]) -> Entropy {
    let (rest, removed) = strip_cyclotomic(p);
    if degree(&rest).unwrap_or(0) == 0 {
        return Entropy { value: 0.0, zero: true, dominant_root: None, cyclotomic_factors: removed };
    }
    let width = BigRational::new(BigInt::one(), BigInt::from(100_000_000u64));
    let floor = BigRational::one();
    match largest_real_root(&rest, &floor, &width) {
        None => Entropy { value: 0.0, zero: true, dominant_root: None, cyclotomic_factors: removed },
        Some((lo, hi)) => {
            let mp = minimal_polynomial(&rest, &lo, &hi);
            let root = AlgebraicReal {
                min_poly: mp.iter().map(|c| c.to_string()).collect(),
                poly: mp,
                lo,
                hi,
            };
            Entropy { value: root.approx().ln(), zero: false, dominant_root: Some(root), cyclotomic_factors: removed }
        }
    }
}

pub fn format_zpoly(p: &[BigInt], var: &str) -> String {
    let mut parts = Vec::new();
    for (i, c) in p.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        let coef = if mono.is_empty() {
            c.abs().to_string()
        } else if c.abs().is_one() {
            String::new()
        } else {
            format!("{}*", c.abs())
        };
        let sign = if c.is_negative() { "-" } else { "+" };
        parts.push((sign, format!("{coef}{mono}")));
    }
    let mut s = String::new();
    for (k, (sign, t)) in parts.iter().enumerate() {
        if k == 0 {
            if *sign == "-" {
                s.push('-');
            }
        } else {
            s.push_str(&format!(" {sign} "));
        }
        s.push_str(t);
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

pub fn mul_q_pub(a: &[BigRational], b: &[BigRational]) -> QPoly {
    mul_q(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic(1), zpoly(&[-1, 1]));
        assert_eq!(cyclotomic(6), zpoly(&[1, -1, 1]));
        assert_eq!(cyclotomic(12), zpoly(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn strips_cyclotomic_part() {
        // (z^2-3z+1)(z-1)(z+1)
        let p = mul_z(&zpoly(&[1, -3, 1]), &zpoly(&[-1, 0, 1]));
        let (rest, removed) = strip_cyclotomic(&p);
        assert_eq!(rest, zpoly(&[1, -3, 1]));
        assert_eq!(removed, vec![1, 2]);
    }

    #[test]
    fn sturm_counts() {
        let p = zpoly(&[1, -3, 1]);
        assert_eq!(count_roots(&p, &r(0, 1), &r(1, 1)), 1);
        assert_eq!(count_roots(&p, &r(2, 1), &r(3, 1)), 1);
        assert_eq!(count_roots(&p, &r(3, 1), &r(10, 1)), 0);
    }

    #[test]
    fn golden_entropy() {
        let p = mul_z(&zpoly(&[1, -3, 1]), &zpoly(&[-1, 0, 1]));
        let e = entropy_from_charpoly(&p);
        assert!(!e.zero);
        assert!((e.value - 0.9624236501192069).abs() < 1e-7);
        let root = e.dominant_root.unwrap();
        assert_eq!(root.poly, zpoly(&[1, -3, 1]));
        assert!(&root.hi - &root.lo <= r(1, 100_000_000));
    }

    #[test]
    fn minimal_polynomial_from_reducible() {
        // (z^2-2)(z^3-z-1): the root sqrt(2) has minimal polynomial z^2-2
        let p = mul_z(&zpoly(&[-2, 0, 1]), &zpoly(&[-1, -1, 0, 1]));
        let (lo, hi) = largest_real_root(&p, &r(1, 1), &r(1, 1_000_000)).unwrap();
        assert_eq!(minimal_polynomial(&p, &lo, &hi), zpoly(&[-2, 0, 1]));
    }

    #[test]
    fn cyclotomic_only_has_zero_entropy() {
        let p = mul_z(&cyclotomic(3), &mul_z(&cyclotomic(4), &cyclotomic(1)));
        assert!(entropy_from_charpoly(&p).zero);
    }
}
