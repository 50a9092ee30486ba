use std::fmt;
use std::ops::{Mul, Neg};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rustc_hash::FxHashMap;

use super::monomial::{Monomial, MAX_VARS};
use super::PolyError;

/// Sparse homogeneous polynomial with integer coefficients.
///
/// Terms are kept sorted in decreasing monomial order with no zero coefficients,
/// so structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HomogPoly {
    nvars: usize,
    terms: Vec<(Monomial, BigInt)>,
}

impl HomogPoly {
    pub fn zero(nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS, "at most {MAX_VARS} variables");
        Self { nvars, terms: Vec::new() }
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        Self::monomial(nvars, Monomial::one(), c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, 1)
    }

    /// The variable `x_{i+1}`.
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        Self::monomial(nvars, Monomial::var(i), 1)
    }

    pub fn monomial(nvars: usize, m: Monomial, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.push((m, c));
        }
        p
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms(
        nvars: usize,
        terms: impl IntoIterator<Item = (Monomial, BigInt)>,
    ) -> Result<Self, PolyError> {
        let mut map: FxHashMap<Monomial, BigInt> = FxHashMap::default();
        for (m, c) in terms {
            *map.entry(m).or_insert_with(BigInt::zero) += c;
        }
        let p = Self::from_map(nvars, map);
        p.check_homogeneous()?;
        Ok(p)
    }

    fn from_map(nvars: usize, map: FxHashMap<Monomial, BigInt>) -> Self {
        let mut terms: Vec<_> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        #[allow(clippy::unnecessary_sort_by)]
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Self { nvars, terms }
    }

    fn check_homogeneous(&self) -> Result<(), PolyError> {
        if let Some(d) = self.degree() {
            if let Some((m, _)) = self.terms.iter().find(|(m, _)| m.degree() != d) {
                return Err(PolyError::DegreeMismatch(d, m.degree()));
            }
        }
        Ok(())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Monomial, BigInt)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.first().map(|(m, _)| m.degree())
    }

    pub fn is_constant(&self) -> bool {
        self.degree().is_none_or(|d| d == 0)
    }

    pub fn leading_term(&self) -> Option<&(Monomial, BigInt)> {
        self.terms.first()
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms
            .binary_search_by(|(t, _)| m.cmp(t))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| BigInt::zero())
    }

    fn check_vars(&self, other: &Self) -> Result<(), PolyError> {
        if self.nvars != other.nvars {
            return Err(PolyError::VarCountMismatch(self.nvars, other.nvars));
        }
        Ok(())
    }

    fn check_degrees(&self, other: &Self) -> Result<(), PolyError> {
        self.check_vars(other)?;
        match (self.degree(), other.degree()) {
            (Some(a), Some(b)) if a != b => Err(PolyError::DegreeMismatch(a, b)),
            _ => Ok(()),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_degrees(other)?;
        Ok(self.merge(other, false))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_degrees(other)?;
        Ok(self.merge(other, true))
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        while i < a.len() || j < b.len() {
            let ord = match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) => y.0.cmp(&x.0),
                (Some(_), None) => std::cmp::Ordering::Less,
                _ => std::cmp::Ordering::Greater,
            };
            match ord {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Self { nvars: self.nvars, terms: out }
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_vars(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.nvars));
        }
        let (small, big) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        if small.len() == 1 {
            let (m, c) = &small.terms[0];
            let terms = big.terms.iter().map(|(n, d)| (m.mul(n), c * d)).collect();
            return Ok(Self { nvars: self.nvars, terms });
        }
        let mut map: FxHashMap<Monomial, BigInt> =
            FxHashMap::with_capacity_and_hasher(small.len() * big.len() / 2 + 1, Default::default());
        for (m, c) in &small.terms {
            for (n, d) in &big.terms {
                let prod = c * d;
                map.entry(m.mul(n))
                    .and_modify(|acc| *acc += &prod)
                    .or_insert(prod);
            }
        }
        Ok(Self::from_map(self.nvars, map))
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        let terms = self.terms.iter().map(|(m, d)| (*m, d * c)).collect();
        Self { nvars: self.nvars, terms }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        let terms = self.terms.iter().map(|(n, c)| (n.mul(m), c.clone())).collect();
        Self { nvars: self.nvars, terms }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one(self.nvars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Exact quotient `self / divisor`.
    pub fn divide_exact(&self, divisor: &Self) -> Result<Self, PolyError> {
        self.check_vars(divisor)?;
        let (lm, lc) = divisor.leading_term().ok_or(PolyError::DivisionByZero)?;
        if self.is_zero() {
            return Ok(Self::zero(self.nvars));
        }
        if divisor.len() == 1 {
            let mut terms = Vec::with_capacity(self.len());
            for (m, c) in &self.terms {
                if !lm.divides(m) {
                    return Err(PolyError::NotDivisible);
                }
                let (q, r) = c.div_rem(lc);
                if !r.is_zero() {
                    return Err(PolyError::NotDivisible);
                }
                terms.push((lm.quotient_of(m), q));
            }
            return Ok(Self { nvars: self.nvars, terms });
        }
        if self.degree() < divisor.degree() {
            return Err(PolyError::NotDivisible);
        }
        let mut rem: FxHashMap<Monomial, BigInt> = self.terms.iter().cloned().collect();
        let mut quotient = Vec::new();
        // The leading monomial of the remainder is tracked with a max-heap of candidates.
        let mut heap: std::collections::BinaryHeap<Monomial> = rem.keys().copied().collect();
        while let Some(m) = heap.pop() {
            let Some(c) = rem.remove(&m) else { continue };
            if c.is_zero() {
                continue;
            }
            while heap.peek() == Some(&m) {
                heap.pop();
            }
            if !lm.divides(&m) {
                return Err(PolyError::NotDivisible);
            }
            let (qc, r) = c.div_rem(lc);
            if !r.is_zero() {
                return Err(PolyError::NotDivisible);
            }
            let qm = lm.quotient_of(&m);
            for (dm, dc) in divisor.terms.iter().skip(1) {
                let key = dm.mul(&qm);
                let delta = &qc * dc;
                match rem.get_mut(&key) {
                    Some(v) => *v -= delta,
                    None => {
                        rem.insert(key, -delta);
                        heap.push(key);
                    }
                }
            }
            quotient.push((qm, qc));
        }
        Ok(Self { nvars: self.nvars, terms: quotient })
    }

    /// Greatest common divisor of the coefficients (non-negative).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn normalize(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.content();
        if self.leading_coeff().is_some_and(|c| c.is_negative()) {
            g = -g;
        }
        if g.is_one() {
            return self.clone();
        }
        let terms = self.terms.iter().map(|(m, c)| (*m, c / &g)).collect();
        Self { nvars: self.nvars, terms }
    }

    /// Divides every coefficient by `c`, which must divide all of them.
    pub fn div_scalar_exact(&self, c: &BigInt) -> Result<Self, PolyError> {
        if c.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let mut terms = Vec::with_capacity(self.len());
        for (m, d) in &self.terms {
            let (q, r) = d.div_rem(c);
            if !r.is_zero() {
                return Err(PolyError::NotDivisible);
            }
            terms.push((*m, q));
        }
        Ok(Self { nvars: self.nvars, terms })
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.iter();
        match it.next() {
            None => Monomial::one(),
            Some((m, _)) => it.fold(*m, |acc, (n, _)| acc.gcd(n)),
        }
    }

    pub fn eval(&self, point: &[BigInt]) -> BigInt {
        assert_eq!(point.len(), self.nvars);
        let maxe = self
            .terms
            .iter()
            .flat_map(|(m, _)| (0..self.nvars).map(move |i| m.exp(i)))
            .max()
            .unwrap_or(0) as usize;
        let powers: Vec<Vec<BigInt>> = point
            .iter()
            .map(|x| {
                let mut v = Vec::with_capacity(maxe + 1);
                v.push(BigInt::one());
                for k in 1..=maxe {
                    let next = &v[k - 1] * x;
                    v.push(next);
                }
                v
            })
            .collect();
        let mut acc = BigInt::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, pw) in powers.iter().enumerate() {
                let e = m.exp(i) as usize;
                if e > 0 {
                    t *= &pw[e];
                }
            }
            acc += t;
        }
        acc
    }

    pub fn eval_rational(&self, point: &[BigRational]) -> BigRational {
        // Homogeneity lets us clear denominators first.
        let den = point.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let ints: Vec<BigInt> = point.iter().map(|q| q.numer() * (&den / q.denom())).collect();
        let d = self.degree().unwrap_or(0);
        BigRational::new(self.eval(&ints), num_traits::pow(den, d as usize))
    }

    /// Evaluates modulo a prime `p < 2^62`.
    pub fn eval_mod(&self, point: &[u64], p: u64) -> u64 {
        let mut acc: u64 = 0;
        for (m, c) in &self.terms {
            let mut t = crate::modp::reduce_bigint(c, p);
            for (i, &x) in point.iter().enumerate() {
                t = crate::modp::mul(t, crate::modp::pow(x, u64::from(m.exp(i)), p), p);
            }
            acc = crate::modp::add(acc, t, p);
        }
        acc
    }

    /// Substitutes `subs[i]` for `x_{i+1}`. All substitutes must share a degree.
    pub fn substitute(&self, subs: &[HomogPoly]) -> HomogPoly {
        assert_eq!(subs.len(), self.nvars, "one substitute per variable");
        let target_vars = subs.first().map_or(self.nvars, |s| s.nvars);
        if self.is_zero() {
            return HomogPoly::zero(target_vars);
        }
        let mut cache = PowerCache::new(subs);
        let terms: Vec<(Monomial, BigInt)> = self.terms.clone();
        substitute_rec(&terms, 0, &mut cache, target_vars)
    }

    pub fn partial_derivative(&self, i: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exp(i) > 0)
            .map(|(m, c)| (m.with_exp(i, m.exp(i) - 1), c * BigInt::from(m.exp(i))));
        Self::from_terms(self.nvars, terms).expect("derivative of homogeneous polynomial")
    }

    /// Renames variables: `x_i` becomes `x_{perm[i]}`.
    pub fn permute_vars(&self, perm: &[usize]) -> Self {
        let terms = self.terms.iter().map(|(m, c)| (m.permuted(perm), c.clone()));
        Self::from_terms(self.nvars, terms).expect("permutation keeps homogeneity")
    }

    /// Integer square root when `self` is a perfect square.
    pub fn sqrt_exact(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(self.clone());
        }
        let (lm, lc) = self.leading_term()?;
        if lc.is_negative() {
            return None;
        }
        let mut half = [0u32; MAX_VARS];
        for (i, slot) in half.iter_mut().enumerate().take(self.nvars) {
            let e = lm.exp(i);
            if e % 2 == 1 {
                return None;
            }
            *slot = e / 2;
        }
        let r = lc.sqrt();
        if &(&r * &r) != lc {
            return None;
        }
        let lead = Self::monomial(self.nvars, Monomial::from_exps(&half[..self.nvars]), r);
        let two_lead = lead.scale(&BigInt::from(2));
        let mut root = lead;
        let mut rem = self.try_sub(&(&root * &root)).ok()?;
        let mut steps = 0usize;
        while !rem.is_zero() {
            steps += 1;
            if steps > self.len() + 1 {
                return None;
            }
            let (m, c) = rem.leading_term()?.clone();
            let (tm, tc) = two_lead.leading_term()?;
            if !tm.divides(&m) || !(&c % tc).is_zero() {
                return None;
            }
            let t = Self::monomial(self.nvars, tm.quotient_of(&m), &c / tc);
            root = root.try_add(&t).ok()?;
            rem = self.try_sub(&(&root * &root)).ok()?;
        }
        Some(root)
    }
}

struct PowerCache<'a> {
    subs: &'a [HomogPoly],
    powers: Vec<Vec<HomogPoly>>,
}

impl<'a> PowerCache<'a> {
    fn new(subs: &'a [HomogPoly]) -> Self {
        let powers = subs.iter().map(|s| vec![HomogPoly::one(s.nvars)]).collect();
        Self { subs, powers }
    }

    fn get(&mut self, i: usize, k: u32) -> &HomogPoly {
        let k = k as usize;
        while self.powers[i].len() <= k {
            let next = &self.powers[i][self.powers[i].len() - 1] * &self.subs[i];
            self.powers[i].push(next);
        }
        &self.powers[i][k]
    }
}

/// Horner-style substitution: groups terms by the exponent of variable `var`.
fn substitute_rec(
    terms: &[(Monomial, BigInt)],
    var: usize,
    cache: &mut PowerCache<'_>,
    nvars: usize,
) -> HomogPoly {
    let last = cache.subs.len() - 1;
    if var == last {
        let mut acc: Option<HomogPoly> = None;
        for (m, c) in terms {
            let t = cache.get(var, m.exp(var)).scale(c);
            acc = Some(match acc {
                None => t,
                Some(a) => a.merge(&t, false),
            });
        }
        return acc.unwrap_or_else(|| HomogPoly::zero(nvars));
    }
    let mut groups: std::collections::BTreeMap<u32, Vec<(Monomial, BigInt)>> = Default::default();
    for (m, c) in terms {
        groups
            .entry(m.exp(var))
            .or_default()
            .push((m.with_exp(var, 0), c.clone()));
    }
    let mut acc: Option<HomogPoly> = None;
    for (k, group) in groups {
        let inner = substitute_rec(&group, var + 1, cache, nvars);
        let t = if k == 0 { inner } else { &inner * cache.get(var, k) };
        acc = Some(match acc {
            None => t,
            Some(a) => a.merge(&t, false),
        });
    }
    acc.unwrap_or_else(|| HomogPoly::zero(nvars))
}

impl Mul for &HomogPoly {
    type Output = HomogPoly;
    fn mul(self, rhs: &HomogPoly) -> HomogPoly {
        self.try_mul(rhs).expect("variable counts agree")
    }
}

impl Neg for &HomogPoly {
    type Output = HomogPoly;
    fn neg(self) -> HomogPoly {
        let terms = self.terms.iter().map(|(m, c)| (*m, -c)).collect();
        HomogPoly { nvars: self.nvars, terms }
    }
}

impl fmt::Display for HomogPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let is_one = m.degree() == 0;
            if is_one {
                write!(f, "{a}")?;
            } else {
                if !a.is_one() {
                    write!(f, "{a}*")?;
                }
                m.fmt_with(self.nvars, f)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for HomogPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HomogPoly({self})")
    }
}

impl serde::Serialize for HomogPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}
