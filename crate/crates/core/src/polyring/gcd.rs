//! Multivariate gcd over the integers.
//!
//! Homogeneous inputs are stripped of integer and monomial content, then
//! dehomogenised at the last variable and handled in a recursive dense
//! representation. The main route is the heuristic gcd (evaluation at a large
//! integer, recursion, ξ-adic reconstruction, trial division); the fallback is
//! a primitive polynomial remainder sequence on the main variable.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};

use super::monomial::Monomial;
use super::HomogPoly;
use crate::modp;

/// Dense recursive polynomial: level 0 is an integer, level k a list of
/// level k-1 coefficients in increasing powers of the k-th variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Rec {
    Int(BigInt),
    Poly(Vec<Rec>),
}

use Rec::{Int, Poly};

fn zero(lvl: usize) -> Rec {
    if lvl == 0 {
        Int(BigInt::zero())
    } else {
        Poly(Vec::new())
    }
}

fn is_zero(a: &Rec) -> bool {
    match a {
        Int(c) => c.is_zero(),
        Poly(v) => v.is_empty(),
    }
}

fn trim(v: &mut Vec<Rec>) {
    while v.last().is_some_and(is_zero) {
        v.pop();
    }
}

fn coeffs(a: &Rec) -> &[Rec] {
    match a {
        Poly(v) => v,
        Int(_) => panic!("integer has no coefficient list"),
    }
}

fn deg(a: &Rec) -> usize {
    coeffs(a).len().saturating_sub(1)
}

fn lc(a: &Rec) -> &Rec {
    coeffs(a).last().expect("nonzero polynomial")
}

fn leading_int(a: &Rec) -> &BigInt {
    match a {
        Int(c) => c,
        Poly(v) => leading_int(v.last().expect("nonzero polynomial")),
    }
}

fn add(a: &Rec, b: &Rec) -> Rec {
    match (a, b) {
        (Int(x), Int(y)) => Int(x + y),
        (Poly(x), Poly(y)) => {
            let n = x.len().max(y.len());
            let mut out = Vec::with_capacity(n);
            for i in 0..n {
                match (x.get(i), y.get(i)) {
                    (Some(p), Some(q)) => out.push(add(p, q)),
                    (Some(p), None) => out.push(p.clone()),
                    (None, Some(q)) => out.push(q.clone()),
                    (None, None) => unreachable!(),
                }
            }
            trim(&mut out);
            Poly(out)
        }
        _ => panic!("level mismatch"),
    }
}

fn neg(a: &Rec) -> Rec {
    map_ints(a, &|c| -c)
}

fn sub(a: &Rec, b: &Rec) -> Rec {
    add(a, &neg(b))
}

fn mul(a: &Rec, b: &Rec) -> Rec {
    match (a, b) {
        (Int(x), Int(y)) => Int(x * y),
        (Poly(x), Poly(y)) => {
            if x.is_empty() || y.is_empty() {
                return Poly(Vec::new());
            }
            let lvl_zero = zero_like(&x[0]);
            let mut out = vec![lvl_zero; x.len() + y.len() - 1];
            for (i, p) in x.iter().enumerate() {
                if is_zero(p) {
                    continue;
                }
                for (j, q) in y.iter().enumerate() {
                    if is_zero(q) {
                        continue;
                    }
                    out[i + j] = add(&out[i + j], &mul(p, q));
                }
            }
            trim(&mut out);
            Poly(out)
        }
        _ => panic!("level mismatch"),
    }
}

fn zero_like(a: &Rec) -> Rec {
    match a {
        Int(_) => Int(BigInt::zero()),
        Poly(_) => Poly(Vec::new()),
    }
}

fn map_ints(a: &Rec, f: &dyn Fn(&BigInt) -> BigInt) -> Rec {
    match a {
        Int(c) => Int(f(c)),
        Poly(v) => {
            let mut out: Vec<Rec> = v.iter().map(|c| map_ints(c, f)).collect();
            trim(&mut out);
            Poly(out)
        }
    }
}

fn for_each_int(a: &Rec, f: &mut dyn FnMut(&BigInt)) {
    match a {
        Int(c) => f(c),
        Poly(v) => v.iter().for_each(|c| for_each_int(c, f)),
    }
}

fn max_norm(a: &Rec) -> BigInt {
    let mut m = BigInt::zero();
    for_each_int(a, &mut |c| {
        if c.abs() > m {
            m = c.abs();
        }
    });
    m
}

fn int_content(a: &Rec) -> BigInt {
    let mut g = BigInt::zero();
    for_each_int(a, &mut |c| {
        if !g.is_one() {
            g = g.gcd(c);
        }
    });
    g
}

fn div_int(a: &Rec, c: &BigInt) -> Rec {
    map_ints(a, &|x| x / c)
}

fn shift(a: &Rec, k: usize) -> Rec {
    match a {
        Poly(v) if !v.is_empty() => {
            let mut out = vec![zero_like(&v[0]); k];
            out.extend(v.iter().cloned());
            Poly(out)
        }
        _ => a.clone(),
    }
}

fn exact_div(a: &Rec, b: &Rec) -> Option<Rec> {
    match (a, b) {
        (Int(x), Int(y)) => {
            if y.is_zero() {
                return None;
            }
            let (q, r) = x.div_rem(y);
            r.is_zero().then_some(Int(q))
        }
        (Poly(_), Poly(bv)) => {
            if bv.is_empty() {
                return None;
            }
            if is_zero(a) {
                return Some(Poly(Vec::new()));
            }
            let db = bv.len() - 1;
            let mut r = a.clone();
            let mut q: Vec<Rec> = Vec::new();
            while !is_zero(&r) {
                let dr = deg(&r);
                if dr < db {
                    return None;
                }
                let t = exact_div(lc(&r), lc(b))?;
                if q.is_empty() {
                    q = vec![zero_like(&t); dr - db + 1];
                }
                let k = dr - db;
                let term = shift(&Poly(vec![t.clone()]), k);
                r = sub(&r, &mul(&term, b));
                q[k] = t;
            }
            trim(&mut q);
            Some(Poly(q))
        }
        _ => panic!("level mismatch"),
    }
}

fn eval_top(a: &Rec, xi: &BigInt) -> Rec {
    let v = coeffs(a);
    let mut acc = match v.first() {
        None => return Int(BigInt::zero()),
        Some(c) => zero_like(c),
    };
    for c in v.iter().rev() {
        acc = add(&map_ints(&acc, &|x| x * xi), c);
    }
    acc
}

fn smod(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

/// Rebuilds a polynomial in the main variable from its value at ξ.
fn interpolate(gamma: &Rec, xi: &BigInt) -> Rec {
    let mut out = Vec::new();
    let mut g = gamma.clone();
    let limit = (max_norm(gamma).bits() / xi.bits().max(1)) as usize + 3;
    while !is_zero(&g) {
        if out.len() > limit {
            break;
        }
        let digit = map_ints(&g, &|c| smod(c, xi));
        g = map_ints(&sub(&g, &digit), &|c| c / xi);
        out.push(digit);
    }
    trim(&mut out);
    Poly(out)
}

fn primitive_int(a: &Rec) -> Rec {
    let c = int_content(a);
    let a = if c.is_zero() || c.is_one() { a.clone() } else { div_int(a, &c) };
    if !is_zero(&a) && leading_int(&a).is_negative() {
        neg(&a)
    } else {
        a
    }
}

const HEU_BIT_LIMIT: u64 = 400_000;

/// Heuristic gcd of two nonzero polynomials, `None` when it gives up.
fn heu_full(a: &Rec, b: &Rec) -> Option<Rec> {
    if let (Int(x), Int(y)) = (a, b) {
        return Some(Int(x.gcd(y)));
    }
    let ca = int_content(a);
    let cb = int_content(b);
    let c = ca.gcd(&cb);
    let pa = div_int(a, &ca);
    let pb = div_int(b, &cb);
    let g = heu_primitive(&pa, &pb)?;
    Some(map_ints(&g, &|x| x * &c))
}

fn heu_primitive(a: &Rec, b: &Rec) -> Option<Rec> {
    let norm = max_norm(a).min(max_norm(b));
    let mut xi: BigInt = norm * 2 + 29;
    for _ in 0..6 {
        let growth = (deg(a).max(deg(b)) as u64 + 1) * xi.bits();
        if growth > HEU_BIT_LIMIT {
            return None;
        }
        let ea = eval_top(a, &xi);
        let eb = eval_top(b, &xi);
        if !is_zero(&ea) && !is_zero(&eb) {
            if let Some(gamma) = heu_full(&ea, &eb) {
                let g = primitive_int(&interpolate(&gamma, &xi));
                if !is_zero(&g) && exact_div(a, &g).is_some() && exact_div(b, &g).is_some() {
                    return Some(g);
                }
                for (orig, other, ev) in [(a, b, &ea), (b, a, &eb)] {
                    if let Some(cof) = exact_div(ev, &gamma) {
                        let cof = interpolate(&cof, &xi);
                        if is_zero(&cof) {
                            continue;
                        }
                        if let Some(g2) = exact_div(orig, &cof) {
                            let g2 = primitive_int(&g2);
                            if exact_div(other, &g2).is_some() {
                                return Some(g2);
                            }
                        }
                    }
                }
            }
        }
        xi = xi * 73794 / 27011;
    }
    None
}

/// Gcd of the coefficients in the main variable.
fn content_main(a: &Rec) -> Rec {
    let v = coeffs(a);
    let mut g = zero_like(&v[0]);
    for c in v {
        g = rec_gcd(&g, c);
        if is_unit(&g) {
            break;
        }
    }
    g
}

fn is_unit(a: &Rec) -> bool {
    match a {
        Int(c) => c.is_one(),
        Poly(v) => v.len() == 1 && is_unit(&v[0]),
    }
}

fn div_coeffs(a: &Rec, c: &Rec) -> Rec {
    let v: Vec<Rec> = coeffs(a)
        .iter()
        .map(|x| exact_div(x, c).expect("content divides every coefficient"))
        .collect();
    Poly(v)
}

fn pseudo_rem(a: &Rec, b: &Rec) -> Rec {
    let db = deg(b);
    let lb = lc(b).clone();
    let mut r = a.clone();
    while !is_zero(&r) && deg(&r) >= db {
        let k = deg(&r) - db;
        let lr = lc(&r).clone();
        let scaled = mul(&Poly(vec![lb.clone()]), &r);
        let term = shift(&Poly(vec![lr]), k);
        r = sub(&scaled, &mul(&term, b));
    }
    r
}

/// Primitive remainder sequence gcd.
fn prs_gcd(a: &Rec, b: &Rec) -> Rec {
    let ca = content_main(a);
    let cb = content_main(b);
    let c = rec_gcd(&ca, &cb);
    let mut x = div_coeffs(a, &ca);
    let mut y = div_coeffs(b, &cb);
    if deg(&x) < deg(&y) {
        std::mem::swap(&mut x, &mut y);
    }
    while !is_zero(&y) {
        if deg(&y) == 0 {
            x = constant_one_like(&x);
            break;
        }
        let r = pseudo_rem(&x, &y);
        x = y;
        y = if is_zero(&r) { r } else { div_coeffs(&r, &content_main(&r)) };
    }
    let g = mul(&Poly(vec![c]), &x);
    primitive_sign(&g)
}

fn constant_one_like(a: &Rec) -> Rec {
    match a {
        Int(_) => Int(BigInt::one()),
        Poly(v) => Poly(vec![constant_one_like(&v[0])]),
    }
}

fn primitive_sign(a: &Rec) -> Rec {
    if !is_zero(a) && leading_int(a).is_negative() {
        neg(a)
    } else {
        a.clone()
    }
}

/// Gcd with positive leading integer.
pub(crate) fn rec_gcd(a: &Rec, b: &Rec) -> Rec {
    if is_zero(a) {
        return primitive_sign(b);
    }
    if is_zero(b) {
        return primitive_sign(a);
    }
    if let (Int(x), Int(y)) = (a, b) {
        return Int(x.gcd(y));
    }
    match heu_full(a, b) {
        Some(g) => primitive_sign(&g),
        None => prs_gcd(a, b),
    }
}

/// Forces the primitive remainder sequence route (used to cross-check).
pub(crate) fn rec_gcd_prs(a: &Rec, b: &Rec) -> Rec {
    if is_zero(a) {
        return primitive_sign(b);
    }
    if is_zero(b) {
        return primitive_sign(a);
    }
    if let (Int(x), Int(y)) = (a, b) {
        return Int(x.gcd(y));
    }
    prs_gcd(a, b)
}

fn insert(r: &mut Rec, path: &[u32], c: &BigInt) {
    match r {
        Int(x) => *x += c,
        Poly(v) => {
            let (e, rest) = path.split_first().expect("path matches level");
            let e = *e as usize;
            while v.len() <= e {
                v.push(zero(rest.len()));
            }
            insert(&mut v[e], rest, c);
        }
    }
}

fn normalize_rec(r: &mut Rec) {
    if let Poly(v) = r {
        v.iter_mut().for_each(normalize_rec);
        trim(v);
    }
}

/// Dehomogenises at the last variable; level = nvars - 1, main variable x_{n-1}.
pub(crate) fn to_rec(p: &HomogPoly) -> Rec {
    let n = p.nvars();
    let lvl = n - 1;
    let mut r = zero(lvl);
    for (m, c) in p.terms() {
        let path: Vec<u32> = (0..lvl).rev().map(|i| m.exp(i)).collect();
        insert(&mut r, &path, c);
    }
    normalize_rec(&mut r);
    r
}

fn collect_terms(r: &Rec, prefix: &mut Vec<u32>, out: &mut Vec<(Vec<u32>, BigInt)>) {
    match r {
        Int(c) => {
            if !c.is_zero() {
                out.push((prefix.clone(), c.clone()));
            }
        }
        Poly(v) => {
            for (e, c) in v.iter().enumerate() {
                prefix.push(e as u32);
                collect_terms(c, prefix, out);
                prefix.pop();
            }
        }
    }
}

/// Inverse of [`to_rec`]: homogenises with the last variable.
pub(crate) fn from_rec(r: &Rec, nvars: usize) -> HomogPoly {
    let mut raw = Vec::new();
    collect_terms(r, &mut Vec::new(), &mut raw);
    let total = raw.iter().map(|(e, _)| e.iter().sum::<u32>()).max().unwrap_or(0);
    let terms = raw.into_iter().map(|(path, c)| {
        let mut exps = vec![0u32; nvars];
        for (k, e) in path.iter().enumerate() {
            exps[nvars - 2 - k] = *e;
        }
        exps[nvars - 1] = total - path.iter().sum::<u32>();
        (Monomial::from_exps(&exps), c)
    });
    HomogPoly::from_terms(nvars, terms).expect("homogenisation is homogeneous")
}

/// Restriction of `p` to the line `a + t b` modulo `prime`, as a polynomial in `t`.
fn restrict_to_line(p: &HomogPoly, a: &[u64], b: &[u64], prime: u64) -> Vec<u64> {
    let d = p.degree().unwrap_or(0) as usize;
    let n = p.nvars();
    let powers: Vec<Vec<Vec<u64>>> = (0..n)
        .map(|i| {
            let lin = vec![a[i] % prime, b[i] % prime];
            let mut pw = vec![vec![1u64]];
            for k in 1..=d {
                let next = modp::upoly::mul_poly(&pw[k - 1], &lin, prime);
                pw.push(next);
            }
            pw
        })
        .collect();
    let mut acc = vec![0u64; d + 1];
    for (m, c) in p.terms() {
        let mut t = vec![modp::reduce_bigint(c, prime)];
        for (i, pw) in powers.iter().enumerate() {
            let e = m.exp(i) as usize;
            if e > 0 {
                t = modp::upoly::mul_poly(&t, &pw[e], prime);
            }
        }
        for (k, v) in t.into_iter().enumerate() {
            acc[k] = modp::add(acc[k], v, prime);
        }
    }
    modp::upoly::trim(&mut acc);
    acc
}

/// Probabilistic coprimality test on a random line: `true` means coprime.
fn coprime_on_line(f: &HomogPoly, g: &HomogPoly) -> bool {
    let p = modp::P61;
    let mut rng = rand::rngs::StdRng::seed_from_u64(0x5eed_cafe);
    let n = f.nvars();
    let a: Vec<u64> = (0..n).map(|_| rng.gen_range(1..p)).collect();
    let b: Vec<u64> = (0..n).map(|_| rng.gen_range(1..p)).collect();
    let fr = restrict_to_line(f, &a, &b, p);
    let gr = restrict_to_line(g, &a, &b, p);
    let full = |r: &[u64], q: &HomogPoly| {
        modp::upoly::degree(r) == q.degree().map(|d| d as usize)
    };
    if !full(&fr, f) || !full(&gr, g) {
        return false;
    }
    modp::upoly::degree(&modp::upoly::gcd(&fr, &gr, p)) == Some(0)
}

/// Gcd of homogeneous polynomials with positive leading coefficient.
pub fn gcd(f: &HomogPoly, g: &HomogPoly) -> HomogPoly {
    gcd_with(f, g, false)
}

/// Same as [`gcd`] but always through the remainder-sequence route.
pub fn gcd_prs(f: &HomogPoly, g: &HomogPoly) -> HomogPoly {
    gcd_with(f, g, true)
}

fn gcd_with(f: &HomogPoly, g: &HomogPoly, force_prs: bool) -> HomogPoly {
    assert_eq!(f.nvars(), g.nvars(), "variable counts differ");
    if f.is_zero() {
        return g.normalize();
    }
    if g.is_zero() {
        return f.normalize();
    }
    let n = f.nvars();
    let c = f.content().gcd(&g.content());
    let mf = f.monomial_content();
    let mg = g.monomial_content();
    let m = mf.gcd(&mg);
    let mono = HomogPoly::monomial(n, m, c.clone());
    let strip = |p: &HomogPoly, mp: &Monomial| {
        p.divide_exact(&HomogPoly::monomial(n, *mp, p.content()))
            .expect("content divides")
            .normalize()
    };
    let fs = strip(f, &mf);
    let gs = strip(g, &mg);
    if fs.is_constant() || gs.is_constant() {
        return mono;
    }
    if fs == gs {
        return &mono * &fs;
    }
    if !force_prs && coprime_on_line(&fs, &gs) {
        return mono;
    }
    if n == 1 {
        return mono;
    }
    let (rf, rg) = (to_rec(&fs), to_rec(&gs));
    let r = if force_prs { rec_gcd_prs(&rf, &rg) } else { rec_gcd(&rf, &rg) };
    let h = from_rec(&r, n).normalize();
    &mono * &h
}

/// Gcd of a list of polynomials.
pub fn gcd_many<'a>(polys: impl IntoIterator<Item = &'a HomogPoly>) -> Option<HomogPoly> {
    let mut acc: Option<HomogPoly> = None;
    for p in polys {
        acc = Some(match acc {
            None => p.normalize(),
            Some(a) => gcd(&a, p),
        });
        if acc.as_ref().is_some_and(|a| a.is_constant() && !a.is_zero()) {
            let a = acc.unwrap();
            return Some(HomogPoly::one(a.nvars()));
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::parse_poly;

    fn p(s: &str) -> HomogPoly {
        parse_poly(s, 4).unwrap()
    }

    #[test]
    fn rec_roundtrip() {
        let f = p("3*x1^2*x3 - x2*x3*x4 + 7*x4^3 - x1*x2*x4");
        assert_eq!(from_rec(&to_rec(&f), 4), f);
    }

    #[test]
    fn gcd_examples() {
        let a = p("(x1+x2)^2*(x3-x4)");
        let b = p("(x1+x2)*(x3+x4)");
        assert_eq!(gcd(&a, &b), p("x1+x2"));
        assert_eq!(gcd_prs(&a, &b), p("x1+x2"));
        assert_eq!(gcd(&a, &HomogPoly::zero(4)), a.normalize());
        let c = p("-2*x1*x2");
        assert_eq!(gcd(&c, &HomogPoly::zero(4)), p("x1*x2"));
    }

    #[test]
    fn gcd_with_monomial_and_integer_content() {
        let a = p("6*x1^2*x4*(x2-x3)*(x1+x4)");
        let b = p("4*x1*x4^2*(x2-x3)*(x1-x4)");
        assert_eq!(gcd(&a, &b), p("2*x1*x4*(x2-x3)"));
    }

    #[test]
    fn gcd_nontrivial_factor_agrees_between_routes() {
        let common = p("x1^2 + 3*x2*x3 - x4^2 + x1*x4");
        let a = &common * &p("x1 - 2*x2 + x3");
        let b = &common * &p("x2^2 + x3^2 - 5*x1*x4");
        let g1 = gcd(&a, &b);
        let g2 = gcd_prs(&a, &b);
        assert_eq!(g1, common.normalize());
        assert_eq!(g2, common.normalize());
    }
}
