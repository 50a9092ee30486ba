//! Arithmetic modulo word-sized primes.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

/// The Mersenne prime 2^61 - 1.
pub const P61: u64 = (1 << 61) - 1;
/// A second 61-bit prime for independent trials.
pub const P61B: u64 = 2_305_843_009_213_693_921;

pub fn add(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

pub fn sub(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

pub fn mul(a: u64, b: u64, p: u64) -> u64 {
    ((u128::from(a) * u128::from(b)) % u128::from(p)) as u64
}

pub fn pow(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, base, p);
        }
        base = mul(base, base, p);
        e >>= 1;
    }
    acc
}

pub fn inv(a: u64, p: u64) -> u64 {
    assert!(!a.is_multiple_of(p), "inverse of zero");
    pow(a, p - 2, p)
}

pub fn reduce_bigint(c: &BigInt, p: u64) -> u64 {
    c.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits")
}

/// Dense univariate polynomials over F_p, coefficients from low to high degree.
pub mod upoly {
    use super::*;

    pub fn trim(a: &mut Vec<u64>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub fn degree(a: &[u64]) -> Option<usize> {
        a.iter().rposition(|&c| c != 0)
    }

    pub fn mul_poly(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u128; a.len() + b.len() - 1];
        let pp = u128::from(p);
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                let slot = &mut out[i + j];
                *slot = (*slot + u128::from(x) * u128::from(y)) % pp;
            }
        }
        out.into_iter().map(|v| v as u64).collect()
    }

    /// Remainder of `a` modulo `b` (b nonzero).
    pub fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let db = degree(b).expect("nonzero divisor");
        let inv_lc = inv(b[db], p);
        let mut r = a.to_vec();
        trim(&mut r);
        while let Some(dr) = degree(&r) {
            if dr < db {
                break;
            }
            let q = mul(r[dr], inv_lc, p);
            let shift = dr - db;
            for (k, &bc) in b.iter().enumerate().take(db + 1) {
                r[shift + k] = sub(r[shift + k], mul(q, bc, p), p);
            }
            trim(&mut r);
        }
        r
    }

    /// Quotient of exact division.
    pub fn div_exact(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let db = degree(b).expect("nonzero divisor");
        let inv_lc = inv(b[db], p);
        let mut r = a.to_vec();
        trim(&mut r);
        let Some(da) = degree(&r) else { return Vec::new() };
        if da < db {
            return Vec::new();
        }
        let mut q = vec![0u64; da - db + 1];
        while let Some(dr) = degree(&r) {
            if dr < db {
                break;
            }
            let c = mul(r[dr], inv_lc, p);
            let shift = dr - db;
            q[shift] = c;
            for (k, &bc) in b.iter().enumerate().take(db + 1) {
                r[shift + k] = sub(r[shift + k], mul(c, bc, p), p);
            }
            trim(&mut r);
        }
        q
    }

    /// Monic gcd.
    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        trim(&mut x);
        trim(&mut y);
        while !y.is_empty() {
            let r = rem(&x, &y, p);
            x = y;
            y = r;
        }
        if let Some(d) = degree(&x) {
            let il = inv(x[d], p);
            for c in x.iter_mut() {
                *c = mul(*c, il, p);
            }
        }
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_ops() {
        let p = P61;
        assert_eq!(mul(inv(12345, p), 12345, p), 1);
        assert_eq!(sub(3, 5, 7), 5);
        assert_eq!(reduce_bigint(&BigInt::from(-1), 7), 6);
    }

    #[test]
    fn poly_gcd() {
        let p = 101;
        // (t+1)(t+2) and (t+1)(t+3)
        let a = upoly::mul_poly(&[1, 1], &[2, 1], p);
        let b = upoly::mul_poly(&[1, 1], &[3, 1], p);
        assert_eq!(upoly::gcd(&a, &b, p), vec![1, 1]);
        assert_eq!(upoly::div_exact(&a, &[1, 1], p), vec![2, 1]);
    }
}
