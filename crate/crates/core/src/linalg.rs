//! Dense exact linear algebra over the rationals and the integers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type QMat = Vec<Vec<BigRational>>;
pub type IMat = Vec<Vec<BigInt>>;

pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn to_qmat(m: &[Vec<BigInt>]) -> QMat {
    m.iter().map(|r| r.iter().map(|c| BigRational::from_integer(c.clone())).collect()).collect()
}

pub fn imat(rows: &[&[i64]]) -> IMat {
    rows.iter().map(|r| r.iter().map(|&c| BigInt::from(c)).collect()).collect()
}

pub fn identity_i(n: usize) -> IMat {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

pub fn mat_mul_i(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> IMat {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    let k = b.len();
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..k).fold(BigInt::zero(), |acc, t| acc + &a[i][t] * &b[t][j]))
                .collect()
        })
        .collect()
}

pub fn mat_vec_i(a: &[Vec<BigInt>], v: &[BigInt]) -> Vec<BigInt> {
    a.iter().map(|row| row.iter().zip(v).fold(BigInt::zero(), |acc, (x, y)| acc + x * y)).collect()
}

pub fn mat_pow_i(a: &[Vec<BigInt>], mut e: u64) -> IMat {
    let mut base = a.to_vec();
    let mut acc = identity_i(a.len());
    while e > 0 {
        if e & 1 == 1 {
            acc = mat_mul_i(&acc, &base);
        }
        e >>= 1;
        if e > 0 {
            base = mat_mul_i(&base, &base);
        }
    }
    acc
}

/// Row echelon form in place; returns the pivot columns.
pub fn row_reduce(m: &mut QMat) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let pivot_row = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(pivot_row.iter()) {
                    if !y.is_zero() {
                        *x = &*x - &f * y;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &[Vec<BigRational>]) -> usize {
    let mut w = m.to_vec();
    row_reduce(&mut w).len()
}

/// Basis of the right nullspace `{x : m x = 0}`.
pub fn nullspace(m: &[Vec<BigRational>], cols: usize) -> Vec<Vec<BigRational>> {
    let mut w = m.to_vec();
    let pivots = row_reduce(&mut w);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); cols];
            v[f] = BigRational::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -w[r][f].clone();
            }
            v
        })
        .collect()
}

/// Solves `a x = b` exactly; `None` when inconsistent. Free variables are set to zero.
pub fn solve(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let cols = a.first().map_or(0, Vec::len);
    let mut aug: QMat = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = row_reduce(&mut aug);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![BigRational::zero(); cols];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = aug[r][cols].clone();
    }
    Some(x)
}

pub fn inverse(a: &[Vec<BigRational>]) -> Option<QMat> {
    let n = a.len();
    let mut aug: QMat = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            r
        })
        .collect();
    let pivots = row_reduce(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn determinant(a: &[Vec<BigRational>]) -> BigRational {
    let n = a.len();
    let mut m = a.to_vec();
    let mut det = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return BigRational::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= &m[c][c];
        let inv = m[c][c].recip();
        for i in c + 1..n {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] * &inv;
            let pivot_row = m[c].clone();
            for (x, y) in m[i].iter_mut().zip(pivot_row.iter()) {
                *x = &*x - &f * y;
            }
        }
    }
    det
}

/// Characteristic polynomial `det(z I - a)`, constant term first.
pub fn charpoly(a: &[Vec<BigInt>]) -> Vec<BigInt> {
    // Faddeev-LeVerrier; every division below is exact.
    let n = a.len();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut am = a.to_vec();
    for k in 1..=n {
        if k > 1 {
            let c_prev = &coeffs[n - k + 1];
            let mut mk = am.clone();
            for (i, row) in mk.iter_mut().enumerate() {
                row[i] += c_prev;
            }
            am = mat_mul_i(a, &mk);
        }
        let trace = (0..n).fold(BigInt::zero(), |acc, i| acc + &am[i][i]);
        coeffs[n - k] = -trace / BigInt::from(k);
    }
    coeffs
}

pub fn is_identity_i(a: &[Vec<BigInt>]) -> bool {
    a.iter().enumerate().all(|(i, r)| r.iter().enumerate().all(|(j, c)| if i == j { c.is_one() } else { c.is_zero() }))
}

pub fn det_i(a: &[Vec<BigInt>]) -> BigInt {
    determinant(&to_qmat(a)).to_integer()
}

pub fn abs_max(a: &[Vec<BigInt>]) -> BigInt {
    a.iter().flatten().map(|c| c.abs()).max().unwrap_or_else(BigInt::zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebraic::zpoly;

    #[test]
    fn charpoly_small() {
        let a = imat(&[&[2, 1], &[1, 1]]);
        assert_eq!(charpoly(&a), zpoly(&[1, -3, 1]));
        let c = imat(&[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]);
        assert_eq!(charpoly(&c), zpoly(&[-1, 0, 0, 1]));
    }

    #[test]
    fn solve_and_nullspace() {
        let a = to_qmat(&imat(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]));
        assert_eq!(rank(&a), 2);
        let ns = nullspace(&a, 3);
        assert_eq!(ns.len(), 1);
        for row in &a {
            let dot = row.iter().zip(&ns[0]).fold(BigRational::zero(), |acc, (x, y)| acc + x * y);
            assert!(dot.is_zero());
        }
        let x = solve(&a, &[q(6), q(12), q(2)]).unwrap();
        assert_eq!(x.iter().zip(&a[2]).fold(BigRational::zero(), |s, (u, v)| s + u * v), q(2));
        assert!(solve(&a, &[q(1), q(1), q(1)]).is_none());
    }

    #[test]
    fn inverse_and_determinant() {
        let a = to_qmat(&imat(&[&[1, -1, -1, -1], &[-1, 1, -1, -1], &[-1, -1, 1, -1], &[-1, -1, -1, 1]]));
        assert_eq!(determinant(&a), q(-16));
        let inv = inverse(&a).unwrap();
        assert_eq!(inv[0][0], BigRational::new(1.into(), 4.into()));
        assert_eq!(mat_pow_i(&imat(&[&[1, 1], &[0, 1]]), 5), imat(&[&[1, 5], &[0, 1]]));
    }
}
