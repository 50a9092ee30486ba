//! Degree sequences of iterates.
//!
//! The fast route restricts the map to a random line modulo a large prime and
//! iterates on binary forms, dividing out the common factor at every step. For
//! a line avoiding the base loci this reproduces the degrees of the reduced
//! iterates; two independent lines and primes guard against unlucky choices.

use rand::{Rng, SeedableRng};
use serde::Serialize;

use super::{MapError, ProjMap};
use crate::modp::{self, upoly, P61, P61B};
use crate::polyring::HomogPoly;

pub const DEFAULT_DEGREE_CAP: u64 = 300;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeSequence {
    pub values: Vec<u64>,
    pub map_label: String,
    /// Set when iteration stopped because the next degree exceeded the cap.
    pub truncated: bool,
}

/// Univariate images `Φ(a + t b)` modulo `prime`, with the common factor removed.
fn step(map: &ProjMap, point: &[Vec<u64>], prime: u64) -> Vec<Vec<u64>> {
    let images: Vec<Vec<u64>> = map.components().iter().map(|c| eval_univariate(c, point, prime)).collect();
    let mut g: Vec<u64> = Vec::new();
    for im in &images {
        if upoly::degree(im).is_none() {
            continue;
        }
        g = if g.is_empty() { im.clone() } else { upoly::gcd(&g, im, prime) };
        if upoly::degree(&g) == Some(0) {
            break;
        }
    }
    if upoly::degree(&g).unwrap_or(0) == 0 {
        return images;
    }
    images.iter().map(|im| upoly::div_exact(im, &g, prime)).collect()
}

fn eval_univariate(p: &HomogPoly, point: &[Vec<u64>], prime: u64) -> Vec<u64> {
    let maxe = p
        .terms()
        .iter()
        .flat_map(|(m, _)| (0..p.nvars()).map(move |i| m.exp(i)))
        .max()
        .unwrap_or(0) as usize;
    let powers: Vec<Vec<Vec<u64>>> = point
        .iter()
        .map(|v| {
            let mut pw = vec![vec![1u64]];
            for k in 1..=maxe {
                pw.push(upoly::mul_poly(&pw[k - 1], v, prime));
            }
            pw
        })
        .collect();
    let mut acc: Vec<u64> = Vec::new();
    for (m, c) in p.terms() {
        let mut t = vec![modp::reduce_bigint(c, prime)];
        for (i, pw) in powers.iter().enumerate() {
            let e = m.exp(i) as usize;
            if e > 0 {
                t = upoly::mul_poly(&t, &pw[e], prime);
            }
        }
        if acc.len() < t.len() {
            acc.resize(t.len(), 0);
        }
        for (k, v) in t.into_iter().enumerate() {
            acc[k] = modp::add(acc[k], v, prime);
        }
    }
    upoly::trim(&mut acc);
    acc
}

fn line_degrees(map: &ProjMap, n_max: usize, cap: u64, prime: u64, seed: u64) -> (Vec<u64>, bool) {
    let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
    let n = map.nvars();
    let mut point: Vec<Vec<u64>> = (0..n).map(|_| vec![rng.gen_range(1..prime), rng.gen_range(1..prime)]).collect();
    let mut out = vec![1u64];
    for _ in 0..n_max {
        point = step(map, &point, prime);
        let deg = point.iter().filter_map(|v| upoly::degree(v)).max().unwrap_or(0) as u64;
        if deg > cap {
            return (out, true);
        }
        out.push(deg);
    }
    (out, false)
}

/// Degrees `d_0 = 1, d_1, …, d_{n_max}` of the iterates of `map`.
pub fn degree_sequence(map: &ProjMap, n_max: usize, degree_cap: u64) -> DegreeSequence {
    let (a, ta) = line_degrees(map, n_max, degree_cap, P61, 0x00c0_ffee);
    let (b, tb) = line_degrees(map, n_max, degree_cap, P61B, 0x0bad_5eed);
    let len = a.len().min(b.len());
    let values = (0..len).map(|i| a[i].max(b[i])).collect();
    DegreeSequence { values, map_label: map.label().to_string(), truncated: ta || tb }
}

/// Degrees from exact symbolic composition; expensive beyond moderate degrees.
pub fn degree_sequence_symbolic(map: &ProjMap, n_max: usize, degree_cap: u64) -> Result<DegreeSequence, MapError> {
    let mut values = vec![1u64];
    let mut acc = ProjMap::identity(map.nvars());
    let inner = map.clone().without_inverse();
    for _ in 0..n_max {
        if u64::from(acc.degree()) * u64::from(map.degree()) > degree_cap.saturating_mul(4) {
            return Ok(DegreeSequence { values, map_label: map.label().to_string(), truncated: true });
        }
        acc = ProjMap::compose(&acc.without_inverse(), &inner)?.map;
        let d = u64::from(acc.degree());
        if d > degree_cap {
            return Ok(DegreeSequence { values, map_label: map.label().to_string(), truncated: true });
        }
        values.push(d);
    }
    Ok(DegreeSequence { values, map_label: map.label().to_string(), truncated: false })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::imat;

    fn g0c3() -> ProjMap {
        let g0 = ProjMap::from_matrix(&imat(&[&[1, -1, -1, -1], &[-1, 1, -1, -1], &[-1, -1, 1, -1], &[-1, -1, -1, 1]]))
            .unwrap();
        ProjMap::compose(&g0, &ProjMap::cremona(4)).unwrap().map
    }

    #[test]
    fn identity_degrees() {
        let s = degree_sequence(&ProjMap::identity(4), 5, 300);
        assert_eq!(s.values, vec![1; 6]);
    }

    #[test]
    fn cremona_is_two_periodic() {
        let s = degree_sequence(&ProjMap::cremona(4), 6, 300);
        assert_eq!(s.values, vec![1, 3, 1, 3, 1, 3, 1]);
    }

    #[test]
    fn quadratic_growth() {
        let s = degree_sequence(&g0c3(), 8, 300);
        assert_eq!(s.values, vec![1, 3, 9, 19, 33, 51, 73, 99, 129]);
        assert!(!s.truncated);
        let sym = degree_sequence_symbolic(&g0c3(), 3, 300).unwrap();
        assert_eq!(sym.values, vec![1, 3, 9, 19]);
    }

    #[test]
    fn cap_truncates() {
        let s = degree_sequence(&g0c3(), 8, 40);
        assert_eq!(s.values, vec![1, 3, 9, 19, 33]);
        assert!(s.truncated);
    }
}
