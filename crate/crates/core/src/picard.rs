//! Action of `g ∘ C3` on the Picard lattice of the blown-up space.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::algebraic::{self, Entropy};
use crate::cubes::{ElementType, GroupElement, PointSet, SpecialPoints};
use crate::linalg::{self, IMat};

/// Class labels: `H`, then the exceptional classes over the blown-up points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeBasis {
    pub labels: Vec<String>,
    /// Point blocks in basis order.
    #[serde(skip)]
    pub blocks: Vec<PointSet>,
}

impl LatticeBasis {
    pub fn for_element(g: &GroupElement) -> Self {
        let ty = g.classify().expect("group element");
        let blocks = match ty {
            ElementType::B => vec![PointSet::E],
            ElementType::C => PointSet::ALL.to_vec(),
            ElementType::A => {
                vec![PointSet::E, g.set_action()[PointSet::E.index()]]
            }
        };
        let mut labels = vec!["H".to_string()];
        for b in &blocks {
            labels.extend((1..=4).map(|i| format!("{b:?}{i}")));
        }
        Self { labels, blocks }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Basis index of the class over point `r` (index in `R`), if blown up.
    fn index_of_point(&self, r: usize) -> Option<usize> {
        let set = PointSet::ALL[r / 4];
        self.blocks.iter().position(|&b| b == set).map(|k| 1 + 4 * k + r % 4)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PushforwardMatrix {
    pub basis: LatticeBasis,
    /// Columns are the images of the basis classes.
    pub entries: IMat,
}

impl Serialize for PushforwardMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let rows: Vec<Vec<String>> = self.entries.iter().map(|r| r.iter().map(ToString::to_string).collect()).collect();
        let mut st = s.serialize_struct("PushforwardMatrix", 2)?;
        st.serialize_field("basis", &self.basis.labels)?;
        st.serialize_field("entries", &rows)?;
        st.end()
    }
}

/// Matrix of `(C3)_*` on `(H, E1..E4)` extended by the identity on further blocks.
pub fn cremona_action(size: usize) -> IMat {
    let mut m = vec![vec![BigInt::zero(); size]; size];
    m[0][0] = BigInt::from(3);
    for i in 1..5 {
        m[i][0] = BigInt::from(-2);
        m[0][i] = BigInt::one();
        for j in 1..5 {
            if i != j {
                m[j][i] = BigInt::from(-1);
            }
        }
    }
    for (k, row) in m.iter_mut().enumerate().skip(5) {
        row[k] = BigInt::one();
    }
    m
}

/// Permutation matrix of `g_*`, sending the class over `r` to the class over `g(r)`.
fn group_action(g: &GroupElement, basis: &LatticeBasis) -> IMat {
    let n = basis.len();
    let perm = g.permutation_on_r();
    let mut m = vec![vec![BigInt::zero(); n]; n];
    m[0][0] = BigInt::one();
    for r in 0..12 {
        if let Some(src) = basis.index_of_point(r) {
            let dst = basis.index_of_point(perm[r]).expect("blown-up set is g-stable");
            m[dst][src] = BigInt::one();
        }
    }
    m
}

pub fn pushforward_matrix(g: &GroupElement) -> PushforwardMatrix {
    let basis = LatticeBasis::for_element(g);
    let entries = linalg::mat_mul_i(&group_action(g, &basis), &cremona_action(basis.len()));
    PushforwardMatrix { basis, entries }
}

/// `(Φ_*)^n H` as a coefficient vector.
pub fn iterate_h(g: &GroupElement, n: u64) -> (LatticeBasis, Vec<BigInt>) {
    let pf = pushforward_matrix(g);
    let p = linalg::mat_pow_i(&pf.entries, n);
    let v = p.iter().map(|row| row[0].clone()).collect();
    (pf.basis, v)
}

pub fn lattice_degree(g: &GroupElement, n: u64) -> BigInt {
    iterate_h(g, n).1[0].clone()
}

/// Lattice degrees `d_0..=d_n_max`.
pub fn lattice_degrees(g: &GroupElement, n_max: u64) -> Vec<BigInt> {
    let pf = pushforward_matrix(g);
    let mut v: Vec<BigInt> = (0..pf.basis.len()).map(|i| if i == 0 { BigInt::one() } else { BigInt::zero() }).collect();
    let mut out = vec![BigInt::one()];
    for _ in 0..n_max {
        v = linalg::mat_vec_i(&pf.entries, &v);
        out.push(v[0].clone());
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosedFormRow {
    pub n: u64,
    pub computed: Vec<String>,
    pub expected: Vec<String>,
    pub pass: bool,
}

/// Lucas numbers `L_k` for `k ≥ 0`, with `L_{-2} = 3`.
fn lucas(k: i64) -> BigInt {
    if k < 0 {
        // L_{-k} = (-1)^k L_k
        let v = lucas(-k);
        return if k % 2 == 0 { v } else { -v };
    }
    let (mut a, mut b) = (BigInt::from(2), BigInt::one());
    for _ in 0..k {
        let c = &a + &b;
        a = b;
        b = c;
    }
    a
}

/// Closed-form coefficients `(d, f, b, c)` of the non-integrable type.
pub fn type_c_closed_form(n: u64) -> [BigInt; 4] {
    let k = n as i64;
    let sign = if n.is_multiple_of(2) { BigInt::one() } else { -BigInt::one() };
    let five = BigInt::from(5);
    let d = (BigInt::from(8) * lucas(2 * k) - &sign - BigInt::from(10)) / &five;
    let f = (BigInt::from(2) * lucas(2 * k - 2) - &sign) / &five - 1;
    let b = (BigInt::from(2) * lucas(2 * k + 2) - &sign) / &five - 1;
    let c = (BigInt::from(2) * lucas(2 * k) + &sign) / &five - 1;
    [d, f, b, c]
}

/// Iterates `d' = 3d − 4f, f' = c, b' = 2d − 3f, c' = b` from `(1, 0, 0, 0)`.
pub fn type_c_recurrence(n_max: u64) -> Vec<[BigInt; 4]> {
    let mut v = [BigInt::one(), BigInt::zero(), BigInt::zero(), BigInt::zero()];
    let mut out = vec![v.clone()];
    for _ in 0..n_max {
        let [d, f, b, c] = v;
        v = [BigInt::from(3) * &d - BigInt::from(4) * &f, c, BigInt::from(2) * &d - BigInt::from(3) * &f, b];
        out.push(v.clone());
    }
    out
}

/// Expected `(Φ_*)^n H` from the closed forms, in the basis of `g`.
fn expected_vector(g: &GroupElement, basis: &LatticeBasis, n: u64) -> Vec<BigInt> {
    let ty = g.classify().expect("group element");
    let n_big = BigInt::from(n);
    let mut v = vec![BigInt::zero(); basis.len()];
    let mut fill = |block: usize, coeff: &BigInt| {
        for i in 0..4 {
            v[1 + 4 * block + i] = -coeff;
        }
    };
    let head = match ty {
        ElementType::A => {
            fill(0, &(&n_big * (&n_big - 1u32)));
            fill(1, &(&n_big * (&n_big + 1u32)));
            BigInt::from(2u32) * &n_big * &n_big + 1u32
        }
        ElementType::B => {
            if n.is_multiple_of(2) {
                BigInt::one()
            } else {
                fill(0, &BigInt::from(2));
                BigInt::from(3)
            }
        }
        ElementType::C => {
            let [d, f, b, c] = type_c_closed_form(n);
            let action = g.set_action();
            let ge = action[PointSet::E.index()];
            let gge = action[ge.index()];
            let pos = |s: PointSet| basis.blocks.iter().position(|&x| x == s).expect("all blocks present");
            fill(pos(PointSet::E), &f);
            fill(pos(ge), &b);
            fill(pos(gge), &c);
            d
        }
    };
    v[0] = head;
    v
}

/// Compares matrix powers against the closed forms for `n = 0..=n_max`.
pub fn closed_form_check(g: &GroupElement, n_max: u64) -> Vec<ClosedFormRow> {
    let pf = pushforward_matrix(g);
    let strs = |v: &[BigInt]| v.iter().map(ToString::to_string).collect::<Vec<_>>();
    let mut v: Vec<BigInt> = (0..pf.basis.len()).map(|i| if i == 0 { BigInt::one() } else { BigInt::zero() }).collect();
    let mut rows = Vec::new();
    for n in 0..=n_max {
        if n > 0 {
            v = linalg::mat_vec_i(&pf.entries, &v);
        }
        let expected = expected_vector(g, &pf.basis, n);
        rows.push(ClosedFormRow { n, computed: strs(&v), expected: strs(&expected), pass: v == expected });
    }
    rows
}

/// Smallest `k ≥ 1` with `M^k = I`, searched up to `bound`.
pub fn matrix_order(m: &IMat, bound: u32) -> Option<u32> {
    let mut acc = m.to_vec();
    for k in 1..=bound {
        if linalg::is_identity_i(&acc) {
            return Some(k);
        }
        acc = linalg::mat_mul_i(&acc, m);
    }
    None
}

pub fn exact_entropy(g: &GroupElement) -> Entropy {
    algebraic::entropy_from_charpoly(&linalg::charpoly(&pushforward_matrix(g).entries))
}

/// Image of the anticanonical-type vector `2(2H − ΣE − ΣX)` for type-A elements.
pub fn anticanonical_fixed(g: &GroupElement) -> bool {
    let pf = pushforward_matrix(g);
    let v: Vec<BigInt> = (0..pf.basis.len()).map(|i| BigInt::from(if i == 0 { 4 } else { -2 })).collect();
    linalg::mat_vec_i(&pf.entries, &v) == v
}

/// Order of the permutation `σ` induced by `g` on the coordinate points.
pub fn sigma_order(g: &GroupElement) -> u32 {
    let perm = g.permutation_on_r();
    let mut cur: Vec<usize> = (0..4).collect();
    let mut k = 0;
    loop {
        cur = cur.iter().map(|&i| perm[i]).collect();
        k += 1;
        if cur.iter().enumerate().all(|(i, &j)| i == j) {
            return k;
        }
        assert!(cur.iter().all(|&j| j < 4), "σ is defined for signed permutations only");
    }
}

/// Predicted order `lcm(2, ord σ)` of the pushforward for signed permutations.
pub fn predicted_periodic_order(g: &GroupElement) -> u32 {
    num_integer::lcm(2, sigma_order(g))
}

pub fn determinant_is_unit(pf: &PushforwardMatrix) -> bool {
    linalg::det_i(&pf.entries).abs().is_one()
}

/// Labels of the special points, for reporting.
pub fn point_labels() -> Vec<String> {
    (0..12).map(SpecialPoints::label).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubes::{case_b_representatives, case_c_examples};

    fn type_c() -> GroupElement {
        GroupElement::from_mat(case_c_examples()[0].1).unwrap()
    }

    #[test]
    fn identity_gives_cremona_action() {
        let pf = pushforward_matrix(&GroupElement::identity());
        assert_eq!(pf.entries, cremona_action(5));
        assert_eq!(pf.basis.labels, vec!["H", "E1", "E2", "E3", "E4"]);
        assert!(determinant_is_unit(&pf));
    }

    #[test]
    fn g0_action() {
        let g0 = GroupElement::g0();
        let pf = pushforward_matrix(&g0);
        assert_eq!(pf.basis.len(), 9);
        assert!(determinant_is_unit(&pf));
        let col0: Vec<i64> = pf.entries.iter().map(|r| i64::try_from(&r[0]).unwrap()).collect();
        assert_eq!(col0, vec![3, 0, 0, 0, 0, -2, -2, -2, -2]);
        assert_eq!(lattice_degree(&g0, 5), BigInt::from(51));
        assert!(closed_form_check(&g0, 12).iter().all(|r| r.pass));
        assert!(anticanonical_fixed(&g0));
        assert!(exact_entropy(&g0).zero);
    }

    #[test]
    fn type_b_periodic() {
        for (name, m, ord) in case_b_representatives() {
            let g = GroupElement::from_mat(m).unwrap();
            assert_eq!(lattice_degree(&g, 7), BigInt::from(3));
            assert_eq!(lattice_degree(&g, 8), BigInt::one());
            let pf = pushforward_matrix(&g);
            let k = matrix_order(&pf.entries, 12).unwrap();
            assert_eq!(k, predicted_periodic_order(&g), "case {name}");
            assert!([2, 4, 6].contains(&k));
            assert_eq!(k % 2, 0, "order {ord}");
            assert!(closed_form_check(&g, 8).iter().all(|r| r.pass));
            assert!(exact_entropy(&g).zero);
        }
    }

    #[test]
    fn type_c_growth() {
        let g = type_c();
        assert_eq!(lattice_degree(&g, 4), BigInt::from(73));
        let rec = type_c_recurrence(12);
        for (n, r) in rec.iter().enumerate() {
            assert_eq!(*r, type_c_closed_form(n as u64), "n = {n}");
        }
        let quads: Vec<[i64; 4]> = vec![[1, 0, 0, 0], [3, 0, 2, 0], [9, 0, 6, 2], [27, 2, 18, 6], [73, 6, 48, 18], [195, 18, 128, 48]];
        for (n, q) in quads.iter().enumerate() {
            assert_eq!(rec[n], q.map(BigInt::from));
        }
        assert!(closed_form_check(&g, 12).iter().all(|r| r.pass));
        let e = exact_entropy(&g);
        assert!((e.value - 0.962_423_650_1).abs() < 1e-6);
        assert_eq!(e.dominant_root.unwrap().min_poly, vec!["1", "-3", "1"]);
        let cp = linalg::charpoly(&pushforward_matrix(&g).entries);
        assert!(algebraic::div_exact_z(&cp, &algebraic::zpoly(&[1, -3, 1])).is_some());
    }

    #[test]
    fn lucas_values() {
        assert_eq!((0..6).map(lucas).collect::<Vec<_>>(), [2, 1, 3, 4, 7, 11].map(BigInt::from).to_vec());
        assert_eq!(lucas(-2), BigInt::from(3));
    }
}
