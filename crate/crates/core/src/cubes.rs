//! The Cremona-cubes group: projectivities preserving the twelve special points.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::birmap::{ProjMap, ProjPoint};
use crate::linalg::{self, IMat};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CubesError {
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("matrix does not preserve the special points")]
    NotMember,
    #[error("group closure exceeded {0} elements")]
    ClosureOverflow(usize),
    #[error("orbit of the coordinate points has unexpected size {0}")]
    UnexpectedOrbitSize(usize),
    #[error("expected a 4x4 matrix")]
    BadShape,
}

pub type Mat4 = [[i64; 4]; 4];

pub const G0: Mat4 = [[1, -1, -1, -1], [-1, 1, -1, -1], [-1, -1, 1, -1], [-1, -1, -1, 1]];

pub fn g0_matrix() -> IMat {
    to_imat(&G0)
}

pub fn to_imat(m: &Mat4) -> IMat {
    m.iter().map(|r| r.iter().map(|&c| BigInt::from(c)).collect()).collect()
}

/// The generators of the signed-permutation subgroup.
pub const CB_GENERATORS: [Mat4; 4] = [
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, -1]],
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]],
    [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]],
    [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
];

/// The three blocks of special points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum PointSet {
    E,
    P,
    Q,
}

impl PointSet {
    pub const ALL: [PointSet; 3] = [PointSet::E, PointSet::P, PointSet::Q];

    pub fn index(self) -> usize {
        self as usize
    }
}

/// The coordinate points `E` and the fixed points `P`, `Q` of the Cremona involution.
pub struct SpecialPoints;

impl SpecialPoints {
    pub fn raw(set: PointSet) -> [[i64; 4]; 4] {
        match set {
            PointSet::E => [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
            PointSet::P => [[1, -1, -1, -1], [-1, 1, -1, -1], [-1, -1, 1, -1], [-1, -1, -1, 1]],
            PointSet::Q => [[1, -1, -1, 1], [-1, 1, -1, 1], [1, 1, -1, -1], [1, 1, 1, 1]],
        }
    }

    pub fn points(set: PointSet) -> Vec<ProjPoint> {
        Self::raw(set).iter().map(|c| ProjPoint::from_i64(c).expect("nonzero")).collect()
    }

    /// All twelve points, ordered `e1..e4, p1..p4, q1..q4`.
    pub fn all() -> Vec<ProjPoint> {
        PointSet::ALL.iter().flat_map(|&s| Self::points(s)).collect()
    }

    pub fn label(index: usize) -> String {
        let set = ["e", "p", "q"][index / 4];
        format!("{set}{}", index % 4 + 1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum ElementType {
    A,
    B,
    C,
}

impl ElementType {
    pub fn orbit_size(self) -> usize {
        match self {
            ElementType::A => 8,
            ElementType::B => 4,
            ElementType::C => 12,
        }
    }
}

impl fmt::Display for ElementType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// A projectivity given by a matrix with entries in `{-1, 0, 1}`, up to sign.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement(Mat4);

impl GroupElement {
    pub fn identity() -> Self {
        Self([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    }

    pub fn g0() -> Self {
        Self::from_mat(G0).expect("g0 is a member")
    }

    /// Canonical representative: entries divided by their gcd, first nonzero entry positive.
    fn canonical(m: &[[i128; 4]; 4]) -> Result<Mat4, CubesError> {
        let g = m.iter().flatten().fold(0i128, |acc, &c| acc.gcd(&c));
        if g == 0 {
            return Err(CubesError::SingularMatrix);
        }
        let first_neg = m.iter().flatten().find(|&&c| c != 0).is_some_and(|&c| c < 0);
        let g = if first_neg { -g } else { g };
        let mut out = [[0i64; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                out[i][j] = (m[i][j] / g) as i64;
            }
        }
        Ok(out)
    }

    /// Validates membership and canonicalizes.
    pub fn from_mat(m: Mat4) -> Result<Self, CubesError> {
        let wide = m.map(|r| r.map(i128::from));
        let c = Self::canonical(&wide)?;
        if !is_member(&to_imat(&c))? {
            return Err(CubesError::NotMember);
        }
        Ok(Self(c))
    }

    pub fn from_imat(m: &IMat) -> Result<Self, CubesError> {
        if m.len() != 4 || m.iter().any(|r| r.len() != 4) {
            return Err(CubesError::BadShape);
        }
        let g = m.iter().flatten().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if g.is_zero() {
            return Err(CubesError::SingularMatrix);
        }
        let mut out = [[0i64; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                out[i][j] = (&m[i][j] / &g).to_i64().ok_or(CubesError::NotMember)?;
            }
        }
        Self::from_mat(out)
    }

    pub fn matrix(&self) -> Mat4 {
        self.0
    }

    pub fn to_imat(&self) -> IMat {
        to_imat(&self.0)
    }

    pub fn to_map(&self) -> ProjMap {
        ProjMap::from_matrix(&self.to_imat()).expect("group elements are invertible").with_label(self.to_string())
    }

    /// Product `self · other` (apply `other` first).
    pub fn mul(&self, other: &Self) -> Self {
        let mut m = [[0i128; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                m[i][j] = (0..4).map(|k| i128::from(self.0[i][k]) * i128::from(other.0[k][j])).sum();
            }
        }
        Self(Self::canonical(&m).expect("product of invertible matrices"))
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::identity(), |acc, _| acc.mul(self))
    }

    pub fn order(&self) -> u32 {
        let id = Self::identity();
        let mut acc = *self;
        let mut k = 1;
        while acc != id {
            acc = acc.mul(self);
            k += 1;
            assert!(k <= 64, "element of unexpectedly large order");
        }
        k
    }

    pub fn inverse(&self) -> Self {
        self.pow(self.order() - 1)
    }

    pub fn apply(&self, p: &ProjPoint) -> ProjPoint {
        p.transform(&self.to_imat()).expect("invertible")
    }

    /// Exactly one nonzero entry per row and column.
    pub fn is_signed_permutation(&self) -> bool {
        let rows_ok = self.0.iter().all(|r| r.iter().filter(|&&c| c != 0).count() == 1);
        let cols_ok = (0..4).all(|j| (0..4).filter(|&i| self.0[i][j] != 0).count() == 1);
        rows_ok && cols_ok
    }

    /// Index in `R` of the image of each point of `R`.
    pub fn permutation_on_r(&self) -> [usize; 12] {
        let r = SpecialPoints::all();
        let mut out = [0usize; 12];
        for (i, p) in r.iter().enumerate() {
            let img = self.apply(p);
            out[i] = r.iter().position(|x| *x == img).expect("group elements preserve R");
        }
        out
    }

    /// Image block of each block `E, P, Q`.
    pub fn set_action(&self) -> [PointSet; 3] {
        let perm = self.permutation_on_r();
        let mut out = [PointSet::E; 3];
        for s in PointSet::ALL {
            let targets: BTreeSet<usize> = (0..4).map(|k| perm[4 * s.index() + k] / 4).collect();
            assert_eq!(targets.len(), 1, "blocks map to blocks");
            out[s.index()] = PointSet::ALL[*targets.iter().next().expect("nonempty")];
        }
        out
    }

    pub fn classify(&self) -> Result<ElementType, CubesError> {
        let mut orbit: BTreeSet<ProjPoint> = BTreeSet::new();
        let e = SpecialPoints::points(PointSet::E);
        let mut g = Self::identity();
        for _ in 0..self.order() {
            orbit.extend(e.iter().map(|p| g.apply(p)));
            g = g.mul(self);
        }
        match orbit.len() {
            8 => Ok(ElementType::A),
            4 => Ok(ElementType::B),
            12 => Ok(ElementType::C),
            n => Err(CubesError::UnexpectedOrbitSize(n)),
        }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .0
            .iter()
            .map(|r| format!("[{}]", r.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for GroupElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

/// Whether the projectivity maps each special point to a special point.
pub fn is_member(m: &IMat) -> Result<bool, CubesError> {
    if m.len() != 4 || m.iter().any(|r| r.len() != 4) {
        return Err(CubesError::BadShape);
    }
    if linalg::det_i(m).is_zero() {
        return Err(CubesError::SingularMatrix);
    }
    let r = SpecialPoints::all();
    Ok(r.iter().all(|p| p.transform(m).is_ok_and(|img| r.contains(&img))))
}

const CLOSURE_BOUND: usize = 4096;

/// Closure of the signed-permutation generators and `g0`, sorted canonically.
pub fn enumerate_group() -> Result<Vec<GroupElement>, CubesError> {
    let mut gens: Vec<GroupElement> = CB_GENERATORS.iter().map(|m| GroupElement::from_mat(*m)).collect::<Result<_, _>>()?;
    gens.push(GroupElement::g0());
    closure(&gens)
}

fn closure(gens: &[GroupElement]) -> Result<Vec<GroupElement>, CubesError> {
    let mut seen: BTreeSet<GroupElement> = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(GroupElement::identity());
    queue.push_back(GroupElement::identity());
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = g.mul(&x);
            if seen.insert(y) {
                if seen.len() > CLOSURE_BOUND {
                    return Err(CubesError::ClosureOverflow(CLOSURE_BOUND));
                }
                queue.push_back(y);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// The signed-permutation subgroup.
pub fn subgroup_b() -> Result<Vec<GroupElement>, CubesError> {
    let gens: Vec<GroupElement> = CB_GENERATORS.iter().map(|m| GroupElement::from_mat(*m)).collect::<Result<_, _>>()?;
    closure(&gens)
}

#[derive(Clone, Debug, Serialize)]
pub struct ConjugacyClass {
    pub representative: GroupElement,
    pub size: usize,
    pub order: u32,
    pub members: Vec<GroupElement>,
}

/// Conjugacy classes of the signed-permutation subgroup, sorted by order then representative.
pub fn conjugacy_classes_b() -> Result<Vec<ConjugacyClass>, CubesError> {
    let group = subgroup_b()?;
    let inverses: BTreeMap<GroupElement, GroupElement> = group.iter().map(|g| (*g, g.inverse())).collect();
    let mut assigned: BTreeSet<GroupElement> = BTreeSet::new();
    let mut classes = Vec::new();
    for g in &group {
        if assigned.contains(g) {
            continue;
        }
        let members: BTreeSet<GroupElement> = group.iter().map(|h| h.mul(g).mul(&inverses[h])).collect();
        assigned.extend(members.iter().copied());
        let representative = *members.iter().next().expect("nonempty class");
        classes.push(ConjugacyClass {
            representative,
            size: members.len(),
            order: representative.order(),
            members: members.into_iter().collect(),
        });
    }
    classes.sort_by_key(|a| (a.order, a.representative));
    Ok(classes)
}

/// Tally of elements per type.
pub fn count_by_type(elements: &[GroupElement]) -> Result<BTreeMap<ElementType, usize>, CubesError> {
    let mut out = BTreeMap::new();
    for g in elements {
        *out.entry(g.classify()?).or_insert(0) += 1;
    }
    Ok(out)
}

/// Representatives of the type-A cases `(i)`–`(v)`, with a second matrix for case `(ii)`.
pub fn case_a_examples() -> Vec<(&'static str, Mat4)> {
    vec![
        ("i", [[1, 1, 1, -1], [1, 1, -1, 1], [1, -1, 1, 1], [-1, 1, 1, 1]]),
        ("ii", [[1, 1, -1, 1], [1, 1, 1, -1], [1, -1, 1, 1], [-1, 1, 1, 1]]),
        ("ii'", [[-1, 1, 1, 1], [1, -1, 1, 1], [1, 1, 1, -1], [1, 1, -1, 1]]),
        ("iii", [[-1, 1, -1, -1], [1, -1, -1, -1], [1, 1, 1, -1], [1, 1, -1, 1]]),
        ("iv", [[-1, 1, 1, 1], [1, 1, -1, 1], [1, 1, 1, -1], [1, -1, 1, 1]]),
        ("v", [[-1, 1, -1, -1], [1, 1, -1, 1], [1, 1, 1, -1], [1, -1, -1, -1]]),
    ]
}

/// The fourteen type-B class representatives `(i)`–`(xiv)` with their orders.
pub fn case_b_representatives() -> Vec<(&'static str, Mat4, u32)> {
    vec![
        ("i", [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]], 1),
        ("ii", [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, -1]], 2),
        ("iii", [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], 2),
        ("iv", [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1]], 2),
        ("v", [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, -1]], 2),
        ("vi", [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], 2),
        ("vii", [[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]], 2),
        ("viii", [[1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [0, 1, 0, 0]], 3),
        ("ix", [[0, 0, 0, 1], [0, 0, -1, 0], [1, 0, 0, 0], [0, 1, 0, 0]], 4),
        ("x", [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]], 4),
        ("xi", [[-1, 0, 0, 0], [0, 0, 1, 0], [0, -1, 0, 0], [0, 0, 0, 1]], 4),
        ("xii", [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]], 4),
        ("xiii", [[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0]], 4),
        ("xiv", [[-1, 0, 0, 0], [0, 0, 0, 1], [0, 1, 0, 0], [0, 0, 1, 0]], 6),
    ]
}

/// The type-C matrices of the case-C invariant table, in row order.
pub fn case_c_examples() -> Vec<(&'static str, Mat4)> {
    vec![
        ("S12,34 S13,24 S14,23", [[1, -1, -1, 1], [-1, 1, -1, 1], [-1, -1, 1, 1], [-1, -1, -1, -1]]),
        ("S12,34", [[1, -1, 1, -1], [-1, 1, 1, -1], [-1, -1, 1, 1], [-1, -1, -1, -1]]),
        ("S13,24", [[1, 1, -1, -1], [-1, 1, -1, 1], [-1, 1, 1, -1], [-1, -1, -1, -1]]),
        ("S14,23", [[1, 1, -1, -1], [-1, 1, 1, -1], [-1, -1, -1, -1], [-1, 1, -1, 1]]),
        ("none", [[1, 1, -1, -1], [-1, 1, 1, -1], [-1, 1, -1, 1], [-1, -1, -1, -1]]),
    ]
}

/// Whether the representative matrix is a signed permutation with an odd number of `-1` entries.
pub fn sign_parity(g: &GroupElement) -> Option<bool> {
    g.is_signed_permutation()
        .then(|| g.0.iter().flatten().filter(|&&c| c < 0).count() % 2 == 1)
}

/// Largest absolute entry, used as a sanity bound in tests.
pub fn max_entry(g: &GroupElement) -> i64 {
    g.0.iter().flatten().map(|c| c.abs()).max().unwrap_or(0)
}

pub(crate) fn _det_sign(g: &GroupElement) -> bool {
    linalg::det_i(&g.to_imat()).is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn membership() {
        assert!(is_member(&g0_matrix()).unwrap());
        assert!(is_member(&GroupElement::identity().to_imat()).unwrap());
        let d = to_imat(&[[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 2]]);
        assert!(!is_member(&d).unwrap());
        let s = to_imat(&[[1, 1, 0, 0], [1, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]);
        assert_eq!(is_member(&s), Err(CubesError::SingularMatrix));
    }

    #[test]
    fn g0_properties() {
        let g0 = GroupElement::g0();
        assert_eq!(g0.order(), 2);
        assert_eq!(g0.classify().unwrap(), ElementType::A);
        let p1 = ProjPoint::from_i64(&[1, -1, -1, -1]).unwrap();
        assert_eq!(g0.apply(&p1), ProjPoint::from_i64(&[1, 0, 0, 0]).unwrap());
        assert_eq!(g0.set_action(), [PointSet::P, PointSet::E, PointSet::Q]);
        assert_eq!(GroupElement::identity().classify().unwrap(), ElementType::B);
    }

    #[test]
    fn table_representatives() {
        for (name, m, ord) in case_b_representatives() {
            let g = GroupElement::from_mat(m).unwrap();
            assert_eq!(g.order(), ord, "case {name}");
            assert_eq!(g.classify().unwrap(), ElementType::B);
        }
        for (name, m) in case_c_examples() {
            assert_eq!(GroupElement::from_mat(m).unwrap().classify().unwrap(), ElementType::C, "{name}");
        }
        for (name, m) in case_a_examples() {
            assert_eq!(GroupElement::from_mat(m).unwrap().classify().unwrap(), ElementType::A, "{name}");
        }
    }

    #[test]
    fn group_counts() {
        let all = enumerate_group().unwrap();
        assert_eq!(all.len(), 576);
        let counts = count_by_type(&all).unwrap();
        assert_eq!(counts.values().copied().collect::<Vec<_>>(), vec![192, 192, 192]);
        let classes = conjugacy_classes_b().unwrap();
        assert_eq!(classes.len(), 14);
        assert_eq!(classes.iter().map(|c| c.size).sum::<usize>(), 192);
        let orders: BTreeSet<u32> = classes.iter().map(|c| c.order).collect();
        assert_eq!(orders, BTreeSet::from([1, 2, 3, 4, 6]));
        assert_eq!(classes[0].size, 1);
    }
}
