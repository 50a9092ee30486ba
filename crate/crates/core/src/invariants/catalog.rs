//! Built-in linear systems and invariant tables.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::{InvariantsError, LinearSystem, RationalFunction};
use crate::birmap::ProjMap;
use crate::cubes::{self, Mat4};
use crate::khk::{lit, EulerParams};
use crate::polyring::{parse_fraction, parse_poly, HomogPoly};

fn poly(text: &str) -> HomogPoly {
    parse_poly(text, 4).expect("built-in polynomial")
}

fn rf(text: &str) -> RationalFunction {
    RationalFunction::parse(text).unwrap_or_else(|e| panic!("built-in function {text}: {e}"))
}

/// `g ∘ C3` for a matrix `g`.
pub fn composite(m: &Mat4) -> ProjMap {
    let g = ProjMap::from_matrix(&cubes::to_imat(m)).expect("invertible matrix");
    ProjMap::compose(&g, &ProjMap::cremona(4)).expect("composable").map
}

pub fn sigma_p() -> LinearSystem {
    LinearSystem::new(vec![poly("x1*x2+x3*x4"), poly("x1*x3+x2*x4"), poly("x1*x4+x2*x3")], "sigmaP").expect("independent")
}

pub fn sigma_q() -> LinearSystem {
    LinearSystem::new(vec![poly("x1*x2-x3*x4"), poly("x1*x3-x2*x4"), poly("x1*x4-x2*x3")], "sigmaQ").expect("independent")
}

pub fn sigma_b() -> LinearSystem {
    let basis = ["x1*x2", "x1*x3", "x1*x4", "x2*x3", "x2*x4", "x3*x4"].iter().map(|t| poly(t)).collect();
    LinearSystem::new(basis, "sigmaB").expect("independent")
}

/// `S_{12,34}`, `S_{13,24}`, `S_{14,23}`: products of the planes `x_i ± x_j`.
pub fn desmic_quartics() -> [HomogPoly; 3] {
    [
        poly("(x1^2-x2^2)*(x3^2-x4^2)"),
        poly("(x1^2-x3^2)*(x2^2-x4^2)"),
        poly("(x1^2-x4^2)*(x2^2-x3^2)"),
    ]
}

/// The pencil spanned by the desmic quartics.
pub fn desmic_pencil() -> LinearSystem {
    let [a, b, _] = desmic_quartics();
    LinearSystem::new(vec![a, b], "desmic").expect("independent")
}

pub fn system_by_name(name: &str) -> Option<LinearSystem> {
    match name {
        "sigmaP" => Some(sigma_p()),
        "sigmaQ" => Some(sigma_q()),
        "sigmaB" => Some(sigma_b()),
        "desmic" => Some(desmic_pencil()),
        _ => None,
    }
}

fn frac_poly(text: &str) -> HomogPoly {
    let f = parse_fraction(text, 4).expect("built-in expression");
    f.num.normalize()
}

/// Quadrics `x4² − a1a2h²x3²/4`, `x2² − a2x3²/a3`, `x1² − a1x3²/a3` with denominators cleared.
pub fn euler_net(p: &EulerParams) -> LinearSystem {
    let [a1, a2, a3] = &p.a;
    let h = &p.h;
    let four = BigRational::from_integer(BigInt::from(4));
    let c4 = a1 * a2 * h * h / &four;
    let texts = [
        format!("x4^2 - {}*x3^2", lit(&c4)),
        format!("x2^2 - {}*x3^2", lit(&(a2 / a3))),
        format!("x1^2 - {}*x3^2", lit(&(a1 / a3))),
    ];
    let basis = texts.iter().map(|t| frac_poly(t)).collect();
    LinearSystem::new(basis, "euler-net").expect("independent")
}

/// `I1`, `I2` with the step size in the common denominator.
pub fn euler_invariants(p: &EulerParams) -> [RationalFunction; 2] {
    euler_invariants_with(p, &(&p.h * &p.h))
}

/// `I1`, `I2` with the common denominator `x4² − a1a2x3²/4` without the step factor.
pub fn euler_invariants_without_step(p: &EulerParams) -> [RationalFunction; 2] {
    euler_invariants_with(p, &BigRational::one())
}

fn euler_invariants_with(p: &EulerParams, h2: &BigRational) -> [RationalFunction; 2] {
    let [a1, a2, a3] = &p.a;
    let four = BigRational::from_integer(BigInt::from(4));
    let den = format!("(x4^2 - {}*x3^2)", lit(&(a1 * a2 * h2 / &four)));
    [
        rf(&format!("(x1^2 - {}*x3^2)/{den}", lit(&(a1 / a3)))),
        rf(&format!("(x2^2 - {}*x3^2)/{den}", lit(&(a2 / a3)))),
    ]
}

/// `F1`, `F2` from the literature.
pub fn euler_literature_invariants(p: &EulerParams) -> [RationalFunction; 2] {
    let [a1, a2, a3] = &p.a;
    let h2 = &p.h * &p.h;
    let four = BigRational::from_integer(BigInt::from(4));
    let t = |c: BigRational, v: &str| format!("(x4^2 - {}*{v}^2)", lit(&(c * &h2 / &four)));
    [
        rf(&format!("{}/{}", t(a1 * a3, "x2"), t(a1 * a2, "x3"))),
        rf(&format!("{}/{}", t(a1 * a2, "x3"), t(a2 * a3, "x1"))),
    ]
}

/// Checks `F1 = 1 − (a1a3h²/4) I2` and `F2 = 1 / (1 − a2a3h² I1/4)`.
pub fn euler_functional_relations(p: &EulerParams) -> Result<[bool; 2], InvariantsError> {
    let [a1, a2, a3] = &p.a;
    let h2 = &p.h * &p.h;
    let four = BigRational::from_integer(BigInt::from(4));
    let [i1, i2] = euler_invariants(p);
    let [f1, f2] = euler_literature_invariants(p);
    let scalar = |q: BigRational| -> Result<RationalFunction, InvariantsError> {
        RationalFunction::new(HomogPoly::constant(4, q.numer().clone()), HomogPoly::constant(4, q.denom().clone()))
    };
    let one = RationalFunction::constant(4, 1);
    let rhs1 = one.sub(&scalar(a1 * a3 * &h2 / &four)?.mul(&i2)?)?;
    let d2 = one.sub(&scalar(a2 * a3 * &h2 / &four)?.mul(&i1)?)?;
    let rhs2 = RationalFunction::new(d2.denominator().clone(), d2.numerator().clone())?;
    Ok([rhs1 == f1, rhs2 == f2])
}

/// A case label, its matrix and the functions listed for it.
#[derive(Clone, Debug)]
pub struct TableRow {
    pub case: String,
    pub matrix: Mat4,
    pub functions: Vec<RationalFunction>,
}

fn row(case: &str, matrix: Mat4, fs: &[&str]) -> TableRow {
    TableRow { case: case.to_string(), matrix, functions: fs.iter().map(|t| rf(t)).collect() }
}

fn a_matrix(name: &str) -> Mat4 {
    cubes::case_a_examples().into_iter().find(|(n, _)| *n == name).expect("known case").1
}

fn b_matrix(name: &str) -> Mat4 {
    cubes::case_b_representatives().into_iter().find(|(n, _, _)| *n == name).expect("known case").1
}

const TABLE_A: [(&str, [&str; 2]); 5] = [
    ("i", ["(x3+x4)*(x1+x2)/((x2-x3)*(x1-x4))", "(x2+x3)*(x1+x4)/((x2-x3)*(x1-x4))"]),
    ("ii", ["(x1*x2+x3*x4)/((x3+x4)*(x1+x2))", "((x3-x4)*(x1-x2)/((x3+x4)*(x1+x2)))^2"]),
    ("iii", ["(x3+x4)*(x1+x2)/((x3-x4)*(x1-x2))", "((x1*x2+x3*x4)/((x3-x4)*(x1-x2)))^2"]),
    (
        "iv",
        [
            "(x1*x2+x1*x3+x1*x4+x2*x3+x2*x4+x3*x4)^2/((x1*x2+x3*x4)^2+(x1*x3+x2*x4)^2+(x1*x4+x2*x3)^2)",
            "(x3+x4)*(x1+x2)*(x2+x4)*(x1+x3)*(x2+x3)*(x1+x4)/((x3-x4)*(x2-x4)*(x2-x3)*(x1-x4)*(x1-x3)*(x1-x2))",
        ],
    ),
    (
        "v",
        [
            "((x2+x4)^2*(x1+x3)^2+(x2-x4)^2*(x1-x3)^2)/((x3+x4)*(x1+x2)*(x3-x4)*(x1-x2)-(x2+x3)*(x1+x4)*(x2-x3)*(x1-x4))",
            "(x2+x4)*(x1+x3)*(x2-x4)*(x1-x3)/((x1+x2)*(x3+x4)*(x1+x4)*(x2+x3)+(x1+x2)*(x3+x4)*(x1-x4)*(x2-x3)-(x1-x2)*(x3-x4)*(x1+x4)*(x2+x3)-(x1-x2)*(x3-x4)*(x1-x4)*(x2-x3))",
        ],
    ),
];

/// Type-A rows; case `(ii)` appears once for each of its two matrices.
pub fn table_a() -> Vec<TableRow> {
    let mut rows: Vec<TableRow> = TABLE_A.iter().map(|(c, fs)| row(c, a_matrix(c), fs)).collect();
    let (_, ii) = TABLE_A[1];
    rows.insert(2, row("ii'", a_matrix("ii'"), &ii));
    rows
}

fn xiv_functions() -> [String; 3] {
    let cyc = [(2, 3, 4), (3, 4, 2), (4, 2, 3)];
    let sum = |f: &dyn Fn(usize, usize, usize) -> String| cyc.iter().map(|&(i, j, k)| f(i, j, k)).collect::<Vec<_>>().join("+");
    let n1 = sum(&|i, j, k| format!("(x1^2+x{i}^2)*(x{j}-x{k})^2"));
    let d1 = sum(&|i, j, k| format!("(x1^2+x{i}^2)*(x{j}+x{k})^2"));
    let n2 = sum(&|i, j, k| format!("x1*x{i}*(x{j}-x{k})^2"));
    let d2 = sum(&|i, j, k| format!("x1*x{i}*(x{j}+x{k})^2"));
    [
        format!("({n1})/({d1})"),
        format!("({n2})/({d2})"),
        format!("(x1*x2+x1*x3+x1*x4+x2*x3+x2*x4+x3*x4)*(x1*x2+x1*x3+x1*x4-x2*x3-x2*x4-x3*x4)/({d2})"),
    ]
}

const B_II: [&str; 3] = [
    "(x2^2-x4^2)*(x1+x3)^2/((x3^2-x4^2)*(x1+x2)^2)",
    "(x2-x3)^2*(x1^2-x4^2)/((x3^2-x4^2)*(x1+x2)^2)",
    "(x2+x3)^2*(x1^2-x4^2)/((x3^2-x4^2)*(x1+x2)^2)",
];
const B_III: [&str; 3] = [
    "((x2-x4)*(x1+x3)+(x2-x3)*(x1+x4))/((x3-x4)*(x1-x2))",
    "((x2-x3)*(x1-x4)+(x2-x4)*(x1-x3))/((x3+x4)*(x1+x2))",
    "((x2-x4)*(x1+x3)-(x2-x3)*(x1+x4))/((x3+x4)*(x1+x2))",
];
const B_VI: [&str; 3] = [
    "(x2-x3)*(x1-x4)/((x3+x4)*(x1+x2))",
    "(x2+x3)*(x1+x4)/((x3+x4)*(x1+x2))",
    "((x2-x4)*(x1+x3)-(x2+x4)*(x1-x3))/((x3+x4)*(x1+x2))",
];
const B_IX: [&str; 3] = [
    "(2*x1*x2+x1*x3-x1*x4-x2*x3-x2*x4)/(2*x1*x2-x1*x3+x1*x4+x2*x3+x2*x4)",
    "(x2+x4)*(x1+x3)*(x2-x3)*(x1+x4)/((x3^2+x4^2)*(x1^2+x2^2))",
    "(x2-x4)*(x1-x3)*(x2+x3)*(x1-x4)/((x3^2+x4^2)*(x1^2+x2^2))",
];
const B_XI: [&str; 3] = [
    "(x1*x4-x2*x3)^2/(x1*x4+x2*x3)^2",
    "(x1^2*x2^2+x1^2*x3^2+4*x1*x2*x3*x4+x2^2*x4^2+x3^2*x4^2)/(x1*x4+x2*x3)^2",
    "(x1^2*x2^2-2*x1^2*x2*x3-x1^2*x3^2+x2^2*x4^2+2*x2*x3*x4^2-x3^2*x4^2)/(x1*x4+x2*x3)^2",
];
const B_XII: [&str; 3] = [
    "(x1-x2)/(x1+x2)",
    "2*(x2^2+x4^2)*(x1^2+x3^2)/((x1+x2)^2*(x3^2+x4^2))",
    "2*(x2^2+x3^2)*(x1^2+x4^2)/((x1+x2)^2*(x3^2+x4^2))",
];
const B_XIII: [&str; 3] = [
    "(x2+x4)*(x1+x3)/(x1*x2+2*x1*x3+x1*x4+x2*x3+2*x2*x4+x3*x4)",
    "(x1*x3-x2*x4)/(x1*x2+2*x1*x3+x1*x4+x2*x3+2*x2*x4+x3*x4)",
    "(x1^2*x2^2+x1^2*x4^2-4*x1*x2*x3*x4+x2^2*x3^2+x3^2*x4^2)/(x1^2*x2^2+2*x1^2*x3^2+x1^2*x4^2-8*x1*x2*x3*x4+x2^2*x3^2+2*x2^2*x4^2+x3^2*x4^2)",
];

/// Type-B rows in table order; `(ix)` and `(x)` share their functions.
pub fn table_b() -> Vec<TableRow> {
    let xiv = xiv_functions();
    let xiv: Vec<&str> = xiv.iter().map(String::as_str).collect();
    vec![
        row("ii", b_matrix("ii"), &B_II),
        row("iii", b_matrix("iii"), &B_III),
        row("vi", b_matrix("vi"), &B_VI),
        row("ix", b_matrix("ix"), &B_IX),
        row("x", b_matrix("x"), &B_IX),
        row("xi", b_matrix("xi"), &B_XI),
        row("xii", b_matrix("xii"), &B_XII),
        row("xiii", b_matrix("xiii"), &B_XIII),
        row("xiv", b_matrix("xiv"), &xiv),
    ]
}

/// How a listed function enters an invariant set of higher order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Lift {
    Plain,
    Square,
    Tilde,
}

pub const RELATION_B: [(&str, [Lift; 3]); 6] = [
    ("ix", [Lift::Tilde, Lift::Square, Lift::Square]),
    ("x", [Lift::Tilde, Lift::Square, Lift::Square]),
    ("xi", [Lift::Plain, Lift::Plain, Lift::Square]),
    ("xii", [Lift::Square, Lift::Plain, Lift::Plain]),
    ("xiii", [Lift::Plain, Lift::Tilde, Lift::Square]),
    ("xiv", [Lift::Plain, Lift::Plain, Lift::Square]),
];

/// The combined functions prescribed for a higher-order case.
pub fn relation_b_functions(tb: &TableRow, lifts: &[Lift; 3]) -> Result<Vec<RationalFunction>, InvariantsError> {
    tb.functions
        .iter()
        .zip(lifts)
        .map(|(f, l)| match l {
            Lift::Plain => Ok(f.clone()),
            Lift::Square => Ok(f.pow(2)),
            Lift::Tilde => super::k_invariant_lift(f),
        })
        .collect()
}

fn q(i: usize, j: usize) -> String {
    format!("(x{i}^2-x{j}^2)")
}

fn table_c_row5(uncorrected: bool) -> String {
    let num = format!("{}*{}*{}*{}*{}*{}", q(1, 2), q(3, 4), q(1, 3), q(2, 4), q(1, 4), q(2, 3));
    let sig = [[1, 2, 3, 4], [1, 3, 4, 2], [1, 4, 2, 3]];
    let d = |i: usize, j: usize| if uncorrected { format!("(x{i}-x{j})") } else { q(i, j) };
    let den: Vec<String> = sig
        .iter()
        .map(|s| format!("({}*{})^2*{}*{}", d(s[0], s[1]), d(s[2], s[3]), d(s[0], s[2]), d(s[1], s[3])))
        .collect();
    format!("{num}/({})", den.join("+"))
}

/// Row 5 of the type-C table with plain differences in the denominator.
pub fn table_c_row5_uncorrected() -> Result<RationalFunction, InvariantsError> {
    RationalFunction::parse(&table_c_row5(true))
}

/// Type-C rows; the last uses differences of squares in the denominator.
pub fn table_c() -> Vec<TableRow> {
    let funcs = [
        format!("{}*{}/({}*{})", q(1, 2), q(3, 4), q(1, 3), q(2, 4)),
        format!("{}*{}*{}*{}/({}^2*{}^2)", q(1, 3), q(2, 4), q(1, 4), q(2, 3), q(1, 2), q(3, 4)),
        format!("{}*{}*{}*{}/({}^2*{}^2)", q(1, 2), q(3, 4), q(1, 4), q(2, 3), q(1, 3), q(2, 4)),
        format!("{}*{}*{}*{}/({}^2*{}^2)", q(1, 2), q(3, 4), q(1, 3), q(2, 4), q(1, 4), q(2, 3)),
        table_c_row5(false),
    ];
    cubes::case_c_examples()
        .into_iter()
        .zip(funcs.iter())
        .enumerate()
        .map(|(i, ((_, m), f))| row(&(i + 1).to_string(), m, &[f.as_str()]))
        .collect()
}

/// `J` for case `(ii)` in its uncorrected form.
pub fn j_ii_uncorrected() -> RationalFunction {
    rf("(x1*x2+x3*x4)/(x1*x4+x2*x3)")
}

pub fn j_ii() -> RationalFunction {
    rf("(x1-x2)*(x3-x4)/((x1+x2)*(x3+x4))")
}

pub fn j_iii() -> RationalFunction {
    rf("(x1*x2+x3*x4)/((x3-x4)*(x1-x2))")
}

pub fn j_iv() -> [RationalFunction; 3] {
    [
        rf("(x1+x2)*(x3+x4)/((x1-x4)*(x2-x3))"),
        rf("-(x1+x4)*(x2+x3)/((x1-x3)*(x2-x4))"),
        rf("(x1+x3)*(x2+x4)/((x1-x2)*(x3-x4))"),
    ]
}

pub fn j_v() -> [RationalFunction; 2] {
    [rf("(x1+x4)*(x2+x3)/((x1-x4)*(x2-x3))"), rf("(x1+x2)*(x3+x4)/((x1-x2)*(x3-x4))")]
}

pub fn case_a_matrix(name: &str) -> Mat4 {
    a_matrix(name)
}

pub fn case_b_matrix(name: &str) -> Mat4 {
    b_matrix(name)
}
