use super::*;
use crate::birmap::MapSpec;
use crate::cubes::{GroupElement, SpecialPoints};
use crate::khk::{build_euler, EulerParams};

fn z(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn class(m: &cubes::Mat4, r: &RationalFunction) -> InvarianceClass {
    invariance_class(&composite(m), r, DEFAULT_K_MAX).unwrap()
}

use crate::cubes;

#[test]
fn parse_reduces_and_rejects() {
    let r = RationalFunction::parse("(x1^2-x2^2)/((x1+x2)*x3)").unwrap();
    assert_eq!(r, RationalFunction::parse("(x1-x2)/x3").unwrap());
    assert_eq!(RationalFunction::parse("x1/(x2*x3)"), Err(InvariantsError::DegreeMismatch { num: 1, den: 2 }));
    assert_eq!(RationalFunction::parse("x1/(x2-x2)"), Err(InvariantsError::Poly(PolyError::DivisionByZero)));
    assert_eq!(r.eval(&z(&[3, 1, 2, 1])), Some(BigRational::one()));
}

#[test]
fn cross_ratio_under_cremona() {
    let c3 = ProjMap::cremona(4);
    let r = RationalFunction::parse("x1*x2/(x3*x4)").unwrap();
    assert_eq!(invariance_class(&c3, &r, 6).unwrap(), InvarianceClass::KInvariant(2));
    let s = RationalFunction::parse("(x1*x2+x3*x4)/(x1*x3+x2*x4)").unwrap();
    assert_eq!(invariance_class(&c3, &s, 6).unwrap(), InvarianceClass::Invariant);
}

#[test]
fn table_a_functions_are_invariant() {
    for row in table_a() {
        for f in &row.functions {
            assert_eq!(class(&row.matrix, f), InvarianceClass::Invariant, "case {} {f}", row.case);
        }
    }
}

#[test]
fn anti_invariants() {
    let ii = case_a_matrix("ii");
    assert_eq!(class(&ii, &j_ii_uncorrected()), InvarianceClass::KInvariant(2));
    assert_eq!(class(&ii, &j_ii()), InvarianceClass::AntiInvariant);
    assert_eq!(class(&case_a_matrix("iii"), &j_iii()), InvarianceClass::AntiInvariant);
    let iv = composite(&case_a_matrix("iv"));
    let js = j_iv();
    for j in &js {
        assert_eq!(invariance_class(&iv, j, 6).unwrap(), InvarianceClass::KInvariant(3));
    }
    assert_eq!(pullback_permutation(&iv, &js).unwrap(), vec![Some(2), Some(0), Some(1)]);
    for j in &j_v() {
        assert_eq!(class(&case_a_matrix("v"), j), InvarianceClass::KInvariant(4));
    }
}

#[test]
fn squares_of_anti_invariants_are_invariant() {
    let ii = case_a_matrix("ii");
    assert_eq!(class(&ii, &j_ii().pow(2)), InvarianceClass::Invariant);
    assert_eq!(class(&case_a_matrix("iii"), &j_iii().pow(2)), InvarianceClass::Invariant);
}

#[test]
fn table_b_functions() {
    for row in table_b() {
        for f in &row.functions {
            let c = class(&row.matrix, f);
            if row.case == "x" {
                assert_ne!(c, InvarianceClass::Invariant, "{f}");
            } else {
                assert_eq!(c, InvarianceClass::Invariant, "case {} {f}", row.case);
            }
        }
    }
}

#[test]
fn relation_b_combinations() {
    let rows = table_b();
    for (case, lifts) in RELATION_B {
        let row = rows.iter().find(|r| r.case == case).unwrap();
        let fs = relation_b_functions(row, &lifts).unwrap();
        let g = GroupElement::from_mat(row.matrix).unwrap();
        let ord = g.order();
        let all = (1..ord).all(|p| {
            let phi = composite(&g.pow(p).matrix());
            fs.iter().all(|f| invariance_class(&phi, f, 1).unwrap() == InvarianceClass::Invariant)
        });
        assert_eq!(all, case != "x", "case {case}");
    }
}

#[test]
fn vanishing_lifts() {
    let rows = table_b();
    let row = |c: &str| rows.iter().find(|r| r.case == c).unwrap().clone();
    assert!(k_invariant_lift(&row("xiii").functions[1]).unwrap().is_zero());
    assert!(!k_invariant_lift(&row("ix").functions[0]).unwrap().is_zero());
}

#[test]
fn table_c_functions() {
    for row in table_c() {
        for f in &row.functions {
            assert_eq!(class(&row.matrix, f), InvarianceClass::Invariant, "row {} {f}", row.case);
        }
    }
    assert_eq!(table_c_row5_uncorrected(), Err(InvariantsError::DegreeMismatch { num: 12, den: 6 }));
}

#[test]
fn desmic_relation() {
    let [a, b, c] = desmic_quartics();
    assert!(a.try_sub(&b).unwrap().try_add(&c).unwrap().is_zero());
    assert_eq!(span_rank(&[a, b, c]), 2);
}

#[test]
fn covariance_of_quadric_systems() {
    let g0c3 = MapSpec::parse("g0c3").unwrap().resolve().unwrap();
    let cov = check_covariance(&g0c3, &sigma_p(), &DivisorSpec::hbar(4)).unwrap();
    assert!(!linalg::determinant(&cov.matrix).is_zero());
    let c3 = ProjMap::cremona(4);
    check_covariance(&c3, &sigma_b(), &DivisorSpec::hbar(4)).unwrap();
    check_covariance(&c3, &sigma_p(), &DivisorSpec::hbar(4)).unwrap();
    check_covariance(&c3, &sigma_q(), &DivisorSpec::hbar(4)).unwrap();
    for g in crate::cubes::CB_GENERATORS.iter() {
        let m = GroupElement::from_mat(*g).unwrap().to_map();
        check_covariance_under(&m, &sigma_b(), &DivisorSpec(vec![0, 0, 0, 0])).unwrap();
    }
}

#[test]
fn covariance_bookkeeping() {
    let c3 = ProjMap::cremona(4);
    assert!(matches!(
        check_covariance(&c3, &sigma_b(), &DivisorSpec(vec![1, 1, 1, 0])),
        Err(InvariantsError::DegreeBookkeeping { .. })
    ));
}

#[test]
fn desmic_pencil_covariant_under_type_c() {
    let phi = MapSpec::parse("typeC").unwrap().resolve().unwrap();
    check_covariance(&phi, &desmic_pencil(), &DivisorSpec(vec![2, 2, 2, 2])).unwrap();
    for row in table_c() {
        let cov = check_covariance(&composite(&row.matrix), &desmic_pencil(), &DivisorSpec(vec![2, 2, 2, 2])).unwrap();
        assert_eq!(cov.matrix.len(), 2);
    }
}

#[test]
fn euler_net_and_invariants() {
    let p = EulerParams::from_i64([1, 4, 9], 2).unwrap();
    let phi = build_euler(&p).unwrap();
    let cov = check_covariance(&phi, &euler_net(&p), &DivisorSpec::hbar(4)).unwrap();
    assert_eq!(cov.factor.degree(), Some(4));
    for i in euler_invariants(&p) {
        assert_eq!(invariance_class(&phi, &i, 1).unwrap(), InvarianceClass::Invariant, "{i}");
    }
    let uncorrected = euler_invariants_without_step(&p);
    assert!(uncorrected.iter().all(|i| invariance_class(&phi, i, 1).unwrap() != InvarianceClass::Invariant));
    for f in euler_literature_invariants(&p) {
        assert_eq!(invariance_class(&phi, &f, 1).unwrap(), InvarianceClass::Invariant, "{f}");
    }
    assert_eq!(euler_functional_relations(&p).unwrap(), [true, true]);
    let [i1, i2] = euler_invariants(&p);
    assert_eq!(jacobian_rank(&[i1, i2], &z(&[2, 3, 5, 7])), 2);
}

#[test]
fn no_quadric_through_all_twelve_points() {
    let all = SpecialPoints::all();
    assert!(forms_through(&all, 4, 2).is_empty());
    let ep: Vec<_> = all[..8].to_vec();
    assert_eq!(forms_through(&ep, 4, 2).len(), 3);
    assert_eq!(forms_through(&all[..4], 4, 2).len(), 6);
    assert_eq!(span_rank(&forms_through(&ep, 4, 2)), 3);
}

#[test]
fn conjugation_transports_invariants() {
    let row = &table_a()[0];
    let g = GroupElement::from_mat(row.matrix).unwrap();
    let h = GroupElement::from_mat(crate::cubes::CB_GENERATORS[0]).unwrap();
    let conj = h.mul(&g).mul(&h.inverse());
    for f in &row.functions {
        let moved = conjugate_invariant(f, &h).unwrap();
        assert_eq!(class(&conj.matrix(), &moved), InvarianceClass::Invariant);
    }
    assert_eq!(conjugate_invariant(&row.functions[0], &g), Err(InvariantsError::TypeMismatch));
}

#[test]
fn functional_independence() {
    let pt = z(&[2, 3, 5, 7]);
    for row in table_a() {
        assert_eq!(jacobian_rank(&row.functions, &pt), 2, "case {}", row.case);
    }
    for row in table_b().iter().filter(|r| r.case != "x") {
        assert_eq!(jacobian_rank(&row.functions, &pt), 3, "case {}", row.case);
    }
}

#[test]
fn divisor_spec_parsing() {
    assert_eq!(DivisorSpec::parse("1,1,1,1"), Some(DivisorSpec::hbar(4)));
    assert_eq!(DivisorSpec::parse("2,a"), None);
    assert_eq!(DivisorSpec(vec![2, 2, 2, 2]).total(), 8);
}

#[test]
fn lift_examples() {
    let r = RationalFunction::parse("x1/x2").unwrap();
    assert_eq!(k_invariant_lift(&r).unwrap(), RationalFunction::parse("(x1^2+x2^2)/(x1*x2)").unwrap());
    let s = RationalFunction::parse("(x1*x2+x3*x4)/(x1*x3+x2*x4)").unwrap();
    assert_eq!(k_invariant_lift(&s).unwrap(), s.add(&s).unwrap());
    let c = RationalFunction::constant(4, 5);
    assert_eq!(invariance_class(&ProjMap::cremona(4), &c, 1).unwrap(), InvarianceClass::Invariant);
}

#[test]
fn conjugation_by_transposition() {
    let swap = GroupElement::from_mat([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]).unwrap();
    let r = RationalFunction::parse("(x3+x4)*(x1+x2)/((x2-x3)*(x1-x4))").unwrap();
    let expected = RationalFunction::parse("(x3+x4)*(x1+x2)/((x2-x4)*(x1-x3))").unwrap();
    assert_eq!(conjugate_invariant(&r, &swap).unwrap(), expected);
    assert_eq!(conjugate_invariant(&r, &GroupElement::identity()).unwrap(), r);
}

#[test]
fn nets_are_disjoint() {
    let mut all = sigma_p().basis.clone();
    all.extend(sigma_q().basis.iter().cloned());
    assert!(independent(&all));
    assert_eq!(sigma_b().dimension(), 6);
}
