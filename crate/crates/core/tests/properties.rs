use std::sync::OnceLock;

use cremona_core::birmap::{degree_sequence, ProjMap, ProjPoint};
use cremona_core::cubes::{enumerate_group, ElementType, GroupElement};
use cremona_core::invariants::{composite, conjugate_invariant, invariance_class, table_a, InvarianceClass};
use cremona_core::picard::{lattice_degree, pushforward_matrix};
use cremona_core::polyring::{gcd, parse_poly, HomogPoly, Monomial};
use cremona_core::seqfit::{generating_function, min_recurrence};
use cremona_core::singular::kappa_lambda;
use cremona_core::linalg;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn group() -> &'static [GroupElement] {
    static G: OnceLock<Vec<GroupElement>> = OnceLock::new();
    G.get_or_init(|| enumerate_group().expect("group closes"))
}

fn monomial(vars: &[usize]) -> Monomial {
    let mut e = [0u32; 4];
    for &v in vars {
        e[v] += 1;
    }
    Monomial::from_exps(&e)
}

fn poly_of_degree(d: usize) -> impl Strategy<Value = HomogPoly> {
    prop::collection::vec((prop::collection::vec(0..4usize, d), -5i64..=5), 1..5).prop_map(|terms| {
        HomogPoly::from_terms(4, terms.into_iter().map(|(vs, c)| (monomial(&vs), BigInt::from(c)))).expect("homogeneous")
    })
}

fn nonzero_poly(d: usize) -> impl Strategy<Value = HomogPoly> {
    poly_of_degree(d).prop_filter("nonzero", |p| !p.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws(a in poly_of_degree(2), b in poly_of_degree(2), c in poly_of_degree(1)) {
        let lhs = &a.try_add(&b).unwrap() * &c;
        let rhs = (&a * &c).try_add(&(&b * &c)).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!(a.try_sub(&a).unwrap().is_zero());
    }

    #[test]
    fn display_parse_round_trip(a in poly_of_degree(3)) {
        prop_assert_eq!(parse_poly(&a.to_string(), 4).unwrap(), a);
    }

    #[test]
    fn exact_division_undoes_product(a in nonzero_poly(2), b in nonzero_poly(2)) {
        prop_assert_eq!((&a * &b).divide_exact(&b).unwrap(), a);
    }

    #[test]
    fn gcd_contains_common_factor(a in nonzero_poly(1), b in nonzero_poly(1), c in nonzero_poly(1)) {
        let g = gcd(&(&a * &c), &(&b * &c));
        prop_assert!(g.divide_exact(&c).is_ok());
        prop_assert!((&a * &c).divide_exact(&g).is_ok());
        prop_assert!((&b * &c).divide_exact(&g).is_ok());
    }

    #[test]
    fn point_normalization(v in prop::collection::vec(-20i64..=20, 4), k in prop_oneof![-7i64..=-1, 1i64..=7]) {
        prop_assume!(v.iter().any(|&x| x != 0));
        let p = ProjPoint::from_i64(&v).unwrap();
        let scaled: Vec<i64> = v.iter().map(|x| x * k).collect();
        prop_assert_eq!(&ProjPoint::from_i64(&scaled).unwrap(), &p);
        let first = p.coords().iter().find(|c| !c.is_zero()).unwrap();
        prop_assert!(first.is_positive());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn group_closed_under_products(i in 0..576usize, j in 0..576usize) {
        let g = &group()[i];
        let h = &group()[j];
        let p = g.mul(h);
        prop_assert!(group().contains(&p));
        prop_assert_eq!(g.mul(&g.inverse()), GroupElement::identity());
        prop_assert!(p.classify().is_ok());
        prop_assert_eq!(g.pow(g.order()), GroupElement::identity());
    }

    #[test]
    fn pushforward_is_unimodular(i in 0..576usize) {
        let m = pushforward_matrix(&group()[i]);
        prop_assert_eq!(linalg::det_i(&m.entries).abs(), BigInt::one());
    }

    #[test]
    fn lattice_degree_matches_heuristic(i in 0..576usize) {
        let g = &group()[i];
        let seq = degree_sequence(&composite(&g.matrix()), 3, 300);
        for (n, d) in seq.values.iter().enumerate() {
            prop_assert_eq!(&lattice_degree(g, n as u64), &BigInt::from(*d));
        }
    }

    #[test]
    fn kappa_degree_is_product_minus_one(i in 0..576usize) {
        let phi = composite(&group()[i].matrix());
        let (kappa, lambda) = kappa_lambda(&phi).unwrap();
        prop_assert_eq!(kappa.degree(), Some(8));
        prop_assert_eq!(lambda.degree(), Some(8));
    }

    #[test]
    fn conjugation_preserves_invariance(i in 0..576usize, row in 0..6usize) {
        let h = &group()[i];
        prop_assume!(h.classify().unwrap() == ElementType::B);
        let r = &table_a()[row];
        let g = GroupElement::from_mat(r.matrix).unwrap();
        let conj = composite(&h.mul(&g).mul(&h.inverse()).matrix());
        for f in &r.functions {
            let moved = conjugate_invariant(f, h).unwrap();
            prop_assert_eq!(invariance_class(&conj, &moved, 1).unwrap(), InvarianceClass::Invariant);
        }
    }

    #[test]
    fn recurrence_recovery(
        coeffs in prop::collection::vec(-3i64..=3, 1..4),
        init in prop::collection::vec(-9i64..=9, 3),
    ) {
        let r = coeffs.len();
        let mut s: Vec<BigInt> = init[..r].iter().map(|&x| BigInt::from(x)).collect();
        while s.len() < 2 * r + 6 {
            let n = s.len();
            let next: BigInt = coeffs.iter().enumerate().map(|(i, &c)| BigInt::from(c) * &s[n - 1 - i]).sum();
            s.push(next);
        }
        let rec = min_recurrence(&s).unwrap();
        prop_assert!(rec.order <= r);
        prop_assert!(rec.fits(&s));
        let gf = generating_function(&s).unwrap();
        let expanded: Vec<BigRational> = gf.expand(s.len());
        let want: Vec<BigRational> = s.iter().map(|x| BigRational::from_integer(x.clone())).collect();
        prop_assert_eq!(expanded, want);
    }
}

#[test]
fn identity_map_has_constant_degrees() {
    let seq = degree_sequence(&ProjMap::identity(4), 5, 300);
    assert_eq!(seq.values, vec![1; 6]);
}
