use criterion::{black_box, criterion_group, criterion_main, Criterion};

use cremona_bench::named;
use cremona_core::birmap::{degree_sequence, ProjMap, DEFAULT_DEGREE_CAP};
use cremona_core::cubes::{self, GroupElement};
use cremona_core::invariants::{self as inv, DivisorSpec};
use cremona_core::picard;
use cremona_core::polyring::{gcd, parse_poly};
use cremona_core::seqfit;

fn polynomial_kernels(c: &mut Criterion) {
    let a = parse_poly("(x1+2*x2-x3)^3*(x2-x4)^2", 4).unwrap();
    let b = parse_poly("(x1+2*x2-x3)^2*(x1+x3+x4)^3", 4).unwrap();
    c.bench_function("gcd_degree5", |bn| bn.iter(|| gcd(black_box(&a), black_box(&b))));
    let c3 = ProjMap::cremona(4);
    let g0c3 = named("g0c3");
    c.bench_function("compose_g0c3_twice", |bn| bn.iter(|| ProjMap::compose(black_box(&g0c3), black_box(&g0c3)).unwrap()));
    c.bench_function("compose_c3_c3", |bn| bn.iter(|| ProjMap::compose(black_box(&c3), black_box(&c3)).unwrap()));
}

fn degree_kernels(c: &mut Criterion) {
    let type_c = named("typeC");
    c.bench_function("degree_sequence_typeC_n5", |bn| bn.iter(|| degree_sequence(black_box(&type_c), 5, DEFAULT_DEGREE_CAP)));
    let g = GroupElement::from_mat(cubes::case_c_examples()[0].1).unwrap();
    c.bench_function("lattice_degrees_typeC_n20", |bn| bn.iter(|| picard::lattice_degrees(black_box(&g), 20)));
    c.bench_function("exact_entropy_typeC", |bn| bn.iter(|| picard::exact_entropy(black_box(&g))));
    let seq: Vec<_> = picard::type_c_recurrence(19).into_iter().map(|v| v[0].clone()).collect();
    c.bench_function("seqfit_typeC_20", |bn| bn.iter(|| seqfit::generating_function(black_box(&seq)).unwrap()));
}

fn group_kernels(c: &mut Criterion) {
    let mut g = c.benchmark_group("group");
    g.sample_size(10);
    g.bench_function("enumerate_576", |bn| bn.iter(|| cubes::enumerate_group().unwrap()));
    g.bench_function("conjugacy_classes_b", |bn| bn.iter(|| cubes::conjugacy_classes_b().unwrap()));
    g.finish();
}

fn invariant_kernels(c: &mut Criterion) {
    let rows = inv::table_a();
    let phi = inv::composite(&rows[0].matrix);
    let f = rows[0].functions[0].clone();
    c.bench_function("invariance_class_tableA_i", |bn| bn.iter(|| inv::invariance_class(black_box(&phi), black_box(&f), 1).unwrap()));
    let type_c = named("typeC");
    let pencil = inv::desmic_pencil();
    let d = DivisorSpec(vec![2; 4]);
    c.bench_function("covariance_desmic_typeC", |bn| bn.iter(|| inv::check_covariance(black_box(&type_c), &pencil, &d).unwrap()));
}

criterion_group!(benches, polynomial_kernels, degree_kernels, group_kernels, invariant_kernels);
criterion_main!(benches);
