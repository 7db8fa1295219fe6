use criterion::{black_box, criterion_group, criterion_main, Criterion};
use hyperfield_bench::{
    dense_series, fine_quintic, pair, sign_cubic, tropical_sextic, worked_system,
};
use hyperfield_core::rat::ratio;
use hyperfield_core::solve::harness::{kapranov_harness, KapranovConfig};
use hyperfield_core::solve::{multiplicity, roots_univariate};
use hyperfield_core::tropgeo::{
    fine_hypersurface, fine_intersect, homotopy_start, stable_intersect,
};
use hyperfield_core::{FieldKind, HElem, HomDescriptor, Hyperfield};

fn hypersums(c: &mut Criterion) {
    let p = Hyperfield::Phase;
    let (a, b) = (HElem::dir(3, 7), HElem::dir(-5, 2));
    c.bench_function("hypersum/phase", |bn| {
        bn.iter(|| p.add_elems(black_box(&a), black_box(&b)))
    });
    let q = Hyperfield::extension(Hyperfield::rationals(), 1);
    let (x, y) = (pair(HElem::int(2), 1, 2), pair(HElem::int(-2), 1, 2));
    c.bench_function("hypersum/rational_extension", |bn| {
        bn.iter(|| q.add_elems(black_box(&x), black_box(&y)))
    });
    let w = Hyperfield::quotient(7, &[1, 2, 4]).unwrap();
    let one = w.one();
    c.bench_function("hypersum/quotient", |bn| {
        bn.iter(|| w.add_elems(black_box(&one), black_box(&one)))
    });
}

fn roots(c: &mut Criterion) {
    let t = tropical_sextic();
    c.bench_function("roots/tropical_sextic", |bn| {
        bn.iter(|| roots_univariate(black_box(&t)).unwrap())
    });
    let f = fine_quintic();
    c.bench_function("roots/fine_quintic", |bn| {
        bn.iter(|| roots_univariate(black_box(&f)).unwrap())
    });
    let s = sign_cubic();
    c.bench_function("multiplicity/sign_cubic", |bn| {
        bn.iter(|| multiplicity(black_box(&s), &HElem::Sign(1)).unwrap())
    });
}

fn series(c: &mut Criterion) {
    let (a, b) = (dense_series(8), dense_series(12));
    c.bench_function("series/mul", |bn| {
        bn.iter(|| black_box(&a).mul(black_box(&b)).unwrap())
    });
    c.bench_function("series/inv", |bn| {
        bn.iter(|| black_box(&b).inv(&ratio(8, 1)).unwrap())
    });
}

fn curves(c: &mut Criterion) {
    let fval = HomDescriptor::fval(FieldKind::Rationals);
    let [p, q] = worked_system();
    let (pp, qq) = (p.pushforward(&fval).unwrap(), q.pushforward(&fval).unwrap());
    c.bench_function("tropgeo/fine_hypersurface", |bn| {
        bn.iter(|| fine_hypersurface(black_box(&qq)).unwrap())
    });
    let (c1, c2) = (
        fine_hypersurface(&pp).unwrap(),
        fine_hypersurface(&qq).unwrap(),
    );
    c.bench_function("tropgeo/fine_intersect", |bn| {
        bn.iter(|| fine_intersect(black_box(&c1), black_box(&c2)).unwrap())
    });
    c.bench_function("tropgeo/stable_intersect", |bn| {
        bn.iter(|| stable_intersect(&c1, &c2, black_box(0)).unwrap())
    });
    let sys = [p, q];
    c.bench_function("tropgeo/homotopy_start", |bn| {
        bn.iter(|| homotopy_start(black_box(&sys)).unwrap())
    });
}

fn harness(c: &mut Criterion) {
    let fval = HomDescriptor::fval(FieldKind::Rationals);
    let cfg = KapranovConfig {
        trials: 10,
        ..KapranovConfig::default()
    };
    c.bench_function("harness/kapranov_fval_10", |bn| {
        bn.iter(|| kapranov_harness(&fval, black_box(&cfg)).unwrap())
    });
}

criterion_group!(benches, hypersums, roots, series, curves, harness);
criterion_main!(benches);
