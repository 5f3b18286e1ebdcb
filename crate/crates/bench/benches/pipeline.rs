use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use kulikov_bench::{dense_matrix, rank_two_family, scalar_data};
use kulikov_core::fan::auto_scale;
use kulikov_core::lattice::component_group;
use kulikov_core::monodromy::{kummer_monodromy, standard_n};
use kulikov_core::report::{classify, ReportOptions};
use kulikov_core::strata::{base_change_counts, dual_complex, h_quotient};

fn smith_form(c: &mut Criterion) {
    let mut group = c.benchmark_group("component_group");
    for n in [2, 4, 8, 12] {
        let m = dense_matrix(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &m, |b, m| b.iter(|| component_group(black_box(m))));
    }
    group.finish();
}

fn fans(c: &mut Criterion) {
    let mut group = c.benchmark_group("auto_scale");
    for (name, d) in rank_two_family() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &d, |b, d| b.iter(|| auto_scale(black_box(d))));
    }
    group.finish();
}

fn complexes(c: &mut Criterion) {
    let mut group = c.benchmark_group("dual_and_quotient");
    for (name, d) in rank_two_family() {
        let fan = auto_scale(&d).expect("family is even").fan;
        group.bench_with_input(BenchmarkId::from_parameter(name), &fan, |b, fan| {
            b.iter(|| {
                let (a, act) = dual_complex(black_box(fan)).expect("fan is certified");
                h_quotient(&a, &act)
            })
        });
    }
    group.finish();
}

fn reports(c: &mut Criterion) {
    let mut group = c.benchmark_group("classify");
    let opts = ReportOptions { max_e: Some(6), ..Default::default() };
    for (name, d) in rank_two_family() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &d, |b, d| b.iter(|| classify(black_box(d), opts)));
    }
    group.finish();

    let d = scalar_data(1, 2);
    c.bench_function("base_change_e6_rank1", |b| b.iter(|| base_change_counts(black_box(&d), 6)));
}

fn monodromy(c: &mut Criterion) {
    let mut group = c.benchmark_group("kummer_monodromy");
    for t in 0..=2 {
        let n = standard_n(t).expect("ranks up to two are supported");
        group.bench_with_input(BenchmarkId::from_parameter(t), &n, |b, n| {
            b.iter(|| kummer_monodromy(black_box(n)).and_then(|m| m.nilpotency_index()))
        });
    }
    group.finish();
}

criterion_group!(benches, smith_form, fans, complexes, reports, monodromy);
criterion_main!(benches);
