use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use indist_core::cayley::search_cayley;
use indist_core::constructions::{base_h, h_k, parity_g};
use indist_core::enumerate::{enumerate, Constraint, EnumerationMode};
use indist_core::scenery::exact_scenery_distribution;
use indist_core::walsh::walsh_transform;
use indist_core::{CubeFunction, Rational};

fn walsh(c: &mut Criterion) {
    let mut group = c.benchmark_group("walsh_transform");
    for n in [8usize, 12, 16] {
        let f = CubeFunction::from_fn(n, |v| if (v * 0x9e37_79b9) >> 7 & 1 == 1 { 1 } else { -1 }).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &f, |b, f| b.iter(|| walsh_transform(black_box(f))));
    }
    group.finish();
}

fn enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate_biased_n4");
    group.sample_size(10);
    for (name, mode) in [("oracle", EnumerationMode::Oracle), ("backtrack", EnumerationMode::Backtrack)] {
        group.bench_function(name, |b| b.iter(|| enumerate(4, Constraint::biased(None), mode, 1).unwrap()));
    }
    group.finish();
}

fn scenery(c: &mut Criterion) {
    let mut group = c.benchmark_group("exact_scenery");
    group.sample_size(10);
    let cases = [("g4_L8", parity_g(4).unwrap(), 8), ("h_L8", base_h(), 8), ("h2_L6", h_k(2).unwrap(), 6)];
    for (name, f, len) in &cases {
        group.bench_function(*name, |b| b.iter(|| exact_scenery_distribution(black_box(f), *len).unwrap()));
    }
    group.finish();
}

fn cayley(c: &mut Criterion) {
    let mut group = c.benchmark_group("cayley_search");
    group.sample_size(10);
    for pmax in [12usize, 16] {
        group.bench_with_input(BenchmarkId::from_parameter(pmax), &pmax, |b, &pmax| {
            b.iter(|| search_cayley(&[2, 3], pmax, Rational::new(1, 2)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, walsh, enumeration, scenery, cayley);
criterion_main!(benches);
