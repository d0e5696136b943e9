//! Timing for structure work: full enumeration, uniform sampling, rank
//! distributions, and the text round-trip.

use criterion::{black_box, criterion_group, criterion_main, Criterion};

use societies::enumerate::{hierarchies, orderings, Hierarchy, HierarchySampler};
use societies::rank;

fn enumeration(c: &mut Criterion) {
    c.bench_function("list-hierarchies-7", |b| {
        b.iter(|| hierarchies(black_box(7)).unwrap().count())
    });
    c.bench_function("list-orderings-6", |b| {
        b.iter(|| orderings(black_box(6)).unwrap().count())
    });
}

fn sampling(c: &mut Criterion) {
    c.bench_function("sample-hierarchy-8", |b| {
        let mut sampler = HierarchySampler::new(8, 17);
        b.iter(|| sampler.sample().height())
    });
}

fn rank_statistics(c: &mut Criterion) {
    c.bench_function("labeled-rank-distribution-60", |b| {
        b.iter(|| rank::labeled_rank_distribution(black_box(60)).mean())
    });
    c.bench_function("rank-total-120", |b| {
        b.iter(|| rank::rank_sum(black_box(120)))
    });
}

fn text_round_trip(c: &mut Criterion) {
    let all: Vec<String> = hierarchies(6).unwrap().map(|h| h.to_string()).collect();
    c.bench_function("parse-hierarchies-6", |b| {
        b.iter(|| {
            all.iter()
                .map(|text| Hierarchy::parse(black_box(text), 6).unwrap().height())
                .sum::<usize>()
        })
    });
}

criterion_group!(
    benches,
    enumeration,
    sampling,
    rank_statistics,
    text_round_trip
);
criterion_main!(benches);
