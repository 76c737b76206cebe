use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use superq::correspondence::{verify_isomorphism, VerifyOptions};
use superq::hopf::verify_hopf_correspondence;
use superq::presentation::Presentation;
use superq::rootdata::Algebra;
use superq::superalg::{ideal_member, Ctx, MemberOptions, Strategy};
use superq_bench::{ideal_instance, mixed_word, pair, system};

fn normalize(c: &mut Criterion) {
    let ctx = Ctx::new(&system(Algebra::OspOdd, 2, 1, "ede"), 1).unwrap();
    let mut group = c.benchmark_group("normalize");
    for len in [4, 8, 12] {
        let x = mixed_word(&ctx, len);
        for (name, s) in [("right-multiply", Strategy::RightMultiply), ("leftmost-pair", Strategy::LeftmostPair)] {
            group.bench_with_input(BenchmarkId::new(name, len), &x, |b, x| b.iter(|| ctx.normalize_with(black_box(x), s)));
        }
    }
    group.finish();
}

fn membership(c: &mut Criterion) {
    let mut group = c.benchmark_group("ideal_member");
    for (label, sys) in [("osp(5|2) ede", system(Algebra::OspOdd, 2, 1, "ede")), ("osp(4|2)^(2) ed", system(Algebra::OspAff2, 1, 1, "ed"))] {
        let p = Presentation::new(&sys, 1).unwrap();
        let (x, gens) = ideal_instance(&p);
        let rank = p.ctx.rank();
        for (mode, opts) in [("exact", MemberOptions::default()), ("prescreen", MemberOptions { prescreen: Some(1) })] {
            group.bench_function(BenchmarkId::new(mode, label), |b| {
                b.iter(|| ideal_member(black_box(&x), &gens, rank, &opts).unwrap())
            });
        }
    }
    group.finish();
}

fn verify(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify");
    group.sample_size(10);
    for (label, p) in [("osp(5|2) eed", pair(Algebra::OspOdd, 2, 1, "eed")), ("sl(3|2)^(2) ed", pair(Algebra::SlOddAff2, 1, 1, "ed"))] {
        group.bench_function(BenchmarkId::new("iso", label), |b| {
            b.iter(|| verify_isomorphism(black_box(&p), &VerifyOptions::default()).unwrap())
        });
        group.bench_function(BenchmarkId::new("hopf", label), |b| b.iter(|| verify_hopf_correspondence(black_box(&p)).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, normalize, membership, verify);
criterion_main!(benches);
