use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use posnd::kernel::{builtin, check, Axiom, Logic, System};
use posnd::normalizer::{fixtures, normalize};
use posnd::semantics::{enumerate_models, soundness_probe, Bounds};
use posnd::translate::{classical_to_intuitionistic, derivation_to_labelled};
use posnd_bench::{box_tower, imp_redex_chain};

fn bench_check(c: &mut Criterion) {
    let corpus: Vec<_> = Axiom::corpus()
        .into_iter()
        .map(|(a, l)| (builtin(a, l).unwrap(), System::classical(l)))
        .collect();
    c.bench_function("check/builtin-corpus", |b| {
        b.iter(|| corpus.iter().all(|(d, sys)| check(black_box(d), *sys).ok))
    });
    let mut group = c.benchmark_group("check/box-tower");
    for n in [4, 16, 64] {
        let d = box_tower(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &d, |b, d| {
            b.iter(|| check(black_box(d), System::intuitionistic(Logic::S4)))
        });
    }
    group.finish();
}

fn bench_normalize(c: &mut Criterion) {
    let corpus = fixtures::corpus();
    c.bench_function("normalize/fixtures", |b| {
        b.iter(|| {
            for f in &corpus {
                normalize(black_box(&f.derivation), f.system).unwrap();
            }
        })
    });
    let mut group = c.benchmark_group("normalize/imp-chain");
    group.sample_size(20);
    for n in [4, 16, 32] {
        let d = imp_redex_chain(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &d, |b, d| {
            b.iter(|| normalize(black_box(d), System::intuitionistic(Logic::S4)).unwrap())
        });
    }
    group.finish();
}

fn bench_semantics(c: &mut Criterion) {
    c.bench_function("semantics/enumerate-3-2-1", |b| {
        b.iter(|| enumerate_models(black_box(Bounds::new(3, 2, 1)), Logic::S4).count())
    });
    let d = builtin(Axiom::D, Logic::D).unwrap();
    let mut group = c.benchmark_group("semantics/soundness-probe");
    group.sample_size(10);
    group.bench_function("d-axiom-2-2-1", |b| {
        b.iter(|| soundness_probe(black_box(&d), System::classical(Logic::D), Bounds::new(2, 2, 1)))
    });
    group.finish();
}

fn bench_translate(c: &mut Criterion) {
    let dia = builtin(Axiom::DiaIffNegBoxNeg, Logic::S4).unwrap();
    c.bench_function("translate/g-dia-iff", |b| {
        b.iter(|| classical_to_intuitionistic(black_box(&dia), System::classical(Logic::S4)).unwrap())
    });
    let four = builtin(Axiom::Four, Logic::S4).unwrap();
    c.bench_function("translate/labelled-four", |b| {
        b.iter(|| derivation_to_labelled(black_box(&four), System::classical(Logic::S4)).unwrap())
    });
}

criterion_group!(benches, bench_check, bench_normalize, bench_semantics, bench_translate);
criterion_main!(benches);
