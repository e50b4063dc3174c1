use chipfire::{Policy, DEFAULT_BALL_CAP};
use chipfire_bench::{det4_pairing, seeded_pairing, tall_config};
use criterion::{criterion_group, criterion_main, BatchSize, Criterion};

fn bench_stabilize(c: &mut Criterion) {
    let mut group = c.benchmark_group("stabilize");
    for height in [10i64, 100, 1000] {
        let p = det4_pairing();
        let f = tall_config(&p, height);
        group.bench_function(format!("det4/height_{height}"), |b| {
            b.iter_batched(
                || f.clone(),
                |f| p.stabilize(&f, Policy::LowestIndex).unwrap(),
                BatchSize::SmallInput,
            )
        });
    }
    for n in [3usize, 5] {
        let p = seeded_pairing(42, n, 5, 60);
        let f = tall_config(&p, 5);
        group.bench_function(format!("random/n_{n}"), |b| {
            b.iter_batched(
                || f.clone(),
                |f| p.stabilize(&f, Policy::LowestIndex).unwrap(),
                BatchSize::SmallInput,
            )
        });
    }
    group.finish();
}

fn bench_classify(c: &mut Criterion) {
    let mut group = c.benchmark_group("classify");
    group.bench_function("det4/full_report", |b| {
        let p = det4_pairing();
        b.iter(|| p.all_class_reports(10).unwrap())
    });
    group.bench_function("random/det_up_to_40", |b| {
        let p = seeded_pairing(43, 3, 20, 40);
        b.iter(|| p.all_class_reports(40).unwrap())
    });
    group.finish();
}

fn bench_superstable(c: &mut Criterion) {
    let mut group = c.benchmark_group("superstable");
    let p = det4_pairing();
    let label = p.all_labels().into_iter().last().unwrap();
    group.bench_function("det4/descent", |b| {
        b.iter(|| p.superstable_config(&label).unwrap())
    });
    group.bench_function("det4/bruteforce", |b| {
        let start = p.critical_config(&label).unwrap();
        b.iter(|| {
            p.energy_minimizer_bruteforce(&start, DEFAULT_BALL_CAP)
                .unwrap()
        })
    });
    group.finish();
}

fn bench_construction(c: &mut Criterion) {
    let mut group = c.benchmark_group("construction");
    group.bench_function("pairing/n_6", |b| {
        b.iter(|| seeded_pairing(44, 6, 1, 10_000))
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_stabilize,
    bench_classify,
    bench_superstable,
    bench_construction
);
criterion_main!(benches);
