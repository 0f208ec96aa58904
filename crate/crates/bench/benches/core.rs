use std::path::PathBuf;

use criterion::{black_box, criterion_group, criterion_main, Criterion};
use dpx_core::{check_dedata, confluence_check, normal_form, semiclassical_limit, Document};

fn load(name: &str) -> Document {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../cli/examples").join(format!("{name}.dpx"));
    Document::parse(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn bench(c: &mut Criterion) {
    let t1 = load("t1").require_dedata().unwrap().clone();
    c.bench_function("check_dedata/t1", |b| b.iter(|| check_dedata(black_box(&t1)).unwrap()));

    let om2 = load("om2").require_dedata().unwrap().clone();
    c.bench_function("check_dedata/om2", |b| b.iter(|| check_dedata(black_box(&om2)).unwrap()));

    let fam = load("t_family").require_family().unwrap().clone();
    let word: Vec<usize> = vec![2, 1, 0, 2, 1, 0];
    c.bench_function("normal_form/t_family", |b| {
        b.iter(|| normal_form(&fam.presentation, black_box(&word)).unwrap())
    });
    c.bench_function("limit/t_family", |b| b.iter(|| semiclassical_limit(black_box(&fam)).unwrap()));

    let dim3 = load("dim3_family").require_family().unwrap().clone();
    let mut group = c.benchmark_group("confluence");
    group.sample_size(10);
    group.bench_function("dim3_family/3", |b| b.iter(|| confluence_check(&dim3.presentation, 3).unwrap()));
    group.finish();
}

criterion_group!(benches, bench);
criterion_main!(benches);
