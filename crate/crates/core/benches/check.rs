use std::fmt::Write;
use std::path::PathBuf;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use easytype::batch::check_sources_seq;
use easytype::driver::{corpus_files, Mode};

fn corpus() -> Vec<(String, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus");
    corpus_files(&dir)
        .expect("corpus directory")
        .into_iter()
        .map(|p| {
            let src = std::fs::read_to_string(&p).unwrap();
            (p.display().to_string(), src)
        })
        .collect()
}

/// A definition of `lines` chained bindings; ill-typed on its last binding when `bad`.
fn chain(lines: usize, bad: bool) -> String {
    let mut src = String::from("let big x0 =\n");
    for n in 1..lines {
        let p = n - 1;
        if bad && n == lines - 1 {
            let _ = writeln!(src, "  let x{n} = x{p} +. 1.5 in");
        } else {
            let _ = writeln!(
                src,
                "  let x{n} = if x{p} > {n} then x{p} - 1 else List.length [x{p}; {n}] in"
            );
        }
    }
    let _ = writeln!(src, "  x{}", lines - 1);
    src
}

fn workload(copies: usize) -> Vec<(String, String)> {
    let base = corpus();
    let mut out = Vec::new();
    for i in 0..copies {
        for (name, src) in &base {
            out.push((format!("{i}/{name}"), src.clone()));
        }
        out.push((format!("{i}/chain.src"), chain(120, i % 2 == 1)));
    }
    out
}

fn batch(c: &mut Criterion) {
    let mut group = c.benchmark_group("batch");
    for copies in [1, 8] {
        let inputs = workload(copies);
        group.throughput(Throughput::Elements(inputs.len() as u64));
        group.bench_with_input(
            BenchmarkId::new("sequential", copies),
            &inputs,
            |b, inputs| b.iter(|| check_sources_seq(inputs, Mode::Both)),
        );
        #[cfg(feature = "parallel")]
        group.bench_with_input(
            BenchmarkId::new("parallel", copies),
            &inputs,
            |b, inputs| b.iter(|| easytype::batch::check_sources_par(inputs, Mode::Both)),
        );
    }
    group.finish();
}

fn single(c: &mut Criterion) {
    let src = chain(500, true);
    c.bench_function("chain_500_both_passes", |b| {
        b.iter(|| easytype::driver::check_source(&src, "chain.src", Mode::Both))
    });
}

criterion_group!(benches, batch, single);
criterion_main!(benches);
