//! Local datum tables of a fixed corpus, computed one operator at a time
//! and, with the `parallel` feature, across a rayon pool.
//!
//! The per-table work inside `local_datum` is itself parallel when the
//! feature is on; run `cargo bench -p katzred-core --no-default-features`
//! for a fully sequential baseline.

use criterion::{criterion_group, criterion_main, Criterion};
use katzred_core::expr::{parse_operator, parse_scalar};
use katzred_core::local::local_datum;
use katzred_core::weyl::{euler, WeylOperator};

fn corpus() -> Vec<WeylOperator> {
    let op = |s: &str| parse_operator(s).unwrap();
    let (two, f) = (parse_scalar("2").unwrap(), parse_scalar("f").unwrap());
    let kummer = op("x*D^2 + (c - x)*D - a");
    let hermite = op("D^2 - x*D + a");
    vec![
        op("x*(1-x)*D^2 + (c-(a+b+1)*x)*D - a*b"),
        op("x*(x-1)*(x-t)*D^2 + (c*(x-1)*(x-t) + d*x*(x-t) + (a+b+1-c-d)*x*(x-1))*D + a*b*x - q"),
        euler(&two, &f, &kummer).unwrap(),
        euler(&two, &f, &hermite).unwrap(),
        kummer,
        hermite,
    ]
}

fn tables(c: &mut Criterion) {
    let ops = corpus();
    let mut group = c.benchmark_group("local_datum_corpus");
    group.sample_size(10);
    group.bench_function("sequential", |b| {
        b.iter(|| ops.iter().map(|p| local_datum(p).unwrap()).collect::<Vec<_>>())
    });
    #[cfg(feature = "parallel")]
    group.bench_function("parallel", |b| {
        use rayon::prelude::*;
        b.iter(|| ops.par_iter().map(|p| local_datum(p).unwrap()).collect::<Vec<_>>())
    });
    group.finish();
}

criterion_group!(benches, tables);
criterion_main!(benches);
