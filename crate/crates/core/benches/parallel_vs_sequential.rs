use std::hint::black_box;

use clap::Parser;
use criterion::{criterion_group, criterion_main, Criterion};
use qci::cli::{execute, Cli};
use qci::par;

fn command(args: &[&str]) -> Cli {
    Cli::try_parse_from(std::iter::once("qci").chain(args.iter().copied())).unwrap()
}

fn bench(c: &mut Criterion) {
    let cases = [
        ("periodicity n3", command(&["periodicity", "--n", "3", "--a", "2", "--field", "p:5", "--trials", "8"])),
        ("sweep n4", command(&["sweep-membership", "--n", "4", "--a", "2", "--field", "p:5", "--trials", "64"])),
        ("tower 2323", command(&["tower", "--exponents", "2,3,2,3", "--field", "p:101"])),
    ];
    for (name, cli) in &cases {
        let mut g = c.benchmark_group(*name);
        g.sample_size(10);
        for (label, sequential) in [("parallel", false), ("sequential", true)] {
            g.bench_function(label, |b| {
                par::set_sequential(sequential);
                b.iter(|| black_box(execute(&cli.command).unwrap()));
            });
        }
        par::set_sequential(false);
        g.finish();
    }
}

criterion_group!(benches, bench);
criterion_main!(benches);
