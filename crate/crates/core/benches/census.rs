use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use mpart_core::census::{enumerate_canonical, run_census, CensusOptions};
use mpart_core::graph::SimpleGraph;
use mpart_core::par::Execution;
use mpart_core::verify::{brute_profile, Budget};
use mpart_core::{PartSet, PartitionMatrix};

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn census(c: &mut Criterion) {
    let mut group = c.benchmark_group("census");
    group.sample_size(10);
    for (name, execution) in MODES {
        group.bench_function(BenchmarkId::new("classify", name), |b| {
            b.iter(|| {
                run_census(CensusOptions {
                    derect: false,
                    execution,
                    ..CensusOptions::default()
                })
                .unwrap()
            })
        });
        group.bench_function(BenchmarkId::new("classify+derect", name), |b| {
            b.iter(|| {
                run_census(CensusOptions {
                    execution,
                    ..CensusOptions::default()
                })
                .unwrap()
            })
        });
        group.bench_function(BenchmarkId::new("enumerate", name), |b| {
            b.iter(|| enumerate_canonical(4, execution))
        });
    }
    group.finish();
}

fn brute(c: &mut Criterion) {
    let m: PartitionMatrix = "001*01111*".parse().unwrap();
    let g = SimpleGraph::cycle(11);
    let lists = vec![PartSet::full(4); g.n()];
    let mut group = c.benchmark_group("brute_profile");
    group.sample_size(10);
    for (name, execution) in MODES {
        group.bench_function(name, |b| {
            b.iter(|| brute_profile(&m, &g, &lists, Budget::new(30), execution).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, census, brute);
criterion_main!(benches);
