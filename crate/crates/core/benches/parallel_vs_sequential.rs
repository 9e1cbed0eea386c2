use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use covera::exec::Mode;
use covera::report::{self, Campaign, CheckSpec};

fn workload() -> Campaign {
    let mut checks = Vec::new();
    for (l, o) in [("D4", 3), ("A3", 2), ("D5", 2)] {
        for w in 0..=2 {
            checks.push(CheckSpec::CoveringIdentity { lattice: l.into(), order: o, weight: w });
        }
    }
    for ring in ["Z", "F3"] {
        checks.push(CheckSpec::Borcherds { lattice: "A2".into(), ring: ring.into(), wmax: 5, max_weight: 2, triples: 40 });
    }
    Campaign { name: "bench".into(), target: None, ring: "Z".into(), wmax: 5, seed: 1, checks }
}

fn modes(c: &mut Criterion) {
    let mut group = c.benchmark_group("campaign");
    group.sample_size(10);
    let mut modes = vec![("sequential", Mode::Sequential)];
    if Mode::available() {
        modes.push(("parallel", Mode::Parallel));
    }
    for (label, mode) in modes {
        group.bench_with_input(BenchmarkId::from_parameter(label), &mode, |b, &mode| {
            b.iter(|| {
                let r = report::run(workload(), mode);
                assert!(r.passed);
            })
        });
    }
    group.finish();
}

criterion_group!(benches, modes);
criterion_main!(benches);
